use proptest::prelude::*;

use reederkit::matrixmodel::{
    build_nilpotent, coweight_of_element, iota, jordan_type, random_unipotent_element,
};
use reederkit::orbits::{all_orbits, closure_leq, OrbitLabel, Partition};
use reederkit::reeder::{enumerate_small, is_small, reeder_piece};
use reederkit::rootsystem::{root_datum, Coweight, LieType};

const TYPES: &[&str] = &[
    "A1", "A3", "A5", "B2", "B4", "C3", "C5", "D4", "D5", "G2", "F4", "E6", "E7", "E8",
];

fn lie_type() -> impl Strategy<Value = LieType> {
    prop::sample::select(TYPES).prop_map(|s| s.parse().unwrap())
}

fn type_and_coords() -> impl Strategy<Value = (LieType, Vec<i64>)> {
    lie_type().prop_flat_map(|t| (Just(t), prop::collection::vec(-3i64..=3, t.rank)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dominant_rep_is_dominant_and_idempotent((t, c) in type_and_coords()) {
        let rd = root_datum(t);
        let (d, _) = rd.dominant_rep(&c);
        prop_assert!(rd.is_dominant(&d));
        prop_assert_eq!(rd.dominant_rep(&d), (d.clone(), 0));
    }

    #[test]
    fn dominant_rep_is_weyl_invariant(
        (t, c) in type_and_coords(),
        word in prop::collection::vec(0usize..8, 0..12),
    ) {
        let rd = root_datum(t);
        let mut w = c.clone();
        for i in word {
            rd.reflect(&mut w, i % t.rank);
        }
        prop_assert_eq!(rd.dominant_rep(&w).0, rd.dominant_rep(&c).0);
    }

    #[test]
    fn two_rho_pairing_is_linear(
        (t, a) in type_and_coords(),
        b in prop::collection::vec(-3i64..=3, 8),
    ) {
        let rd = root_datum(t);
        let b = &b[..t.rank];
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        prop_assert_eq!(rd.pair_two_rho(&sum), rd.pair_two_rho(&a) + rd.pair_two_rho(b));
    }

    #[test]
    fn minus_w0_is_an_involution_preserving_smallness((t, c) in type_and_coords()) {
        let rd = root_datum(t);
        let (d, _) = rd.dominant_rep(&c);
        let m = rd.minus_w0_fund(&d);
        prop_assert_eq!(rd.minus_w0_fund(&m), d.clone());
        prop_assert_eq!(rd.pair_two_rho(&m), rd.pair_two_rho(&d));
        let small = |v: &[i64]| is_small(&Coweight::fundamental(t, v.to_vec()).unwrap()).unwrap();
        prop_assert_eq!(small(&d), small(&m));
    }

    #[test]
    fn jordan_type_is_conjugation_invariant(
        n in 2usize..=6,
        pick in any::<prop::sample::Index>(),
        seeds in (0u64..1000, 0u64..1000),
    ) {
        let t = LieType::new(reederkit::rootsystem::Family::A, n - 1).unwrap();
        let parts = Partition::all(n);
        let p = pick.get(&parts).clone();
        let label = OrbitLabel::classical(t, p.clone(), None).unwrap();
        let a = build_nilpotent(t, &label, seeds.0).unwrap();
        let b = build_nilpotent(t, &label, seeds.1).unwrap();
        prop_assert_eq!(jordan_type(&a.x).unwrap(), p.clone());
        prop_assert_eq!(jordan_type(&b.x).unwrap(), p);
    }

    #[test]
    fn iota_is_an_involution(seed in 0u64..10_000) {
        let g = random_unipotent_element(2 + (seed % 3) as usize, seed);
        let ig = iota(&g).unwrap();
        prop_assert_eq!(iota(&ig).unwrap(), g.clone());
        prop_assert_eq!(
            coweight_of_element(&ig).unwrap().coords.iter().sum::<i64>(),
            0
        );
    }
}

#[test]
fn dominance_is_a_partial_order_on_small_sets() {
    for t in ["A4", "B5", "C4", "D6", "E6", "E7", "F4", "G2"] {
        let t: LieType = t.parse().unwrap();
        let rd = root_datum(t);
        let els: Vec<Vec<i64>> = enumerate_small(t)
            .unwrap()
            .elements
            .into_iter()
            .map(|e| e.coords)
            .collect();
        for a in &els {
            assert!(rd.leq(a, a));
            for b in &els {
                if a != b {
                    assert!(!(rd.leq(a, b) && rd.leq(b, a)), "{t}: {a:?} {b:?}");
                }
                for c in &els {
                    if rd.leq(a, b) && rd.leq(b, c) {
                        assert!(rd.leq(a, c), "{t}: {a:?} {b:?} {c:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn closure_order_is_a_partial_order() {
    for t in ["A4", "B3", "C3", "D4", "D5"] {
        let t: LieType = t.parse().unwrap();
        let orbits = all_orbits(t).unwrap();
        for a in &orbits {
            assert!(closure_leq(a, a).unwrap());
            for b in &orbits {
                let ab = closure_leq(a, b).unwrap();
                if a != b {
                    assert!(!(ab && closure_leq(b, a).unwrap()), "{t}: {a} {b}");
                }
                if !ab {
                    continue;
                }
                for c in &orbits {
                    if closure_leq(b, c).unwrap() {
                        assert!(closure_leq(a, c).unwrap(), "{t}: {a} {b} {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn pieces_are_minus_w0_invariant() {
    for t in ["A3", "A4", "D5", "E6", "E7"] {
        let t: LieType = t.parse().unwrap();
        let poset = enumerate_small(t).unwrap();
        for (i, e) in poset.elements.iter().enumerate() {
            let f = &poset.elements[poset.involution[i]];
            assert_eq!(
                reeder_piece(e).unwrap().orbits,
                reeder_piece(f).unwrap().orbits,
                "{t}: {e}"
            );
        }
    }
}
