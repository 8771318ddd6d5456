//! Independent recomputations of enumerations and dimensions.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use reederkit::multiplicity::{dimension_from_multiplicities, weyl_dimension, zero_weight_dim};
use reederkit::orbits::Partition;
use reederkit::reeder::{enumerate_small, is_small, small_closed_form, tau1};
use reederkit::rootsystem::{root_datum, Coweight, Family, LieType};
use reederkit::verify::hook_length_dimension;

fn lt(f: Family, r: usize) -> LieType {
    LieType::new(f, r).unwrap()
}

fn bfs_set(t: LieType) -> BTreeSet<Vec<i64>> {
    enumerate_small(t)
        .unwrap()
        .elements
        .into_iter()
        .map(|e| e.coords)
        .collect()
}

/// Every dominant coweight with fundamental coordinates in `0..=bound`.
fn box_scan(t: LieType, bound: i64) -> BTreeSet<Vec<i64>> {
    let n = t.rank;
    let mut out = BTreeSet::new();
    let mut c = vec![0i64; n];
    loop {
        if is_small(&Coweight::fundamental(t, c.clone()).unwrap()).unwrap() {
            out.insert(c.clone());
        }
        let mut i = 0;
        while i < n && c[i] == bound {
            c[i] = 0;
            i += 1;
        }
        if i == n {
            return out;
        }
        c[i] += 1;
    }
}

#[test]
fn box_scan_agrees_with_search() {
    for r in 1..=5 {
        let t = lt(Family::A, r);
        assert_eq!(box_scan(t, r as i64 + 2), bfs_set(t), "{t}");
    }
    for f in [Family::B, Family::C] {
        for r in 2..=7 {
            let t = lt(f, r);
            assert_eq!(box_scan(t, 3), bfs_set(t), "{t}");
        }
    }
    for r in 4..=7 {
        let t = lt(Family::D, r);
        assert_eq!(box_scan(t, 3), bfs_set(t), "{t}");
    }
    for (f, r) in [
        (Family::G, 2),
        (Family::F, 4),
        (Family::E, 6),
        (Family::E, 7),
    ] {
        let t = lt(f, r);
        assert_eq!(box_scan(t, 3), bfs_set(t), "{t}");
    }
}

#[test]
fn closed_forms_agree_with_search() {
    for (f, lo) in [
        (Family::A, 1),
        (Family::B, 2),
        (Family::C, 2),
        (Family::D, 4),
    ] {
        for r in lo..=10 {
            let t = lt(f, r);
            let closed: BTreeSet<Vec<i64>> = small_closed_form(t)
                .unwrap()
                .into_iter()
                .map(|c| c.fund().unwrap())
                .collect();
            assert_eq!(closed, bfs_set(t), "{t}");
        }
    }
}

fn partitions_max_two(n: usize) -> usize {
    n / 2 + 1
}

#[test]
fn small_counts_by_rank() {
    for r in 1..=9 {
        let n = r + 1;
        let expected = 2 * Partition::all(n).len() - partitions_max_two(n);
        assert_eq!(
            enumerate_small(lt(Family::A, r)).unwrap().len(),
            expected,
            "A{r}"
        );
    }
    let frozen_a = [2, 4, 7, 11, 18, 26, 39, 55, 78];
    for (r, &n) in frozen_a.iter().enumerate() {
        assert_eq!(enumerate_small(lt(Family::A, r + 1)).unwrap().len(), n);
    }
    for r in 2..=10 {
        assert_eq!(
            enumerate_small(lt(Family::C, r)).unwrap().len(),
            r + 1,
            "C{r}"
        );
        assert_eq!(
            enumerate_small(lt(Family::B, r)).unwrap().len(),
            r + 1,
            "B{r}"
        );
    }
    for r in 4..=10 {
        assert_eq!(
            enumerate_small(lt(Family::D, r)).unwrap().len(),
            r + 2,
            "D{r}"
        );
    }
}

#[test]
fn zero_weights_match_hook_lengths() {
    for r in 1..=7 {
        let t = lt(Family::A, r);
        for lam in enumerate_small(t).unwrap().elements {
            if let Some(p) = tau1(&lam).unwrap() {
                assert_eq!(
                    zero_weight_dim(&lam).unwrap().dim,
                    hook_length_dimension(&p),
                    "{t} {lam}"
                );
            }
        }
    }
}

#[test]
fn multiplicities_sum_to_weyl_dimension() {
    for (t, c) in [
        ("A4", vec![1, 0, 1, 0]),
        ("B3", vec![0, 1, 1]),
        ("C4", vec![0, 0, 0, 2]),
        ("D5", vec![1, 0, 0, 1, 1]),
        ("G2", vec![2, 1]),
        ("F4", vec![0, 1, 0, 0]),
        ("E6", vec![0, 0, 0, 1, 0, 0]),
        ("E7", vec![0, 1, 0, 0, 0, 0, 1]),
    ] {
        let t: LieType = t.parse().unwrap();
        let lam = Coweight::fundamental(t, c).unwrap();
        assert_eq!(
            dimension_from_multiplicities(&lam).unwrap(),
            weyl_dimension(&lam).unwrap(),
            "{t} {lam}"
        );
    }
}

#[test]
fn frozen_weyl_dimensions() {
    let cases: [(&str, Vec<i64>, u64); 6] = [
        ("E6", vec![1, 0, 0, 0, 0, 0], 27),
        ("E7", vec![0, 0, 0, 0, 0, 0, 1], 56),
        ("E8", vec![0, 0, 0, 0, 0, 0, 0, 1], 248),
        ("F4", vec![1, 0, 0, 0], 26),
        ("G2", vec![0, 1], 7),
        ("B3", vec![1, 0, 0], 6),
    ];
    for (t, c, d) in cases {
        let t: LieType = t.parse().unwrap();
        let lam = Coweight::fundamental(t, c).unwrap();
        assert_eq!(weyl_dimension(&lam).unwrap(), BigUint::from(d), "{t}");
    }
}

#[test]
fn involution_is_minus_w0() {
    for (f, r) in [(Family::A, 4), (Family::D, 5), (Family::E, 6)] {
        let t = lt(f, r);
        let rd = root_datum(t);
        let poset = enumerate_small(t).unwrap();
        for (i, e) in poset.elements.iter().enumerate() {
            assert_eq!(
                poset.elements[poset.involution[i]].coords,
                rd.minus_w0_fund(&e.coords)
            );
        }
    }
}
