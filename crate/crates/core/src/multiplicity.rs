//! Weight multiplicities of irreducible representations of the dual group,
//! by Freudenthal's recursion over the dominant cone.
//!
//! Weights of the dual group are coweights of `G`; we work in
//! fundamental-coweight coordinates. With `(ϖ_i, β_j) = d_j δ_ij` for the
//! simple roots `β_j = α̌_j` of the dual group, every inner product that
//! enters the recursion is an integer.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsystem::{root_datum, Coweight, LieType, RootDatum};

#[derive(Clone, Debug)]
pub struct MultiplicityTable {
    pub lam: Coweight,
    /// Dominant weight (fundamental coordinates) to multiplicity.
    pub entries: BTreeMap<Vec<i64>, BigUint>,
}

impl MultiplicityTable {
    pub fn get(&self, mu: &[i64]) -> BigUint {
        self.entries.get(mu).cloned().unwrap_or_default()
    }
}

fn dominant_fund(lam: &Coweight) -> Result<Vec<i64>> {
    let c = lam.fund()?;
    if c.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(lam.to_string()));
    }
    Ok(c)
}

/// `c`-coordinates of each positive root of the dual group (positive coroots of `G`).
fn dual_root_fund(rd: &RootDatum) -> Vec<Vec<i64>> {
    rd.positive_coroots
        .iter()
        .map(|m| rd.coroot_to_fund(m))
        .collect()
}

/// All dominant `μ ≤ λ`, ordered by `⟨λ − μ, 2ρ⟩` then lexicographically
/// (descending coordinates first).
pub fn dominant_weights_below_fund(rd: &RootDatum, lam: &[i64]) -> Vec<Vec<i64>> {
    let roots = dual_root_fund(rd);
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(lam.to_vec());
    queue.push_back(lam.to_vec());
    while let Some(mu) = queue.pop_front() {
        for r in &roots {
            let nu: Vec<i64> = mu.iter().zip(r).map(|(a, b)| a - b).collect();
            if nu.iter().all(|&x| x >= 0) && !seen.contains(&nu) {
                seen.insert(nu.clone());
                queue.push_back(nu);
            }
        }
    }
    let top = rd.pair_two_rho(lam);
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by(|a, b| {
        (top - rd.pair_two_rho(a))
            .cmp(&(top - rd.pair_two_rho(b)))
            .then_with(|| b.cmp(a))
    });
    out
}

pub fn dominant_weights_below(lam: &Coweight) -> Result<Vec<Coweight>> {
    let c = dominant_fund(lam)?;
    let rd = root_datum(lam.lie_type);
    dominant_weights_below_fund(&rd, &c)
        .into_iter()
        .map(|mu| Coweight::fundamental(lam.lie_type, mu))
        .collect()
}

fn freudenthal(rd: &RootDatum, lam: &[i64]) -> Result<BTreeMap<Vec<i64>, BigUint>> {
    let n = rd.rank();
    let d = &rd.coroot_norms;
    let roots: Vec<(Vec<i64>, Vec<i64>)> = rd
        .positive_coroots
        .iter()
        .map(|m| (m.clone(), rd.coroot_to_fund(m)))
        .collect();
    // (x, α) for x in c-coordinates and α with coroot coordinates m.
    let form = |x: &[i64], m: &[i64]| -> i64 { (0..n).map(|j| x[j] * m[j] * d[j]).sum() };
    let order = dominant_weights_below_fund(rd, lam);
    let mut mult: HashMap<Vec<i64>, BigInt> = HashMap::new();
    for mu in &order {
        if mu.as_slice() == lam {
            mult.insert(mu.clone(), BigInt::from(1));
            continue;
        }
        let mut rhs = BigInt::zero();
        for (m, c) in &roots {
            let mut k = 1i64;
            loop {
                let nu: Vec<i64> = mu.iter().zip(c).map(|(a, b)| a + k * b).collect();
                let (dom, _) = rd.dominant_rep(&nu);
                let Some(mnu) = mult.get(&dom) else { break };
                rhs += BigInt::from(form(&nu, m)) * mnu;
                k += 1;
            }
        }
        let diff: Vec<i64> = lam.iter().zip(mu).map(|(a, b)| a - b).collect();
        let nvec = rd.fund_to_coroot(&diff)?;
        let sum: Vec<i64> = (0..n).map(|j| lam[j] + mu[j] + 2).collect();
        let bracket: i64 = (0..n).map(|j| nvec[j] * d[j] * sum[j]).sum();
        if bracket <= 0 {
            return Err(Error::Internal(format!(
                "Freudenthal bracket {bracket} at {mu:?}"
            )));
        }
        let num = rhs * 2;
        let den = BigInt::from(bracket);
        let rem: BigInt = &num % &den;
        if !rem.is_zero() {
            return Err(Error::Internal(format!("Freudenthal division at {mu:?}")));
        }
        mult.insert(mu.clone(), num / den);
    }
    Ok(order
        .into_iter()
        .map(|mu| {
            let m = mult[&mu].to_biguint().expect("nonnegative multiplicity");
            (mu, m)
        })
        .collect())
}

type Cache = Mutex<HashMap<(LieType, Vec<i64>), Arc<MultiplicityTable>>>;
static CACHE: OnceLock<Cache> = OnceLock::new();

/// Memoized multiplicity table of `V_λ`, restricted to dominant weights.
pub fn multiplicity_table(lam: &Coweight) -> Result<Arc<MultiplicityTable>> {
    let c = dominant_fund(lam)?;
    let key = (lam.lie_type, c.clone());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("multiplicity cache").get(&key) {
        return Ok(t.clone());
    }
    let rd = root_datum(lam.lie_type);
    let table = Arc::new(MultiplicityTable {
        lam: Coweight::fundamental(lam.lie_type, c)?,
        entries: freudenthal(&rd, &key.1)?,
    });
    Ok(cache
        .lock()
        .expect("multiplicity cache")
        .entry(key)
        .or_insert(table)
        .clone())
}

/// Dimension of the `μ`-weight space of `V_λ`; `μ` need not be dominant.
pub fn weight_multiplicity(lam: &Coweight, mu: &Coweight) -> Result<BigUint> {
    if lam.lie_type != mu.lie_type {
        return Err(Error::TypeMismatch(lam.lie_type, mu.lie_type));
    }
    let table = multiplicity_table(lam)?;
    let rd = root_datum(lam.lie_type);
    let (dom, _) = rd.dominant_rep(&mu.fund()?);
    Ok(table.get(&dom))
}

/// Weyl dimension formula over the positive roots of the dual group.
pub fn weyl_dimension(lam: &Coweight) -> Result<BigUint> {
    let c = dominant_fund(lam)?;
    let rd = root_datum(lam.lie_type);
    let d = &rd.coroot_norms;
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for m in &rd.positive_coroots {
        let top: i64 = (0..rd.rank()).map(|j| (c[j] + 1) * m[j] * d[j]).sum();
        let bot: i64 = (0..rd.rank()).map(|j| m[j] * d[j]).sum();
        num *= BigUint::from(top as u64);
        den *= BigUint::from(bot as u64);
    }
    if !(&num % &den).is_zero() {
        return Err(Error::Internal("Weyl dimension is not integral".into()));
    }
    Ok(num / den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroWeightDim {
    pub dim: BigUint,
    /// Set when `λ` lies outside the coroot lattice, so the zero weight is absent.
    pub outside_root_lattice: bool,
}

pub fn zero_weight_dim(lam: &Coweight) -> Result<ZeroWeightDim> {
    let c = dominant_fund(lam)?;
    let rd = root_datum(lam.lie_type);
    if !rd.in_coroot_lattice(&c) {
        return Ok(ZeroWeightDim {
            dim: BigUint::zero(),
            outside_root_lattice: true,
        });
    }
    let dim = weight_multiplicity(lam, &Coweight::zero(lam.lie_type))?;
    Ok(ZeroWeightDim {
        dim,
        outside_root_lattice: false,
    })
}

/// `Σ_μ |W·μ| m_λ^μ` over dominant `μ`; equals the Weyl dimension.
pub fn dimension_from_multiplicities(lam: &Coweight) -> Result<BigUint> {
    let table = multiplicity_table(lam)?;
    let rd = root_datum(lam.lie_type);
    let mut total = BigUint::zero();
    for (mu, m) in &table.entries {
        total += BigUint::from(rd.orbit_size(mu)) * m;
    }
    Ok(total)
}

pub fn as_u64(x: &BigUint) -> u64 {
    x.to_u64().expect("fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::parse_coweight;

    fn cw(t: &str, s: &str) -> Coweight {
        parse_coweight(t.parse().unwrap(), s).unwrap()
    }

    fn m(t: &str, l: &str, mu: &str) -> u64 {
        as_u64(&weight_multiplicity(&cw(t, l), &cw(t, mu)).unwrap())
    }

    #[test]
    fn weights_below() {
        let e8 = dominant_weights_below(&cw("E8", "w2")).unwrap();
        let names: Vec<String> = e8.iter().map(|c| c.to_string()).collect();
        assert_eq!(names, ["w2", "w7", "w1", "w8", "0"]);
        let a3 = dominant_weights_below(&cw("A3", "1,1,-1,-1")).unwrap();
        let cl: Vec<Vec<i64>> = a3
            .iter()
            .map(|c| c.to(crate::rootsystem::Basis::Classical).unwrap().coords)
            .collect();
        assert_eq!(
            cl,
            vec![vec![1, 1, -1, -1], vec![1, 0, 0, -1], vec![0, 0, 0, 0]]
        );
        assert_eq!(dominant_weights_below(&cw("E6", "0")).unwrap().len(), 1);
    }

    #[test]
    fn multiplicities() {
        assert_eq!(m("E6", "3w1", "0"), 24);
        assert_eq!(m("E7", "w2+w7", "w1"), 75);
        assert_eq!(m("E7", "w2+w7", "w2+w7"), 1);
        assert_eq!(m("A3", "1,0,0,-1", "0"), 3);
        assert_eq!(m("G2", "w1", "0"), 2);
    }

    #[test]
    fn weyl_dimensions() {
        let d = |t: &str, s: &str| as_u64(&weyl_dimension(&cw(t, s)).unwrap());
        assert_eq!(d("E8", "w8"), 248);
        assert_eq!(d("E8", "0"), 1);
        assert_eq!(d("A3", "1,0,0,-1"), 15);
        assert_eq!(d("G2", "w2"), 7);
        assert_eq!(d("G2", "w1"), 14);
        assert_eq!(d("F4", "w1"), 26);
        assert_eq!(d("F4", "w4"), 52);
        assert_eq!(d("B3", "w1"), 6);
        assert_eq!(d("C3", "w1"), 7);
    }

    #[test]
    fn zero_weight() {
        let z = zero_weight_dim(&cw("E8", "w2")).unwrap();
        assert_eq!(as_u64(&z.dim), 370);
        assert!(!z.outside_root_lattice);
        assert_eq!(as_u64(&zero_weight_dim(&cw("E7", "w1")).unwrap().dim), 7);
        assert_eq!(as_u64(&zero_weight_dim(&cw("E6", "w4")).unwrap().dim), 45);
        let out = zero_weight_dim(&cw("E6", "w1")).unwrap();
        assert!(out.outside_root_lattice);
        assert_eq!(as_u64(&out.dim), 0);
    }

    #[test]
    fn orbit_sums_match_weyl_dimension() {
        for (t, s) in [
            ("E6", "3w1"),
            ("E7", "w2+w7"),
            ("F4", "w2"),
            ("G2", "w1"),
            ("B4", "w1+w3"),
            ("C3", "2w2"),
            ("A4", "w1+w2+w4"),
        ] {
            let l = cw(t, s);
            assert_eq!(
                dimension_from_multiplicities(&l).unwrap(),
                weyl_dimension(&l).unwrap(),
                "{t} {s}"
            );
        }
    }
}
