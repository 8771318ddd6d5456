//! Nilpotent orbits: partitions for the classical types, Bala–Carter names
//! for the exceptional ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::paperdata;
use crate::rootsystem::{Basis, Coweight, Family, LieType};

/// Weakly decreasing positive parts; zeros are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Build from `(part, multiplicity)` pairs.
    pub fn from_exponents(pairs: &[(u32, usize)]) -> Self {
        let mut parts = Vec::new();
        for &(p, m) in pairs {
            parts.extend(std::iter::repeat_n(p, m));
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn multiplicity(&self, part: u32) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    pub fn dual(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }

    /// Dominance order on partitions of the same total.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }

    pub fn all_even(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|p| p % 2 == 0)
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n as u32, n as u32, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let m = self.multiplicity(p);
            groups.push(if m == 1 {
                p.to_string()
            } else {
                format!("{p}^{m}")
            });
            i += m;
        }
        write!(f, "[{}]", groups.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `[3^2,1^3]`, `3,3,1,1,1` and `3^2 1^3`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = Vec::new();
        for tok in inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let bad = || Error::Parse(format!("bad partition token {tok:?}"));
            let (p, m) = match tok.split_once('^') {
                Some((p, m)) => (
                    p.parse::<u32>().map_err(|_| bad())?,
                    m.parse::<usize>().map_err(|_| bad())?,
                ),
                None => (tok.parse::<u32>().map_err(|_| bad())?, 1),
            };
            parts.extend(std::iter::repeat_n(p, m));
        }
        Ok(Partition::new(parts))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VeryEven {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitLabel {
    Classical {
        lie_type: LieType,
        partition: Partition,
        tag: Option<VeryEven>,
    },
    Exceptional {
        lie_type: LieType,
        name: String,
    },
}

impl OrbitLabel {
    /// Validated classical label; `tag` is required exactly for very even type D.
    pub fn classical(
        lie_type: LieType,
        partition: Partition,
        tag: Option<VeryEven>,
    ) -> Result<Self> {
        if !is_valid_orbit_partition(lie_type, &partition)? {
            return Err(Error::InvalidOrbit(format!("{partition} in {lie_type}")));
        }
        let very_even = lie_type.family == Family::D && partition.all_even();
        if very_even != tag.is_some() {
            return Err(Error::InvalidOrbit(format!(
                "{partition} in {lie_type}: very even tag {}",
                if very_even { "required" } else { "not allowed" }
            )));
        }
        Ok(OrbitLabel::Classical {
            lie_type,
            partition,
            tag,
        })
    }

    pub fn exceptional(lie_type: LieType, name: &str) -> Self {
        OrbitLabel::Exceptional {
            lie_type,
            name: name.to_string(),
        }
    }

    /// Parse `[3^2,1^3]`, `[2^4]_I` for classical types and Bala–Carter names otherwise.
    pub fn parse(lie_type: LieType, s: &str) -> Result<Self> {
        let s = s.trim();
        if !lie_type.is_classical() {
            return Ok(OrbitLabel::exceptional(lie_type, s));
        }
        let (body, tag) = if let Some(b) = s.strip_suffix("_II") {
            (b, Some(VeryEven::II))
        } else if let Some(b) = s.strip_suffix("_I") {
            (b, Some(VeryEven::I))
        } else {
            (s, None)
        };
        OrbitLabel::classical(lie_type, body.parse()?, tag)
    }

    pub fn lie_type(&self) -> LieType {
        match self {
            OrbitLabel::Classical { lie_type, .. } | OrbitLabel::Exceptional { lie_type, .. } => {
                *lie_type
            }
        }
    }

    pub fn partition(&self) -> Option<&Partition> {
        match self {
            OrbitLabel::Classical { partition, .. } => Some(partition),
            OrbitLabel::Exceptional { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            OrbitLabel::Classical { partition, .. } => partition.parts().iter().all(|&p| p == 1),
            OrbitLabel::Exceptional { name, .. } => name == "1",
        }
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitLabel::Classical { partition, tag, .. } => {
                write!(f, "{partition}")?;
                match tag {
                    Some(VeryEven::I) => f.write_str("_I"),
                    Some(VeryEven::II) => f.write_str("_II"),
                    None => Ok(()),
                }
            }
            OrbitLabel::Exceptional { name, .. } => f.write_str(name),
        }
    }
}

pub fn is_valid_orbit_partition(lt: LieType, p: &Partition) -> Result<bool> {
    let total = lt
        .natural_dim()
        .ok_or(Error::Unsupported("partition labels", lt))?;
    if p.total() != total {
        return Ok(false);
    }
    let even_mult = |parity: u32| {
        p.parts()
            .iter()
            .filter(|&&b| b % 2 == parity)
            .all(|&b| p.multiplicity(b) % 2 == 0)
    };
    Ok(match lt.family {
        Family::A => true,
        Family::B | Family::D => even_mult(0),
        Family::C => even_mult(1),
        _ => unreachable!(),
    })
}

/// Every nilpotent orbit of a classical type, very even classes split into I/II.
pub fn all_orbits(lt: LieType) -> Result<Vec<OrbitLabel>> {
    let total = lt
        .natural_dim()
        .ok_or(Error::Unsupported("partition labels", lt))?;
    let mut out = Vec::new();
    for p in Partition::all(total) {
        if !is_valid_orbit_partition(lt, &p)? {
            continue;
        }
        if lt.family == Family::D && p.all_even() {
            out.push(OrbitLabel::classical(lt, p.clone(), Some(VeryEven::I))?);
            out.push(OrbitLabel::classical(lt, p, Some(VeryEven::II))?);
        } else {
            out.push(OrbitLabel::classical(lt, p, None)?);
        }
    }
    Ok(out)
}

pub fn orbit_dimension(label: &OrbitLabel) -> Result<u64> {
    match label {
        OrbitLabel::Classical {
            lie_type,
            partition,
            ..
        } => Ok(classical_dimension(*lie_type, partition)),
        OrbitLabel::Exceptional { .. } => paperdata::store()?.orbit_dim(label),
    }
}

/// As [`orbit_dimension`], reading exceptional dimensions from `store`.
pub fn orbit_dimension_with(store: &paperdata::DataStore, label: &OrbitLabel) -> Result<u64> {
    match label {
        OrbitLabel::Classical {
            lie_type,
            partition,
            ..
        } => Ok(classical_dimension(*lie_type, partition)),
        OrbitLabel::Exceptional { .. } => store.orbit_dim(label),
    }
}

fn classical_dimension(lt: LieType, p: &Partition) -> u64 {
    let n = lt.natural_dim().expect("classical") as i64;
    let s2: i64 = p
        .dual()
        .parts()
        .iter()
        .map(|&s| (s as i64) * (s as i64))
        .sum();
    let odd = p.parts().iter().filter(|&&b| b % 2 == 1).count() as i64;
    let dim = match lt.family {
        Family::A => n * n - s2,
        Family::B | Family::D => n * (n - 1) / 2 - (s2 - odd) / 2,
        Family::C => n * (n + 1) / 2 - (s2 + odd) / 2,
        _ => unreachable!(),
    };
    dim as u64
}

/// Whether orbit `a` lies in the closure of orbit `b`.
pub fn closure_leq(a: &OrbitLabel, b: &OrbitLabel) -> Result<bool> {
    if a.lie_type() != b.lie_type() {
        return Err(Error::TypeMismatch(a.lie_type(), b.lie_type()));
    }
    match (a, b) {
        (
            OrbitLabel::Classical {
                partition: pa,
                tag: ta,
                ..
            },
            OrbitLabel::Classical {
                partition: pb,
                tag: tb,
                ..
            },
        ) => {
            if !pa.dominated_by(pb) {
                return Ok(false);
            }
            match (ta, tb) {
                (Some(x), Some(y)) if x != y => {
                    // Very even classes with different tags compare only
                    // through a class that is not very even.
                    if pa == pb {
                        return Ok(false);
                    }
                    let lt = a.lie_type();
                    for p in Partition::all(pa.total()) {
                        if !p.all_even()
                            && is_valid_orbit_partition(lt, &p)?
                            && pa.dominated_by(&p)
                            && p.dominated_by(pb)
                        {
                            return Ok(true);
                        }
                    }
                    Ok(false)
                }
                _ => Ok(true),
            }
        }
        _ => paperdata::store()?.exceptional_closure_leq(a, b),
    }
}

/// The dominant coweight `ν(C)` (classical coordinates) of the weighted
/// Dynkin diagram of a classical orbit.
pub fn weighted_dynkin_classical(label: &OrbitLabel) -> Result<Coweight> {
    let OrbitLabel::Classical {
        lie_type,
        partition,
        tag,
    } = label
    else {
        return Err(Error::Unsupported(
            "weighted Dynkin diagrams",
            label.lie_type(),
        ));
    };
    let mut eig: Vec<i64> = Vec::new();
    for &b in partition.parts() {
        let b = b as i64;
        eig.extend((0..b).map(|k| b - 1 - 2 * k));
    }
    eig.sort_unstable_by(|x, y| y.cmp(x));
    let mut coords: Vec<i64> = match lie_type.family {
        Family::A => eig,
        _ => eig[..lie_type.rank].to_vec(),
    };
    if *tag == Some(VeryEven::II) {
        let last = coords.len() - 1;
        coords[last] = -coords[last];
    }
    Coweight::new(*lie_type, Basis::Classical, coords)
}
