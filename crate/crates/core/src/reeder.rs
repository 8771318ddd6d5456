//! Small coweights, their posets, and Reeder pieces of the small nilpotent
//! cone.
//!
//! A dominant coweight `λ` in the coroot lattice is small when `λ ≱ 2α̌₀`,
//! `α̌₀` the highest short coroot. Pieces are computed from closed formulas in
//! the classical types and, in the exceptional types, by pushing pieces of a
//! classical (or `E6`) partner group through the tabulated orbit saturations.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::multiplicity::{as_u64, weight_multiplicity};
use crate::orbits::{closure_leq, orbit_dimension, OrbitLabel, Partition, VeryEven};
use crate::paperdata::{self, partner_type, Sheaf};
use crate::rootsystem::{
    cartan_matrix, format_tuple, root_datum, Basis, Coweight, Family, LieType, RootDatum,
};

/// Largest classical rank accepted by [`enumerate_small`].
pub const CLASSICAL_RANK_BOUND: usize = 12;

fn is_small_fund(rd: &RootDatum, c: &[i64]) -> bool {
    if !rd.is_dominant(c) {
        return false;
    }
    let k = match rd.fund_to_coroot(c) {
        Ok(k) => k,
        Err(_) => return false,
    };
    let two = rd.highest_short_coroot.iter().map(|x| 2 * x);
    !k.iter().zip(two).all(|(a, b)| *a - b >= 0)
}

pub fn is_small(lam: &Coweight) -> Result<bool> {
    let rd = root_datum(lam.lie_type);
    Ok(is_small_fund(&rd, &lam.fund()?))
}

#[derive(Clone, Debug)]
pub struct SmallPoset {
    pub lie_type: LieType,
    /// Fundamental basis; sorted by decreasing `⟨λ, 2ρ⟩`, then decreasing
    /// coordinates.
    pub elements: Vec<Coweight>,
    /// Covering relations `(upper, lower)` as element indices.
    pub hasse_edges: Vec<(usize, usize)>,
    /// `λ ↦ −w₀λ` as an index map.
    pub involution: Vec<usize>,
}

impl SmallPoset {
    pub fn index_of(&self, c: &[i64]) -> Option<usize> {
        self.elements.iter().position(|e| e.coords == c)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn maximal(&self) -> Vec<usize> {
        let lower: HashSet<usize> = self.hasse_edges.iter().map(|&(_, lo)| lo).collect();
        (0..self.len()).filter(|i| !lower.contains(i)).collect()
    }

    /// One representative per `−w₀` orbit, the first in element order.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.involution[i] >= i)
            .collect()
    }
}

/// All small coweights with their dominance poset.
///
/// Generated upward from `0`: covers in the dominance order on dominant
/// coroot-lattice elements differ by a positive coroot, and the small set is
/// a lower order ideal, so the search reaches every element.
pub fn enumerate_small(lt: LieType) -> Result<SmallPoset> {
    if lt.is_classical() && lt.rank > CLASSICAL_RANK_BOUND {
        return Err(Error::RankBound {
            rank: lt.rank,
            bound: CLASSICAL_RANK_BOUND,
        });
    }
    let rd = root_datum(lt);
    let n = rd.rank();
    let steps: Vec<Vec<i64>> = rd
        .positive_coroots
        .iter()
        .map(|m| rd.coroot_to_fund(m))
        .collect();
    let zero = vec![0i64; n];
    let mut seen: HashSet<Vec<i64>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(c) = queue.pop_front() {
        for s in &steps {
            let next: Vec<i64> = c.iter().zip(s).map(|(a, b)| a + b).collect();
            if !seen.contains(&next) && is_small_fund(&rd, &next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut elems: Vec<Vec<i64>> = seen.into_iter().collect();
    elems.sort_by(|a, b| {
        rd.pair_two_rho(b)
            .cmp(&rd.pair_two_rho(a))
            .then_with(|| b.cmp(a))
    });
    let coroot: Vec<Vec<i64>> = elems
        .iter()
        .map(|c| rd.fund_to_coroot(c))
        .collect::<Result<_>>()?;
    let below = |lo: usize, hi: usize| -> bool {
        lo != hi && coroot[hi].iter().zip(&coroot[lo]).all(|(a, b)| a >= b)
    };
    let m = elems.len();
    let mut hasse = Vec::new();
    for hi in 0..m {
        for lo in 0..m {
            if below(lo, hi) && !(0..m).any(|k| below(lo, k) && below(k, hi)) {
                hasse.push((hi, lo));
            }
        }
    }
    let involution = elems
        .iter()
        .map(|c| {
            let d = rd.minus_w0_fund(c);
            elems
                .iter()
                .position(|e| *e == d)
                .ok_or_else(|| Error::Internal(format!("-w0 of {} is not small", format_tuple(c))))
        })
        .collect::<Result<Vec<_>>>()?;
    let elements = elems
        .into_iter()
        .map(|c| Coweight::fundamental(lt, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(SmallPoset {
        lie_type: lt,
        elements,
        hasse_edges: hasse,
        involution,
    })
}

fn classical(lt: LieType, coords: Vec<i64>) -> Result<Coweight> {
    Coweight::classical(lt, coords)
}

fn ones_then(count: usize, len: usize, head: &[i64], tail: &[i64]) -> Vec<i64> {
    let mut v = head.to_vec();
    v.extend(std::iter::repeat_n(1, count));
    v.extend_from_slice(tail);
    v.resize(len, 0);
    v
}

/// Small coweights of a classical type from the explicit lists, in classical
/// coordinates.
pub fn small_closed_form(lt: LieType) -> Result<Vec<Coweight>> {
    let n = lt.rank;
    let mut out: Vec<Vec<i64>> = Vec::new();
    match lt.family {
        Family::A => {
            let len = n + 1;
            for p in Partition::all(len) {
                let mut parts: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
                parts.resize(len, 0);
                out.push(parts.iter().map(|x| x - 1).collect());
                out.push((0..len).map(|j| 1 - parts[len - 1 - j]).collect());
            }
        }
        Family::C => {
            for j in 0..=n {
                out.push(ones_then(j, n, &[], &[]));
            }
        }
        Family::B | Family::D => {
            for j in 0..=(n / 2) {
                out.push(ones_then(2 * j, n, &[], &[]));
            }
            for j in 0.. {
                if 2 * j + 1 > n {
                    break;
                }
                out.push(ones_then(2 * j, n, &[2], &[]));
            }
            if lt.family == Family::D {
                if n % 2 == 0 {
                    out.push(ones_then(n - 1, n, &[], &[-1]));
                } else {
                    out.push(ones_then(n - 2, n, &[2], &[-1]));
                }
            }
        }
        _ => return Err(Error::Unsupported("closed-form small coweights", lt)),
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|c| classical(lt, c)).collect()
}

fn type_a_coords(lam: &Coweight) -> Result<Vec<i64>> {
    if lam.lie_type.family != Family::A {
        return Err(Error::Unsupported(
            "partition labels of coweights",
            lam.lie_type,
        ));
    }
    Ok(lam.to(Basis::Classical)?.coords)
}

fn partition_of(parts: Vec<i64>) -> Option<Partition> {
    parts
        .into_iter()
        .map(|p| u32::try_from(p).ok())
        .collect::<Option<Vec<u32>>>()
        .map(|v| Partition::new(v.into_iter().filter(|&p| p > 0).collect()))
}

/// `(a_1, …, a_n) ↦ [a_1 + 1, …, a_n + 1]`, defined when every `a_j ≥ −1`.
pub fn tau1(lam: &Coweight) -> Result<Option<Partition>> {
    let a = type_a_coords(lam)?;
    Ok(partition_of(a.iter().map(|x| x + 1).collect()))
}

/// `(a_1, …, a_n) ↦ [1 − a_n, …, 1 − a_1]`, defined when every `a_j ≤ 1`.
pub fn tau2(lam: &Coweight) -> Result<Option<Partition>> {
    let a = type_a_coords(lam)?;
    Ok(partition_of(a.iter().rev().map(|x| 1 - x).collect()))
}

fn padded(lt: LieType, p: &Partition) -> Result<Vec<i64>> {
    let n = lt.rank + 1;
    if lt.family != Family::A || p.total() != n {
        return Err(Error::Precondition(format!(
            "{p} is not a partition of {n}"
        )));
    }
    let mut v: Vec<i64> = p.parts().iter().map(|&x| x as i64).collect();
    v.resize(n, 0);
    Ok(v)
}

pub fn tau1_inverse(lt: LieType, p: &Partition) -> Result<Coweight> {
    classical(lt, padded(lt, p)?.iter().map(|b| b - 1).collect())
}

pub fn tau2_inverse(lt: LieType, p: &Partition) -> Result<Coweight> {
    classical(lt, padded(lt, p)?.iter().rev().map(|b| 1 - b).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PieceCase {
    Single,
    Double,
}

impl fmt::Display for PieceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PieceCase::Single => "single",
            PieceCase::Double => "double",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReederPiece {
    /// `λ` and, when different, `−w₀λ`.
    pub sources: Vec<Coweight>,
    /// Open orbit first.
    pub orbits: Vec<OrbitLabel>,
    pub case: PieceCase,
}

impl ReederPiece {
    fn new(sources: Vec<Coweight>, orbits: Vec<OrbitLabel>) -> Self {
        let case = if orbits.len() == 2 {
            PieceCase::Double
        } else {
            PieceCase::Single
        };
        ReederPiece {
            sources,
            orbits,
            case,
        }
    }

    pub fn open_orbit(&self) -> &OrbitLabel {
        &self.orbits[0]
    }
}

fn sources_of(lam: &Coweight, basis: Basis) -> Result<Vec<Coweight>> {
    let rd = root_datum(lam.lie_type);
    let c = lam.fund()?;
    let d = rd.minus_w0_fund(&c);
    let mut out = vec![rd.convert(&Coweight::fundamental(lam.lie_type, c.clone())?, basis)?];
    if d != c {
        out.push(rd.convert(&Coweight::fundamental(lam.lie_type, d)?, basis)?);
    }
    Ok(out)
}

fn require_small(lam: &Coweight) -> Result<()> {
    if !is_small(lam)? {
        return Err(Error::NotSmall(lam.to_string()));
    }
    Ok(())
}

fn orbit(lt: LieType, parts: &[(u32, i64)], tag: Option<VeryEven>) -> Result<OrbitLabel> {
    let mut pairs = Vec::new();
    for &(p, m) in parts {
        if m < 0 {
            return Err(Error::Internal(format!(
                "negative multiplicity for part {p}"
            )));
        }
        pairs.push((p, m as usize));
    }
    OrbitLabel::classical(lt, Partition::from_exponents(&pairs), tag)
}

fn count_ones(a: &[i64]) -> i64 {
    a.iter().filter(|&&x| x == 1).count() as i64
}

/// Reeder piece of a small coweight in a classical type.
pub fn reeder_piece_classical(lt: LieType, lam: &Coweight) -> Result<ReederPiece> {
    if lam.lie_type != lt {
        return Err(Error::TypeMismatch(lam.lie_type, lt));
    }
    if !lt.is_classical() {
        return Err(Error::Unsupported("classical Reeder pieces", lt));
    }
    require_small(lam)?;
    let a = lam.to(Basis::Classical)?.coords;
    let n = lt.rank as i64;
    let orbits = match lt.family {
        Family::A => {
            let len = a.len();
            let parts: Vec<u32> = if a[len - 1] >= -1 {
                a.iter().map(|x| (x + 1) as u32).collect()
            } else {
                (0..len).map(|i| (1 - a[len - 1 - i]) as u32).collect()
            };
            vec![OrbitLabel::classical(lt, Partition::new(parts), None)?]
        }
        Family::C => {
            let j = count_ones(&a);
            vec![orbit(lt, &[(2, j), (1, 2 * n - 2 * j)], None)?]
        }
        Family::B => {
            let ones = count_ones(&a);
            if a[0] == 2 {
                let j = ones / 2;
                if j == 0 {
                    vec![orbit(lt, &[(3, 1), (1, 2 * n - 2)], None)?]
                } else {
                    vec![
                        orbit(lt, &[(3, 2), (2, 2 * j - 2), (1, 2 * n - 4 * j - 1)], None)?,
                        orbit(lt, &[(3, 1), (2, 2 * j), (1, 2 * n - 4 * j - 2)], None)?,
                    ]
                }
            } else {
                vec![orbit(lt, &[(2, ones), (1, 2 * n + 1 - 2 * ones)], None)?]
            }
        }
        Family::D => {
            let last = a[a.len() - 1];
            if a[0] == 2 && n % 2 == 1 && count_ones(&a[1..a.len() - 1]) == n - 2 {
                // (2,1^{n-2},±1): a −w₀-pair with a single orbit.
                vec![orbit(lt, &[(3, 2), (2, n - 3)], None)?]
            } else if a[0] == 2 {
                let j = count_ones(&a) / 2;
                if j == 0 {
                    vec![orbit(lt, &[(3, 1), (1, 2 * n - 3)], None)?]
                } else {
                    vec![
                        orbit(lt, &[(3, 2), (2, 2 * j - 2), (1, 2 * n - 4 * j - 2)], None)?,
                        orbit(lt, &[(3, 1), (2, 2 * j), (1, 2 * n - 4 * j - 3)], None)?,
                    ]
                }
            } else if a.iter().all(|&x| x.abs() == 1) {
                let tag = if last == 1 { VeryEven::I } else { VeryEven::II };
                vec![orbit(lt, &[(2, n)], Some(tag))?]
            } else {
                let ones = count_ones(&a);
                vec![orbit(lt, &[(2, ones), (1, 2 * n - 2 * ones)], None)?]
            }
        }
        _ => unreachable!(),
    };
    Ok(ReederPiece::new(sources_of(lam, Basis::Classical)?, orbits))
}

/// The orbits of the small nilpotent cone of a classical type.
pub fn nsm_orbit_list(lt: LieType) -> Result<Vec<OrbitLabel>> {
    let n = lt.rank as i64;
    let mut out = Vec::new();
    match lt.family {
        Family::A => {
            for p in Partition::all(lt.rank + 1) {
                out.push(OrbitLabel::classical(lt, p, None)?);
            }
        }
        Family::C => {
            for j in 0..=n {
                out.push(orbit(lt, &[(2, j), (1, 2 * n - 2 * j)], None)?);
            }
        }
        Family::B => {
            for j in 0..=n / 2 {
                out.push(orbit(lt, &[(2, 2 * j), (1, 2 * n - 4 * j + 1)], None)?);
            }
            for j in 0..=(n - 1) / 2 {
                out.push(orbit(
                    lt,
                    &[(3, 1), (2, 2 * j), (1, 2 * n - 4 * j - 2)],
                    None,
                )?);
            }
            if n >= 3 {
                for j in 0..=(n - 3) / 2 {
                    out.push(orbit(
                        lt,
                        &[(3, 2), (2, 2 * j), (1, 2 * n - 4 * j - 5)],
                        None,
                    )?);
                }
            }
        }
        Family::D => {
            for j in 0..=n / 2 {
                if 2 * j == n {
                    out.push(orbit(lt, &[(2, n)], Some(VeryEven::I))?);
                    out.push(orbit(lt, &[(2, n)], Some(VeryEven::II))?);
                } else {
                    out.push(orbit(lt, &[(2, 2 * j), (1, 2 * n - 4 * j)], None)?);
                }
            }
            for j in 0..=(n - 2) / 2 {
                out.push(orbit(
                    lt,
                    &[(3, 1), (2, 2 * j), (1, 2 * n - 4 * j - 3)],
                    None,
                )?);
            }
            for j in 0..=(n - 3) / 2 {
                out.push(orbit(
                    lt,
                    &[(3, 2), (2, 2 * j), (1, 2 * n - 4 * j - 6)],
                    None,
                )?);
            }
        }
        _ => return Err(Error::Unsupported("closed-form orbit lists", lt)),
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingMode {
    /// `H ⊂ G` a subgroup of maximal rank.
    Subgroup,
    /// `G` the fixed points of a diagram automorphism of `H`.
    Folding,
}

#[derive(Clone, Debug)]
pub struct SubsystemEmbedding {
    pub g_type: LieType,
    pub h_type: LieType,
    pub mode: EmbeddingMode,
    /// Subgroup mode: for each `H` node the `G` extended-diagram node it maps
    /// to (`0` is the affine node). Folding mode: for each `G` node the
    /// automorphism orbit of `H` nodes. Nodes are 1-based.
    pub node_map: Vec<Vec<usize>>,
    /// Subgroup mode: `H` simple coroots in `G` coroot coordinates. Folding
    /// mode: `G` simple coroots in `H` coroot coordinates.
    pub coroot_images: Vec<Vec<i64>>,
}

fn pair_coroots(cartan: &[Vec<i64>], x: &[i64], y: &[i64]) -> i64 {
    let n = cartan.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| x[a] * y[b] * cartan[a][b])
        .sum()
}

fn subgroup_images(rd: &RootDatum, nodes: &[usize]) -> Vec<Vec<i64>> {
    let n = rd.rank();
    nodes
        .iter()
        .map(|&v| {
            if v == 0 {
                rd.highest_root.iter().map(|x| -x).collect()
            } else {
                let mut e = vec![0; n];
                e[v - 1] = 1;
                e
            }
        })
        .collect()
}

pub fn build_embedding(g: LieType) -> Result<SubsystemEmbedding> {
    let h = partner_type(g).ok_or(Error::Unsupported("subsystem embeddings", g))?;
    let rd = root_datum(g);
    let hc = cartan_matrix(h);
    match g.family {
        Family::E => {
            let nodes: Vec<usize> = match g.rank {
                6 => vec![1, 3, 4, 5, 6],
                7 => vec![0, 1, 3, 4, 2, 5],
                _ => vec![0, 8, 7, 6, 5, 4, 3, 2],
            };
            let mut candidates = vec![nodes.clone()];
            if g.rank == 6 {
                candidates.push(nodes.iter().rev().copied().collect());
            }
            for cand in candidates {
                let emb = SubsystemEmbedding {
                    g_type: g,
                    h_type: h,
                    mode: EmbeddingMode::Subgroup,
                    node_map: cand.iter().map(|&v| vec![v]).collect(),
                    coroot_images: subgroup_images(&rd, &cand),
                };
                emb.check_cartan(&rd.cartan, &hc)?;
                if g.rank != 6 || emb.e6_oriented()? {
                    return Ok(emb);
                }
            }
            Err(Error::Internal("no orientation of A5 in E6 matches".into()))
        }
        Family::F | Family::G => {
            let orbits: Vec<Vec<usize>> = if g.family == Family::F {
                vec![vec![2], vec![4], vec![3, 5], vec![1, 6]]
            } else {
                vec![vec![1, 3, 4], vec![2]]
            };
            let images = orbits
                .iter()
                .map(|o| {
                    let mut v = vec![0; h.rank];
                    for &k in o {
                        v[k - 1] = 1;
                    }
                    v
                })
                .collect();
            let emb = SubsystemEmbedding {
                g_type: g,
                h_type: h,
                mode: EmbeddingMode::Folding,
                node_map: orbits,
                coroot_images: images,
            };
            emb.check_folding(&rd.cartan, &hc)?;
            Ok(emb)
        }
        _ => Err(Error::Unsupported("subsystem embeddings", g)),
    }
}

impl SubsystemEmbedding {
    fn check_cartan(&self, gc: &[Vec<i64>], hc: &[Vec<i64>]) -> Result<()> {
        for (i, x) in self.coroot_images.iter().enumerate() {
            for (j, y) in self.coroot_images.iter().enumerate() {
                if pair_coroots(gc, x, y) != hc[i][j] {
                    return Err(Error::Internal(format!(
                        "{} in {}: images of nodes {} and {} violate the Cartan matrix",
                        self.h_type,
                        self.g_type,
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The folded Cartan matrix: `a_G[i][j] = Σ_{h ∈ O_i} a_H[h][k]` for any
    /// `k ∈ O_j`.
    fn check_folding(&self, gc: &[Vec<i64>], hc: &[Vec<i64>]) -> Result<()> {
        let mut covered: Vec<usize> = self.node_map.iter().flatten().copied().collect();
        covered.sort();
        if covered != (1..=self.h_type.rank).collect::<Vec<_>>() {
            return Err(Error::Internal(
                "folding orbits do not partition the H nodes".into(),
            ));
        }
        for (i, oi) in self.node_map.iter().enumerate() {
            for (j, oj) in self.node_map.iter().enumerate() {
                for &k in oj {
                    let s: i64 = oi.iter().map(|&h| hc[h - 1][k - 1]).sum();
                    if s != gc[i][j] {
                        return Err(Error::Internal(format!(
                            "folding {} onto {}: entry ({},{}) is {s}, expected {}",
                            self.h_type,
                            self.g_type,
                            i + 1,
                            j + 1,
                            gc[i][j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn e6_oriented(&self) -> Result<bool> {
        let mu = Coweight::classical(self.h_type, vec![1, 1, 1, 1, -2, -2])?;
        let rd = root_datum(self.g_type);
        let (d, _) = rd.dominant_rep(&self.embed(&mu)?);
        Ok(d == Coweight::omega(self.g_type, 1)
            .coords
            .iter()
            .map(|x| 3 * x)
            .collect::<Vec<_>>())
    }

    /// Image of an `H` coweight in the coroot lattice, in `G` fundamental
    /// coordinates (not reduced to the dominant chamber).
    pub fn embed(&self, mu: &Coweight) -> Result<Vec<i64>> {
        if self.mode != EmbeddingMode::Subgroup {
            return Err(Error::Precondition(
                "embed needs a subgroup embedding".into(),
            ));
        }
        if mu.lie_type != self.h_type {
            return Err(Error::TypeMismatch(mu.lie_type, self.h_type));
        }
        let k = mu.to(Basis::Coroot)?.coords;
        let n = self.g_type.rank;
        let mut g = vec![0i64; n];
        for (ki, img) in k.iter().zip(&self.coroot_images) {
            for t in 0..n {
                g[t] += ki * img[t];
            }
        }
        Ok(root_datum(self.g_type).coroot_to_fund(&g))
    }

    /// The dominant `H` coweight containing the image of `λ` (folding mode),
    /// in `H` fundamental coordinates.
    pub fn fold(&self, lam: &Coweight) -> Result<Coweight> {
        if self.mode != EmbeddingMode::Folding {
            return Err(Error::Precondition("fold needs a folding embedding".into()));
        }
        if lam.lie_type != self.g_type {
            return Err(Error::TypeMismatch(lam.lie_type, self.g_type));
        }
        let k = lam.to(Basis::Coroot)?.coords;
        let mut h = vec![0i64; self.h_type.rank];
        for (ki, img) in k.iter().zip(&self.coroot_images) {
            for (t, x) in img.iter().enumerate() {
                h[t] += ki * x;
            }
        }
        let rd = root_datum(self.h_type);
        let (d, _) = rd.dominant_rep(&rd.coroot_to_fund(&h));
        Coweight::fundamental(self.h_type, d)
    }
}

/// Small `H` coweights whose image lies in `W·λ`, in `H` classical coordinates.
pub fn restrict_orbit_members(emb: &SubsystemEmbedding, lam: &Coweight) -> Result<Vec<Coweight>> {
    if emb.mode != EmbeddingMode::Subgroup {
        return Err(Error::Precondition(
            "restriction needs a subgroup embedding".into(),
        ));
    }
    let target = lam.fund()?;
    let rd = root_datum(emb.g_type);
    let mut out = Vec::new();
    for mu in enumerate_small(emb.h_type)?.elements {
        let (d, _) = rd.dominant_rep(&emb.embed(&mu)?);
        if d == target {
            out.push(mu.to(Basis::Classical)?);
        }
    }
    Ok(out)
}

fn dedup_by_dimension(mut orbits: Vec<OrbitLabel>) -> Result<Vec<OrbitLabel>> {
    let mut seen = HashSet::new();
    orbits.retain(|o| seen.insert(o.clone()));
    let mut keyed = orbits
        .into_iter()
        .map(|o| Ok((orbit_dimension(&o)?, o)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by_key(|k| std::cmp::Reverse(k.0));
    Ok(keyed.into_iter().map(|(_, o)| o).collect())
}

/// Reeder piece in an exceptional type, from the partner group `H`.
pub fn reeder_piece_exceptional(g: LieType, lam: &Coweight) -> Result<ReederPiece> {
    if lam.lie_type != g {
        return Err(Error::TypeMismatch(lam.lie_type, g));
    }
    require_small(lam)?;
    let emb = build_embedding(g)?;
    let store = paperdata::store()?;
    let h_pieces = match emb.mode {
        EmbeddingMode::Subgroup => restrict_orbit_members(&emb, lam)?
            .iter()
            .map(|mu| reeder_piece_classical(emb.h_type, mu))
            .collect::<Result<Vec<_>>>()?,
        EmbeddingMode::Folding => vec![reeder_piece(&emb.fold(lam)?)?],
    };
    let mut orbits = Vec::new();
    for p in &h_pieces {
        for h in &p.orbits {
            orbits.push(store.saturation_of(g, h)?.clone());
        }
    }
    let orbits = dedup_by_dimension(orbits)?;
    Ok(ReederPiece::new(
        sources_of(lam, Basis::Fundamental)?,
        orbits,
    ))
}

/// Reeder piece of a small coweight in any type.
pub fn reeder_piece(lam: &Coweight) -> Result<ReederPiece> {
    if lam.lie_type.is_classical() {
        reeder_piece_classical(lam.lie_type, lam)
    } else {
        reeder_piece_exceptional(lam.lie_type, lam)
    }
}

/// One piece per `−w₀` class of small coweights, in poset order.
pub fn all_pieces(lt: LieType) -> Result<Vec<ReederPiece>> {
    let poset = enumerate_small(lt)?;
    poset
        .orbit_representatives()
        .into_iter()
        .map(|i| reeder_piece(&poset.elements[i]))
        .collect()
}

/// Orbits of the small nilpotent cone: the closed-form list in classical
/// types, the tabulated list otherwise.
pub fn nsm_orbits(lt: LieType) -> Result<Vec<OrbitLabel>> {
    if lt.is_classical() {
        nsm_orbit_list(lt)
    } else {
        Ok(paperdata::store()?.exceptional_orbits(lt))
    }
}

/// Checks of the structural properties of the pieces of one type.
#[derive(Clone, Debug)]
pub struct PieceReport {
    pub lie_type: LieType,
    pub pieces: usize,
    pub doubles: usize,
    pub failures: Vec<String>,
}

impl PieceReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Partition, bijection, case and dimension properties of the pieces.
pub fn check_pieces(lt: LieType) -> Result<PieceReport> {
    let poset = enumerate_small(lt)?;
    let rd = root_datum(lt);
    let mut failures = Vec::new();
    let mut pieces = Vec::new();
    for (i, lam) in poset.elements.iter().enumerate() {
        let p = reeder_piece(lam)?;
        let c = &lam.coords;
        if p.case == PieceCase::Double && rd.minus_w0_fund(c) != *c {
            failures.push(format!("{lam}: double piece but λ ≠ −w₀λ"));
        }
        if p.case == PieceCase::Double && !closure_leq(&p.orbits[1], &p.orbits[0])? {
            failures.push(format!(
                "{lam}: second orbit not in the closure of the first"
            ));
        }
        let d = orbit_dimension(p.open_orbit())?;
        if d as i64 != rd.pair_two_rho(c) {
            failures.push(format!(
                "{lam}: open orbit dimension {d} ≠ ⟨λ,2ρ⟩ {}",
                rd.pair_two_rho(c)
            ));
        }
        pieces.push((i, p));
    }
    // Pieces agree exactly on −w₀ pairs and are disjoint otherwise.
    for (i, p) in &pieces {
        for (j, q) in &pieces {
            if j <= i {
                continue;
            }
            let a: BTreeSet<_> = p.orbits.iter().collect();
            let b: BTreeSet<_> = q.orbits.iter().collect();
            let paired = poset.involution[*i] == *j;
            if paired && a != b {
                failures.push(format!(
                    "{} and {}: −w₀ pair with different pieces",
                    poset.elements[*i], poset.elements[*j]
                ));
            }
            if !paired && !a.is_disjoint(&b) {
                failures.push(format!(
                    "{} and {}: pieces overlap",
                    poset.elements[*i], poset.elements[*j]
                ));
            }
        }
    }
    let reps: Vec<&ReederPiece> = poset
        .orbit_representatives()
        .into_iter()
        .map(|i| &pieces[i].1)
        .collect();
    let mut union: Vec<OrbitLabel> = reps.iter().flat_map(|p| p.orbits.iter().cloned()).collect();
    union.sort();
    let mut expected = nsm_orbits(lt)?;
    expected.sort();
    if union != expected {
        failures.push(format!(
            "pieces cover {} orbits, the small cone has {}",
            union.len(),
            expected.len()
        ));
    }
    // The union is closed downward within the closure order.
    let all_orbits = if lt.is_classical() {
        crate::orbits::all_orbits(lt)?
    } else {
        expected.clone()
    };
    for o in &union {
        for other in &all_orbits {
            if closure_leq(other, o)? && !union.contains(other) {
                failures.push(format!("{other} lies below {o} but in no piece"));
            }
        }
    }
    Ok(PieceReport {
        lie_type: lt,
        pieces: reps.len(),
        doubles: reps.iter().filter(|p| p.case == PieceCase::Double).count(),
        failures,
    })
}

/// The top small coweights whose multiplicities are tabulated for `g`.
pub fn stalk_tops(g: LieType) -> Result<Vec<Coweight>> {
    let store = paperdata::store()?;
    let mut out: Vec<Coweight> = Vec::new();
    for r in store.mults.iter().filter(|r| r.g_type == g) {
        if !out.contains(&r.top) {
            out.push(r.top.clone());
        }
    }
    Ok(out)
}

/// One fibre point count: `count` points of `π_H⁻¹(x)` in `Gr_μ` for the
/// `H` coweight `mu`, lying in `Gr_ν` of `G` with `ν` the dominant image.
#[derive(Clone, Debug)]
pub struct FibreTerm {
    pub mu: Coweight,
    pub count: u64,
    pub image: Coweight,
    pub multiplicity: u64,
}

#[derive(Clone, Debug)]
pub struct StalkIdentity {
    pub g_type: LieType,
    pub top: Coweight,
    pub x_orbit: OrbitLabel,
    pub h_orbit: OrbitLabel,
    pub lhs: u64,
    pub rhs: u64,
    pub terms: Vec<FibreTerm>,
}

impl StalkIdentity {
    pub fn ok(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of the stalk identity at a point `x` of `x_orbit`, once for
/// every `H`-orbit meeting `x_orbit`.
pub fn verify_stalk_identity(
    g: LieType,
    top: &Coweight,
    x_orbit: &OrbitLabel,
) -> Result<Vec<StalkIdentity>> {
    if g.family != Family::E {
        return Err(Error::Unsupported("the stalk identity", g));
    }
    let store = paperdata::store()?;
    let mut lhs = store.stalk_value_at_one(x_orbit, Sheaf::Ic, g)?;
    if g.rank != 6 {
        lhs += store.stalk_value_at_one(x_orbit, Sheaf::IcSigma, g)?;
    }
    let h_orbits = store.h_orbits_of(x_orbit);
    if h_orbits.is_empty() {
        return Err(Error::MissingRecord(format!(
            "{x_orbit} in the {g} calculation table"
        )));
    }
    let emb = build_embedding(g)?;
    let rd = root_datum(g);
    let h_small = enumerate_small(emb.h_type)?;
    let h_pieces: Vec<(Coweight, ReederPiece)> = h_small
        .elements
        .iter()
        .map(|mu| {
            Ok((
                mu.to(Basis::Classical)?,
                reeder_piece_classical(emb.h_type, mu)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for h in h_orbits {
        let mut terms = Vec::new();
        for (mu, piece) in &h_pieces {
            let Some(pos) = piece.orbits.iter().position(|o| *o == h) else {
                continue;
            };
            let count = if piece.case == PieceCase::Double && pos == 0 {
                2
            } else {
                1
            };
            let (d, _) = rd.dominant_rep(&emb.embed(mu)?);
            let image = Coweight::fundamental(g, d)?;
            let m = as_u64(&weight_multiplicity(top, &image)?);
            terms.push(FibreTerm {
                mu: mu.clone(),
                count,
                image,
                multiplicity: m,
            });
        }
        let rhs = terms.iter().map(|t| t.count * t.multiplicity).sum();
        out.push(StalkIdentity {
            g_type: g,
            top: top.clone(),
            x_orbit: x_orbit.clone(),
            h_orbit: h,
            lhs,
            rhs,
            terms,
        });
    }
    Ok(out)
}

/// Every `(top, orbit)` case of the stalk identity in the tables.
pub fn stalk_cases() -> Result<Vec<(LieType, Coweight, OrbitLabel)>> {
    let store = paperdata::store()?;
    let mut out = Vec::new();
    for g in store
        .calc_types()
        .into_iter()
        .filter(|g| g.family == Family::E)
    {
        let mut orbits: Vec<OrbitLabel> = Vec::new();
        for s in store.stalks.iter().filter(|s| s.g_type == g) {
            if !orbits.contains(&s.orbit) {
                orbits.push(s.orbit.clone());
            }
        }
        for top in stalk_tops(g)? {
            for o in &orbits {
                out.push((g, top.clone(), o.clone()));
            }
        }
    }
    Ok(out)
}

/// Group small coweights of a classical type by their piece, for comparison
/// against drawn posets: coweight coordinates to orbit labels.
pub fn piece_map(lt: LieType) -> Result<HashMap<Vec<i64>, Vec<OrbitLabel>>> {
    let poset = enumerate_small(lt)?;
    poset
        .elements
        .iter()
        .map(|e| Ok((e.coords.clone(), reeder_piece(e)?.orbits)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::parse_coweight;

    fn lt(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn cw(t: &str, s: &str) -> Coweight {
        parse_coweight(lt(t), s).unwrap()
    }

    fn labels(p: &ReederPiece) -> Vec<String> {
        p.orbits.iter().map(|o| o.to_string()).collect()
    }

    #[test]
    fn small_counts() {
        for (t, n) in [
            ("E6", 8),
            ("E7", 6),
            ("E8", 5),
            ("F4", 4),
            ("G2", 3),
            ("A3", 7),
            ("C4", 5),
            ("B4", 5),
            ("D4", 6),
            ("A1", 2),
        ] {
            assert_eq!(enumerate_small(lt(t)).unwrap().len(), n, "{t}");
        }
    }

    #[test]
    fn e8_is_a_chain() {
        let p = enumerate_small(lt("E8")).unwrap();
        let names: Vec<String> = p.elements.iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["w2", "w7", "w1", "w8", "0"]);
        assert_eq!(p.hasse_edges, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }

    #[test]
    fn rank_bound() {
        assert!(matches!(
            enumerate_small(lt("C13")),
            Err(Error::RankBound {
                rank: 13,
                bound: 12
            })
        ));
    }

    #[test]
    fn closed_forms() {
        let b4: Vec<String> = small_closed_form(lt("B4"))
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            b4,
            [
                "(0,0,0,0)",
                "(1,1,0,0)",
                "(1,1,1,1)",
                "(2,0,0,0)",
                "(2,1,1,0)"
            ]
        );
        let d4 = small_closed_form(lt("D4")).unwrap();
        assert!(d4.contains(&cw("D4", "1,1,1,-1")));
        let a2: Vec<String> = small_closed_form(lt("A2"))
            .unwrap()
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(a2, ["(0,0,0)", "(1,0,-1)", "(1,1,-2)", "(2,-1,-1)"]);
    }

    #[test]
    fn classical_pieces() {
        let p = reeder_piece_classical(lt("A3"), &cw("A3", "2,0,-1,-1")).unwrap();
        assert_eq!(labels(&p), ["[3,1]"]);
        assert_eq!(p.case, PieceCase::Single);
        let p = reeder_piece_classical(lt("B4"), &cw("B4", "2,1,1,0")).unwrap();
        assert_eq!(labels(&p), ["[3^2,1^3]", "[3,2^2,1^2]"]);
        assert_eq!(p.case, PieceCase::Double);
        let p = reeder_piece_classical(lt("D4"), &cw("D4", "1,1,1,-1")).unwrap();
        assert_eq!(labels(&p), ["[2^4]_II"]);
        let p = reeder_piece_classical(lt("C4"), &cw("C4", "1,1,0,0")).unwrap();
        assert_eq!(labels(&p), ["[2^2,1^4]"]);
        assert!(matches!(
            reeder_piece_classical(lt("C4"), &cw("C4", "2,0,0,0")),
            Err(Error::NotSmall(_))
        ));
    }

    #[test]
    fn embeddings() {
        let e7 = build_embedding(lt("E7")).unwrap();
        assert_eq!(
            e7.node_map,
            vec![vec![0], vec![1], vec![3], vec![4], vec![2], vec![5]]
        );
        let g2 = build_embedding(lt("G2")).unwrap();
        let img = g2.fold(&Coweight::omega(lt("G2"), 1)).unwrap();
        assert_eq!(img.to(Basis::Classical).unwrap().coords, vec![2, 1, 1, 0]);
        let f4 = build_embedding(lt("F4")).unwrap();
        assert_eq!(
            f4.fold(&Coweight::omega(lt("F4"), 2)).unwrap(),
            Coweight::omega(lt("E6"), 4)
        );
    }

    #[test]
    fn restriction() {
        let e7 = build_embedding(lt("E7")).unwrap();
        let mus = restrict_orbit_members(&e7, &cw("E7", "w3")).unwrap();
        let got: BTreeSet<Vec<i64>> = mus.into_iter().map(|m| m.coords).collect();
        assert_eq!(
            got,
            BTreeSet::from([vec![2, 1, 1, 0, 0, 0], vec![1, 1, 1, 1, 1, 1]])
        );
        let e8 = build_embedding(lt("E8")).unwrap();
        let zero = restrict_orbit_members(&e8, &Coweight::zero(lt("E8"))).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_zero());
    }

    #[test]
    fn exceptional_pieces() {
        let p = reeder_piece_exceptional(lt("E6"), &cw("E6", "w4")).unwrap();
        assert_eq!(labels(&p), ["A2", "3A1"]);
        assert_eq!(p.case, PieceCase::Double);
        let p = reeder_piece_exceptional(lt("F4"), &cw("F4", "w4")).unwrap();
        assert_eq!(labels(&p), ["~A1"]);
        let p = reeder_piece_exceptional(lt("G2"), &cw("G2", "w1")).unwrap();
        assert_eq!(labels(&p), ["G2(a1)", "~A1"]);
        let p = reeder_piece_exceptional(lt("E6"), &cw("E6", "3w1")).unwrap();
        assert_eq!(p.sources.len(), 2);
    }

    #[test]
    fn stalk_examples() {
        let e7 = lt("E7");
        let r = verify_stalk_identity(
            e7,
            &cw("E7", "w2+w7"),
            &OrbitLabel::exceptional(e7, "(3A1)''"),
        )
        .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].lhs, r[0].rhs), (6, 6));
        let e6 = lt("E6");
        let r = verify_stalk_identity(e6, &cw("E6", "3w1"), &OrbitLabel::exceptional(e6, "2A2"))
            .unwrap();
        assert!(r.iter().all(|s| s.lhs == 1 && s.ok()));
    }
}
