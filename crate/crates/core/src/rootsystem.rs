//! Simple root systems of types A–G, their coweight lattices, and Weyl group
//! navigation by simple reflections.
//!
//! Node numbering follows the Bourbaki plates throughout. For a coweight
//! `λ` the canonical coordinates are `c_j = ⟨λ, α_j⟩` (fundamental-coweight
//! basis). The Cartan matrix is stored as `a[i][j] = ⟨α̌_i, α_j⟩`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(LieType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.family, Family::A | Family::B | Family::C | Family::D)
    }

    /// Number of classical coordinates: `n` for `SL_n` (rank `n-1`), rank otherwise.
    pub fn classical_len(&self) -> Option<usize> {
        match self.family {
            Family::A => Some(self.rank + 1),
            Family::B | Family::C | Family::D => Some(self.rank),
            _ => None,
        }
    }

    /// Dimension of the natural representation of the classical group.
    pub fn natural_dim(&self) -> Option<usize> {
        match self.family {
            Family::A => Some(self.rank + 1),
            Family::B => Some(2 * self.rank + 1),
            Family::C | Family::D => Some(2 * self.rank),
            _ => None,
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars
            .next()
            .ok_or_else(|| Error::Parse("empty type".into()))?;
        let family: Family = fam.to_string().parse()?;
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        LieType::new(family, rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Classical,
    Fundamental,
    Coroot,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Classical => "classical",
            Basis::Fundamental => "fundamental",
            Basis::Coroot => "coroot",
        })
    }
}

/// An element of the coweight lattice with an explicit coordinate basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight {
    pub lie_type: LieType,
    pub basis: Basis,
    pub coords: Vec<i64>,
}

impl Coweight {
    pub fn new(lie_type: LieType, basis: Basis, coords: Vec<i64>) -> Result<Self> {
        let expected = match basis {
            Basis::Classical => lie_type
                .classical_len()
                .ok_or(Error::NoClassicalCoords(lie_type))?,
            _ => lie_type.rank,
        };
        if coords.len() != expected {
            return Err(Error::BadLength {
                lie_type,
                basis,
                expected,
                got: coords.len(),
            });
        }
        if basis == Basis::Classical
            && lie_type.family == Family::A
            && coords.iter().sum::<i64>() != 0
        {
            return Err(Error::NonzeroSum(coords));
        }
        Ok(Coweight {
            lie_type,
            basis,
            coords,
        })
    }

    pub fn fundamental(lie_type: LieType, coords: Vec<i64>) -> Result<Self> {
        Coweight::new(lie_type, Basis::Fundamental, coords)
    }

    pub fn classical(lie_type: LieType, coords: Vec<i64>) -> Result<Self> {
        Coweight::new(lie_type, Basis::Classical, coords)
    }

    pub fn zero(lie_type: LieType) -> Self {
        Coweight {
            lie_type,
            basis: Basis::Fundamental,
            coords: vec![0; lie_type.rank],
        }
    }

    /// The fundamental coweight `ω̌_i` (1-based).
    pub fn omega(lie_type: LieType, i: usize) -> Self {
        let mut coords = vec![0; lie_type.rank];
        coords[i - 1] = 1;
        Coweight {
            lie_type,
            basis: Basis::Fundamental,
            coords,
        }
    }

    /// Fundamental coordinates of this coweight.
    pub fn fund(&self) -> Result<Vec<i64>> {
        root_datum(self.lie_type).to_fundamental(self)
    }

    /// Same lattice element in the requested basis.
    pub fn to(&self, target: Basis) -> Result<Coweight> {
        convert_basis(self, target)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.basis {
            Basis::Fundamental => f.write_str(&format_fundamental(&self.coords)),
            Basis::Classical => f.write_str(&format_tuple(&self.coords)),
            Basis::Coroot => write!(f, "coroot{}", format_tuple(&self.coords)),
        }
    }
}

/// `"w2+w7"`, `"3w1"`, `"0"`.
pub fn format_fundamental(c: &[i64]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| match x {
            1 => format!("w{}", i + 1),
            -1 => format!("-w{}", i + 1),
            _ => format!("{x}w{}", i + 1),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+").replace("+-", "-")
    }
}

pub fn format_tuple(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Parse a coweight written as a fundamental combination (`w2+w7`, `3w1`,
/// `0`) or as classical coordinates (`2,1,1,0`).
pub fn parse_coweight(lt: LieType, s: &str) -> Result<Coweight> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.trim_start_matches('(').trim_end_matches(')');
    if s.contains(',') {
        let coords = s
            .split(',')
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        return Coweight::classical(lt, coords);
    }
    let mut coords = vec![0i64; lt.rank];
    if s == "0" {
        return Coweight::fundamental(lt, coords);
    }
    let normalized = s.replace('-', "+-");
    for term in normalized.split('+').filter(|t| !t.is_empty()) {
        let (coef, idx) = term
            .split_once('w')
            .ok_or_else(|| Error::Parse(format!("bad term {term:?} in {s:?}")))?;
        let coef: i64 = match coef {
            "" => 1,
            "-" => -1,
            c => c
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?,
        };
        let idx: usize = idx
            .parse()
            .map_err(|_| Error::Parse(format!("bad index in {term:?}")))?;
        if idx == 0 || idx > lt.rank {
            return Err(Error::Parse(format!("index {idx} out of range for {lt}")));
        }
        coords[idx - 1] += coef;
    }
    Coweight::fundamental(lt, coords)
}

/// Full root-system data for one simple type.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub lie_type: LieType,
    /// `cartan[i][j] = ⟨α̌_i, α_j⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// Positive coroots in simple-coroot coordinates, sorted by height.
    pub positive_coroots: Vec<Vec<i64>>,
    /// Sum of the positive roots, in simple-root coordinates.
    pub two_rho: Vec<i64>,
    pub highest_root: Vec<i64>,
    /// Highest short root of the dual group, in simple-coroot coordinates.
    pub highest_short_coroot: Vec<i64>,
    /// Half squared lengths of the simple coroots under the invariant form of
    /// the dual group, normalized so the short ones have squared length 2.
    pub coroot_norms: Vec<i64>,
    /// `-w₀ ω̌_i = ω̌_{minus_w0_perm[i]}`.
    pub minus_w0_perm: Vec<usize>,
}

pub fn cartan_matrix(lt: LieType) -> Vec<Vec<i64>> {
    let n = lt.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match lt.family {
        Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Family::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)] {
                if j <= n {
                    link(i - 1, j - 1, -1, -1);
                }
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => link(0, 1, -3, -1),
    }
    a
}

/// Positive elements of the root system generated from the simple ones by
/// simple reflections; `pair(v, i)` is the pairing of `v` with the `i`-th
/// simple co-element.
fn reflection_closure(n: usize, pair: impl Fn(&[i64], usize) -> i64) -> Vec<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..n {
            let p = pair(&v, i);
            if p == 0 {
                continue;
            }
            let mut w = v.clone();
            w[i] -= p;
            if w.iter().all(|&x| x >= 0) && seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<Vec<i64>> = seen.into_iter().collect();
    out.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
    out
}

impl RootDatum {
    pub fn new(lt: LieType) -> Self {
        let n = lt.rank;
        let cartan = cartan_matrix(lt);
        let positive_roots =
            reflection_closure(n, |m, i| (0..n).map(|j| m[j] * cartan[i][j]).sum());
        let positive_coroots =
            reflection_closure(n, |m, i| (0..n).map(|j| m[j] * cartan[j][i]).sum());
        let mut two_rho = vec![0; n];
        for r in &positive_roots {
            for (t, x) in two_rho.iter_mut().zip(r) {
                *t += x;
            }
        }
        let highest_root = positive_roots.last().cloned().unwrap_or_default();
        let coroot_norms = dual_symmetrizer(&cartan);
        let norm = |m: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..n {
                for j in 0..n {
                    s += m[i] * m[j] * coroot_norms[i] * cartan[j][i];
                }
            }
            s
        };
        let min_norm = positive_coroots.iter().map(|m| norm(m)).min().unwrap_or(0);
        let highest_short_coroot = positive_coroots
            .iter()
            .filter(|m| norm(m) == min_norm)
            .max_by_key(|m| m.iter().sum::<i64>())
            .cloned()
            .unwrap_or_default();
        let mut rd = RootDatum {
            lie_type: lt,
            cartan,
            positive_roots,
            positive_coroots,
            two_rho,
            highest_root,
            highest_short_coroot,
            coroot_norms,
            minus_w0_perm: Vec::new(),
        };
        rd.minus_w0_perm = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = -1;
                let (d, _) = rd.dominant_rep(&v);
                d.iter()
                    .position(|&x| x == 1)
                    .expect("-w0 permutes fundamentals")
            })
            .collect();
        rd
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    /// Apply the simple reflection `s_i` to fundamental coordinates.
    pub fn reflect(&self, c: &mut [i64], i: usize) {
        let ci = c[i];
        if ci != 0 {
            for (j, x) in c.iter_mut().enumerate() {
                *x -= ci * self.cartan[i][j];
            }
        }
    }

    /// Dominant element of the Weyl orbit, reflecting at the least index with
    /// a negative coordinate; returns the number of reflections applied.
    pub fn dominant_rep(&self, c: &[i64]) -> (Vec<i64>, usize) {
        let mut v = c.to_vec();
        let mut steps = 0;
        while let Some(i) = v.iter().position(|&x| x < 0) {
            self.reflect(&mut v, i);
            steps += 1;
        }
        (v, steps)
    }

    pub fn is_dominant(&self, c: &[i64]) -> bool {
        c.iter().all(|&x| x >= 0)
    }

    pub fn minus_w0_fund(&self, c: &[i64]) -> Vec<i64> {
        let mut out = vec![0; c.len()];
        for (i, &x) in c.iter().enumerate() {
            out[self.minus_w0_perm[i]] = x;
        }
        out
    }

    /// `c = Aᵀ k`.
    pub fn coroot_to_fund(&self, k: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|j| (0..n).map(|i| k[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// Solve `Aᵀ k = c` over the rationals.
    pub fn fund_to_coroot_q(&self, c: &[i64]) -> Vec<Q> {
        let n = self.rank();
        let mut m: Vec<Vec<Q>> = (0..n)
            .map(|j| {
                let mut row: Vec<Q> = (0..n).map(|i| Q::from(self.cartan[i][j])).collect();
                row.push(Q::from(c[j]));
                row
            })
            .collect();
        solve_in_place(&mut m, n)
    }

    pub fn fund_to_coroot(&self, c: &[i64]) -> Result<Vec<i64>> {
        integral(&self.fund_to_coroot_q(c), Basis::Coroot)
    }

    pub fn in_coroot_lattice(&self, c: &[i64]) -> bool {
        self.fund_to_coroot_q(c).iter().all(|x| x.is_integer())
    }

    /// `⟨λ, 2ρ⟩` from fundamental coordinates and the simple-root expansion of 2ρ.
    pub fn pair_two_rho(&self, c: &[i64]) -> i64 {
        c.iter().zip(&self.two_rho).map(|(a, b)| a * b).sum()
    }

    /// `λ ≤ μ` in dominance order (fundamental coordinates).
    pub fn leq(&self, lower: &[i64], upper: &[i64]) -> bool {
        let diff: Vec<i64> = upper.iter().zip(lower).map(|(a, b)| a - b).collect();
        self.fund_to_coroot_q(&diff)
            .iter()
            .all(|x| x.is_integer() && *x >= Q::zero())
    }

    /// Pairing `⟨α̌, α⟩` for a coroot `m` (coroot coordinates) with the simple root `α_i`.
    pub fn coroot_pair_simple(&self, m: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| m[j] * self.cartan[j][i]).sum()
    }

    pub fn to_fundamental(&self, v: &Coweight) -> Result<Vec<i64>> {
        if v.lie_type != self.lie_type {
            return Err(Error::TypeMismatch(v.lie_type, self.lie_type));
        }
        Ok(match v.basis {
            Basis::Fundamental => v.coords.clone(),
            Basis::Coroot => self.coroot_to_fund(&v.coords),
            Basis::Classical => classical_to_fund(self.lie_type, &v.coords),
        })
    }

    pub fn convert(&self, v: &Coweight, target: Basis) -> Result<Coweight> {
        if v.basis == target {
            return Ok(v.clone());
        }
        let c = self.to_fundamental(v)?;
        let coords = match target {
            Basis::Fundamental => c,
            Basis::Coroot => self.fund_to_coroot(&c)?,
            Basis::Classical => integral(&fund_to_classical_q(self.lie_type, &c)?, target)?,
        };
        Coweight::new(self.lie_type, target, coords)
    }

    /// Size of the Weyl orbit of a coweight, by breadth-first search.
    pub fn orbit_size(&self, c: &[i64]) -> usize {
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(c.to_vec());
        queue.push_back(c.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                if v[i] == 0 {
                    continue;
                }
                let mut w = v.clone();
                self.reflect(&mut w, i);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        seen.len()
    }
}

/// Symmetrizer `d` with `d_i a_ji = d_j a_ij`, scaled to integers with minimum 1.
fn dual_symmetrizer(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let di = d[i].expect("visited");
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                d[j] = Some(di * Q::new(a[j][i], a[i][j]));
                stack.push(j);
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.expect("connected diagram"))
        .collect();
    let min = d
        .iter()
        .copied()
        .fold(d[0], |m, x| if x < m { x } else { m });
    d.iter()
        .map(|x| {
            let r = x / min;
            assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

/// Gaussian elimination on an augmented `n × (n+1)` system with unique solution.
fn solve_in_place(m: &mut [Vec<Q>], n: usize) -> Vec<Q> {
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .expect("nonsingular Cartan matrix");
        m.swap(col, piv);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for k in 0..=n {
                    let sub = f * m[col][k];
                    m[r][k] -= sub;
                }
            }
        }
    }
    m.iter().map(|row| row[n]).collect()
}

fn integral(v: &[Q], basis: Basis) -> Result<Vec<i64>> {
    if v.iter().all(|x| x.is_integer()) {
        Ok(v.iter().map(|x| x.to_integer()).collect())
    } else {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Err(Error::NonIntegral {
            basis,
            witness: format!("({})", parts.join(",")),
        })
    }
}

fn classical_to_fund(lt: LieType, a: &[i64]) -> Vec<i64> {
    let n = lt.rank;
    let mut c: Vec<i64> = (0..n)
        .map(|j| a[j] - a.get(j + 1).copied().unwrap_or(0))
        .collect();
    match lt.family {
        Family::A => {}
        Family::B => c[n - 1] = a[n - 1],
        Family::C => c[n - 1] = 2 * a[n - 1],
        Family::D => c[n - 1] = a[n - 2] + a[n - 1],
        _ => unreachable!("classical types only"),
    }
    c
}

fn fund_to_classical_q(lt: LieType, c: &[i64]) -> Result<Vec<Q>> {
    let n = lt.rank;
    let q = |x: i64| Q::from(x);
    let mut a: Vec<Q> = vec![Q::zero(); lt.classical_len().ok_or(Error::NoClassicalCoords(lt))?];
    let last_free = match lt.family {
        Family::A => {
            let len = n + 1;
            let weighted: i64 = c.iter().enumerate().map(|(j, x)| (j as i64 + 1) * x).sum();
            a[len - 1] = Q::new(-weighted, len as i64);
            len - 1
        }
        Family::B => {
            a[n - 1] = q(c[n - 1]);
            n - 1
        }
        Family::C => {
            a[n - 1] = Q::new(c[n - 1], 2);
            n - 1
        }
        Family::D => {
            a[n - 1] = Q::new(c[n - 1] - c[n - 2], 2);
            a[n - 2] = Q::new(c[n - 2] + c[n - 1], 2);
            n - 2
        }
        _ => return Err(Error::NoClassicalCoords(lt)),
    };
    for j in (0..last_free).rev() {
        a[j] = a[j + 1] + q(c[j]);
    }
    Ok(a)
}

static DATA: OnceLock<Mutex<HashMap<LieType, Arc<RootDatum>>>> = OnceLock::new();

/// Shared, lazily built root datum.
pub fn root_datum(lt: LieType) -> Arc<RootDatum> {
    let map = DATA.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rd) = map.lock().expect("root datum cache").get(&lt) {
        return rd.clone();
    }
    let rd = Arc::new(RootDatum::new(lt));
    map.lock()
        .expect("root datum cache")
        .entry(lt)
        .or_insert(rd)
        .clone()
}

pub fn build_root_system(lt: LieType) -> Result<RootDatum> {
    let lt = LieType::new(lt.family, lt.rank)?;
    Ok(RootDatum::new(lt))
}

pub fn convert_basis(v: &Coweight, target: Basis) -> Result<Coweight> {
    root_datum(v.lie_type).convert(v, target)
}

fn check_same(a: &Coweight, b: &Coweight) -> Result<()> {
    if a.lie_type != b.lie_type {
        return Err(Error::TypeMismatch(a.lie_type, b.lie_type));
    }
    Ok(())
}

/// `μ ≤ λ`: `λ − μ` is a nonnegative integral combination of simple coroots.
pub fn dominance_leq(mu: &Coweight, lam: &Coweight) -> Result<bool> {
    check_same(mu, lam)?;
    let rd = root_datum(lam.lie_type);
    Ok(rd.leq(&rd.to_fundamental(mu)?, &rd.to_fundamental(lam)?))
}

/// Dominant element of `W·v` in the basis of `v`, with the reflection count.
pub fn dominant_representative(v: &Coweight) -> Result<(Coweight, usize)> {
    let rd = root_datum(v.lie_type);
    let (d, steps) = rd.dominant_rep(&rd.to_fundamental(v)?);
    let out = rd.convert(&Coweight::fundamental(v.lie_type, d)?, v.basis)?;
    Ok((out, steps))
}

pub fn is_dominant(v: &Coweight) -> Result<bool> {
    Ok(v.fund()?.iter().all(|&x| x >= 0))
}

fn require_dominant(v: &Coweight) -> Result<Vec<i64>> {
    let c = v.fund()?;
    if c.iter().any(|&x| x < 0) {
        return Err(Error::NotDominant(v.to_string()));
    }
    Ok(c)
}

pub fn minus_w0(lam: &Coweight) -> Result<Coweight> {
    let c = require_dominant(lam)?;
    let rd = root_datum(lam.lie_type);
    rd.convert(
        &Coweight::fundamental(lam.lie_type, rd.minus_w0_fund(&c))?,
        lam.basis,
    )
}

pub fn pairing_two_rho(lam: &Coweight) -> Result<i64> {
    let c = require_dominant(lam)?;
    Ok(root_datum(lam.lie_type).pair_two_rho(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for s in [
            "A1", "A3", "A7", "B2", "B5", "C3", "C6", "D4", "D7", "E6", "E7", "E8", "F4", "G2",
        ] {
            let t = lt(s);
            let rd = RootDatum::new(t);
            assert_eq!(rd.positive_roots.len(), t.num_positive_roots(), "{s}");
            assert_eq!(rd.positive_coroots.len(), t.num_positive_roots(), "{s}");
        }
    }

    #[test]
    fn a3_two_rho_classical() {
        let rd = RootDatum::new(lt("A3"));
        // 2ρ as a coweight of the dual: Σ (2ρ)_i α̌_i in coroot coordinates.
        let c = rd.coroot_to_fund(&rd.two_rho);
        let v = rd
            .convert(
                &Coweight::fundamental(lt("A3"), c).unwrap(),
                Basis::Classical,
            )
            .unwrap();
        assert_eq!(v.coords, vec![3, 1, -1, -3]);
    }

    #[test]
    fn highest_short_coroots() {
        let cl = |s: &str| {
            let t = lt(s);
            let rd = root_datum(t);
            let c = rd.coroot_to_fund(&rd.highest_short_coroot);
            match t.family {
                Family::E | Family::F | Family::G => c,
                _ => {
                    rd.convert(&Coweight::fundamental(t, c).unwrap(), Basis::Classical)
                        .unwrap()
                        .coords
                }
            }
        };
        assert_eq!(cl("B4"), vec![1, 1, 0, 0]);
        assert_eq!(cl("C4"), vec![1, 0, 0, 0]);
        assert_eq!(cl("D4"), vec![1, 1, 0, 0]);
        assert_eq!(cl("A3"), vec![1, 0, 0, -1]);
        assert_eq!(cl("F4"), vec![1, 0, 0, 0]);
        assert_eq!(cl("E8"), vec![0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(cl("G2"), vec![0, 1]);
    }

    #[test]
    fn conversions() {
        let a3 = lt("A3");
        let v = Coweight::classical(a3, vec![1, 0, 0, -1]).unwrap();
        assert_eq!(v.to(Basis::Fundamental).unwrap().coords, vec![1, 0, 1]);
        let c4 = lt("C4");
        let v = Coweight::classical(c4, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(v.to(Basis::Fundamental).unwrap().coords, vec![0, 0, 0, 2]);
        let odd = Coweight::fundamental(c4, vec![0, 0, 0, 1]).unwrap();
        match odd.to(Basis::Classical) {
            Err(Error::NonIntegral { witness, .. }) => assert_eq!(witness, "(1/2,1/2,1/2,1/2)"),
            other => panic!("{other:?}"),
        }
        let d4 = lt("D4");
        let spin = Coweight::omega(d4, 4);
        assert!(spin.to(Basis::Classical).is_err());
        let b4 = lt("B4");
        let w4 = Coweight::omega(b4, 4);
        assert_eq!(w4.to(Basis::Classical).unwrap().coords, vec![1, 1, 1, 1]);
        assert!(w4.to(Basis::Coroot).is_ok());
        assert!(Coweight::omega(b4, 1).to(Basis::Coroot).is_err());
    }

    #[test]
    fn dominance_examples() {
        let a3 = lt("A3");
        let mu = Coweight::classical(a3, vec![1, 0, 0, -1]).unwrap();
        let lam = Coweight::classical(a3, vec![2, 0, 0, -2]).unwrap();
        assert!(dominance_leq(&mu, &lam).unwrap());
        assert!(!dominance_leq(&lam, &mu).unwrap());
        let c4 = lt("C4");
        let mu = Coweight::classical(c4, vec![1, 1, 0, 0]).unwrap();
        let lam = Coweight::classical(c4, vec![2, 0, 0, 0]).unwrap();
        // (2,0,0,0) − (1,1,0,0) = e₁ − e₂ is the simple coroot α̌₁.
        assert!(dominance_leq(&mu, &lam).unwrap());
        assert!(dominance_leq(&mu, &Coweight::zero(a3)).is_err());
    }

    #[test]
    fn dominant_reps() {
        let a3 = lt("A3");
        let v = Coweight::classical(a3, vec![-1, 0, 0, 1]).unwrap();
        let (d, len) = dominant_representative(&v).unwrap();
        assert_eq!(d.coords, vec![1, 0, 0, -1]);
        assert!(len > 0);
        let d6 = lt("D6");
        let v = Coweight::classical(d6, vec![1, 1, 1, 1, 1, -1]).unwrap();
        assert_eq!(dominant_representative(&v).unwrap(), (v, 0));
    }

    #[test]
    fn minus_w0_examples() {
        let e6 = lt("E6");
        assert_eq!(
            minus_w0(&Coweight::omega(e6, 1)).unwrap(),
            Coweight::omega(e6, 6)
        );
        assert_eq!(
            minus_w0(&Coweight::omega(e6, 2)).unwrap(),
            Coweight::omega(e6, 2)
        );
        for s in ["E7", "E8", "F4", "G2", "B5", "C4", "D6"] {
            let rd = root_datum(lt(s));
            assert!(
                rd.minus_w0_perm.iter().enumerate().all(|(i, &j)| i == j),
                "{s}"
            );
        }
        let d5 = root_datum(lt("D5"));
        assert_eq!(d5.minus_w0_perm, vec![0, 1, 2, 4, 3]);
        let a4 = root_datum(lt("A4"));
        assert_eq!(a4.minus_w0_perm, vec![3, 2, 1, 0]);
    }

    #[test]
    fn two_rho_pairings() {
        let e8 = lt("E8");
        assert_eq!(pairing_two_rho(&Coweight::omega(e8, 2)).unwrap(), 136);
        assert_eq!(pairing_two_rho(&Coweight::zero(e8)).unwrap(), 0);
        let f4 = lt("F4");
        assert_eq!(pairing_two_rho(&Coweight::omega(f4, 2)).unwrap(), 30);
        assert_eq!(root_datum(f4).two_rho, vec![16, 30, 42, 22]);
    }

    #[test]
    fn two_rho_second_route() {
        // ⟨λ, 2ρ⟩ = 2 Σ k_i when λ = Σ k_i α̌_i, since ⟨α̌_i, 2ρ⟩ = 2.
        for s in ["A4", "B3", "C5", "D5", "E6", "E7", "E8", "F4", "G2"] {
            let rd = root_datum(lt(s));
            for m in &rd.positive_coroots {
                let c = rd.coroot_to_fund(m);
                assert_eq!(rd.pair_two_rho(&c), 2 * m.iter().sum::<i64>(), "{s}");
            }
        }
    }

    #[test]
    fn coweight_parsing() {
        let e7 = lt("E7");
        let v = parse_coweight(e7, "w2+w7").unwrap();
        assert_eq!(v.coords, vec![0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(v.to_string(), "w2+w7");
        assert_eq!(parse_coweight(e7, "3w1").unwrap().to_string(), "3w1");
        assert!(parse_coweight(e7, "0").unwrap().is_zero());
        let b4 = lt("B4");
        let v = parse_coweight(b4, "2,1,1,0").unwrap();
        assert_eq!(v.basis, Basis::Classical);
        assert!(parse_coweight(e7, "w9").is_err());
        assert!(parse_coweight(e7, "x").is_err());
    }

    #[test]
    fn invalid_ranks() {
        assert!(LieType::new(Family::E, 5).is_err());
        assert!(LieType::new(Family::F, 3).is_err());
        assert!(LieType::new(Family::B, 1).is_err());
        assert!(LieType::new(Family::D, 3).is_ok());
        assert!(LieType::new(Family::A, 0).is_err());
    }
}
