//! Matrix models of the small part of the affine Grassmannian in the
//! classical groups, over exact rationals.
//!
//! A Laurent matrix `g = Σ_k c_k t^{-k}` stores `c_k` at index `k`. Elements
//! of interest have constant term `1` and finitely many terms; `ι(g) = θ(g⁻¹)`
//! with `θ: t ↦ −t`, and `π†(g) = c_1`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::orbits::{OrbitLabel, Partition};
use crate::rootsystem::{Coweight, Family, LieType};

pub type Q = BigRational;

fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = q(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        let mut out = Matrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    fn row_echelon(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Indices of a maximal set of linearly independent columns.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.row_echelon().1
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let (red, pivots) = aug.row_echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let pivot = m[(c, c)].clone();
            det *= &pivot;
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] / &pivot;
                    for j in c..n {
                        let v = &m[(c, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
        }
        det
    }

    /// Whether `x` is nilpotent: `x^n = 0`.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl std::ops::Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "dimension mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(&q(-1))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `Σ_k coeffs[k] t^{-k}`, trailing zero coefficients trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    size: usize,
    coeffs: Vec<Matrix>,
}

impl LaurentMatrix {
    pub fn new(coeffs: Vec<Matrix>) -> Result<Self> {
        let size = coeffs
            .first()
            .map(|m| m.rows)
            .ok_or_else(|| Error::Precondition("Laurent matrix needs a constant term".into()))?;
        if coeffs.iter().any(|m| m.rows != size || m.cols != size) {
            return Err(Error::Precondition(
                "coefficients must be square of equal size".into(),
            ));
        }
        let mut g = LaurentMatrix { size, coeffs };
        g.trim();
        Ok(g)
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|m| m.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn identity(n: usize) -> Self {
        LaurentMatrix {
            size: n,
            coeffs: vec![Matrix::identity(n)],
        }
    }

    /// `1 + x t⁻¹`.
    pub fn one_plus(x: &Matrix) -> Result<Self> {
        Self::new(vec![Matrix::identity(x.rows), x.clone()])
    }

    /// `exp(x t⁻¹)` for nilpotent `x`.
    pub fn exp_nilpotent(x: &Matrix) -> Result<Self> {
        if !x.is_nilpotent() {
            return Err(Error::Precondition("exp needs a nilpotent matrix".into()));
        }
        let mut coeffs = vec![Matrix::identity(x.rows)];
        let mut term = Matrix::identity(x.rows);
        for k in 1..=x.rows {
            term = (&term * x).scale(&Q::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            coeffs.push(term.clone());
        }
        Self::new(coeffs)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Highest power of `t⁻¹` present.
    pub fn support(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Matrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.size, self.size))
    }

    pub fn constant_is_identity(&self) -> bool {
        self.coeffs[0] == Matrix::identity(self.size)
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.size, other.size, "dimension mismatch");
        let mut coeffs =
            vec![Matrix::zeros(self.size, self.size); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        let mut g = LaurentMatrix {
            size: self.size,
            coeffs,
        };
        g.trim();
        g
    }

    /// Multiply every coefficient on both sides by constant matrices.
    pub fn conjugate_by(&self, p: &Matrix, p_inv: &Matrix) -> LaurentMatrix {
        let mut g = LaurentMatrix {
            size: self.size,
            coeffs: self.coeffs.iter().map(|c| &(p * c) * p_inv).collect(),
        };
        g.trim();
        g
    }

    /// `t ↦ −t`.
    pub fn theta(&self) -> LaurentMatrix {
        LaurentMatrix {
            size: self.size,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn transpose(&self) -> LaurentMatrix {
        LaurentMatrix {
            size: self.size,
            coeffs: self.coeffs.iter().map(|c| c.transpose()).collect(),
        }
    }

    /// Value at `t⁻¹ = s`.
    pub fn eval(&self, s: &Q) -> Matrix {
        let mut out = Matrix::zeros(self.size, self.size);
        let mut p = Q::one();
        for c in &self.coeffs {
            out = &out + &c.scale(&p);
            p *= s;
        }
        out
    }

    /// `det g = 1` as a polynomial in `t⁻¹`, checked at `n·d + 1` points.
    pub fn det_is_one(&self) -> bool {
        let deg = self.size * self.support();
        (0..=deg as i64).all(|s| self.eval(&q(s)).det().is_one())
    }

    /// Inverse as a polynomial in `t⁻¹`, computed degree by degree.
    pub fn inverse_with_bound(&self, bound: usize) -> Result<LaurentMatrix> {
        if !self.constant_is_identity() {
            return Err(Error::Precondition(
                "constant term must be the identity".into(),
            ));
        }
        let n = self.size;
        let mut h = vec![Matrix::identity(n)];
        for k in 1..=bound {
            let mut acc = Matrix::zeros(n, n);
            for i in 1..=k.min(self.support()) {
                acc = &acc + &(&self.coeffs[i] * &h[k - i]);
            }
            h.push(-&acc);
        }
        let inv = LaurentMatrix::new(h)?;
        if self.mul(&inv) != LaurentMatrix::identity(n) {
            return Err(Error::Truncation(bound));
        }
        Ok(inv)
    }

    /// Default truncation for inversion: enough for `1 + N` with `N`
    /// nilpotent over the polynomial ring, and at least four times the support.
    pub fn default_bound(&self) -> usize {
        (4 * self.support()).max(self.size.saturating_sub(1) * self.support())
    }

    pub fn inverse(&self) -> Result<LaurentMatrix> {
        self.inverse_with_bound(self.default_bound())
    }
}

/// `ι(g) = θ(g⁻¹)`.
pub fn iota(g: &LaurentMatrix) -> Result<LaurentMatrix> {
    iota_with_bound(g, g.default_bound())
}

pub fn iota_with_bound(g: &LaurentMatrix, bound: usize) -> Result<LaurentMatrix> {
    Ok(g.inverse_with_bound(bound)?.theta())
}

/// `π†(g·o)`: the `t⁻¹` coefficient.
pub fn pi_dagger(g: &LaurentMatrix) -> Matrix {
    g.coeff(1)
}

/// Nondegenerate symmetric or alternating form, by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn is_symmetric(&self) -> bool {
        self.gram.transpose() == self.gram
    }

    pub fn is_alternating(&self) -> bool {
        self.gram.transpose() == -&self.gram
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.gram.rows()
    }

    /// `xᵀJ + Jx`, zero exactly when `x` is anti-self-adjoint.
    pub fn adjoint_defect(&self, x: &Matrix) -> Matrix {
        &(&x.transpose() * &self.gram) + &(&self.gram * x)
    }

    /// The adjoint `x* = J⁻¹ xᵀ J`.
    pub fn adjoint(&self, x: &Matrix) -> Matrix {
        let inv = self.gram.inverse().expect("nondegenerate form");
        &(&inv * &x.transpose()) * &self.gram
    }

    /// `g(t)ᵀ J g(t) = J` coefficientwise.
    pub fn preserved_by(&self, g: &LaurentMatrix) -> bool {
        let j = LaurentMatrix {
            size: g.size,
            coeffs: vec![self.gram.clone()],
        };
        g.transpose().mul(&j).mul(g) == j
    }
}

/// Partition of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(x: &Matrix) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::Precondition(
            "jordan_type needs a square matrix".into(),
        ));
    }
    let n = x.rows();
    let mut ranks = vec![n];
    let mut p = Matrix::identity(n);
    for _ in 0..n {
        p = &p * x;
        ranks.push(p.rank());
    }
    if ranks[n] != 0 {
        return Err(Error::Precondition("matrix is not nilpotent".into()));
    }
    // #parts ≥ s equals rank(x^{s-1}) − rank(x^s).
    let at_least: Vec<usize> = (1..=n).map(|s| ranks[s - 1] - ranks[s]).collect();
    let mut parts = Vec::new();
    for s in 1..=n {
        let next = if s < n { at_least[s] } else { 0 };
        for _ in 0..(at_least[s - 1] - next) {
            parts.push(s as u32);
        }
    }
    Ok(Partition::new(parts))
}

/// The dominant `SL_n` coweight `(a_1 ≥ … ≥ a_n)` of `g·o`, in classical
/// coordinates of type `A_{n-1}`.
///
/// With `N = a_n` the lowest power of `t`, the block-Toeplitz matrix of
/// `s × s` blocks built from the coefficients of `t^N, t^{N+1}, …` has rank
/// `Σ_j max(s − (a_j − a_n), 0)`, so successive differences count the `j`
/// with `a_j − a_n ≤ s − 1`.
pub fn coweight_of_element(g: &LaurentMatrix) -> Result<Coweight> {
    let n = g.size();
    if n < 2 {
        return Err(Error::Precondition("coweight recovery needs n ≥ 2".into()));
    }
    if !g.det_is_one() {
        return Err(Error::Precondition("determinant is not 1".into()));
    }
    let d = g.support();
    // Coefficient of t^{N+i}, i ≥ 0.
    let x = |i: usize| -> Matrix {
        if i <= d {
            g.coeff(d - i)
        } else {
            Matrix::zeros(n, n)
        }
    };
    let limit = n * d + 2;
    let mut prev_rank = 0usize;
    let mut counts = Vec::new();
    for s in 1..=limit {
        let mut m = Matrix::zeros(s * n, s * n);
        for bi in 0..s {
            for bj in bi..s {
                let blk = x(bj - bi);
                for i in 0..n {
                    for j in 0..n {
                        m[(bi * n + i, bj * n + j)] = blk[(i, j)].clone();
                    }
                }
            }
        }
        let r = m.rank();
        let c = r
            .checked_sub(prev_rank)
            .ok_or_else(|| Error::Internal("rank sequence decreased".into()))?;
        if counts.last().is_some_and(|&l| c < l) || c > n {
            return Err(Error::Internal("rank sequence inconsistent".into()));
        }
        counts.push(c);
        prev_rank = r;
        if c == n {
            break;
        }
    }
    if counts.last() != Some(&n) {
        return Err(Error::Internal("rank sequence did not saturate".into()));
    }
    // counts[s-1] = #{j : b_j ≤ s − 1}.
    let low = -(d as i64);
    let mut a = Vec::new();
    let mut prev = 0;
    for (s, &c) in counts.iter().enumerate() {
        for _ in prev..c {
            a.push(low + s as i64);
        }
        prev = c;
    }
    a.reverse();
    if a.iter().sum::<i64>() != 0 {
        return Err(Error::Internal(format!(
            "recovered coweight {a:?} does not sum to zero"
        )));
    }
    Coweight::classical(LieType::new(Family::A, n - 1)?, a)
}

/// A nilpotent representative with its invariant form (types B, C, D).
#[derive(Clone, Debug)]
pub struct NilpotentRep {
    pub lie_type: LieType,
    pub label: OrbitLabel,
    pub x: Matrix,
    pub form: Option<BilinearForm>,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn jordan_blocks(p: &Partition) -> Matrix {
    let n = p.total();
    let mut x = Matrix::zeros(n, n);
    let mut o = 0;
    for &d in p.parts() {
        for i in 0..d as usize - 1 {
            x[(o + i + 1, o + i)] = Q::one();
        }
        o += d as usize;
    }
    x
}

/// Block model for a form of sign `eps` (`1` symmetric, `-1` alternating).
/// Equal blocks are paired where possible so that isotropic subspaces built
/// from the blocks are rational.
fn form_model(p: &Partition, eps: i64) -> (Matrix, Matrix) {
    let n = p.total();
    let mut x = Matrix::zeros(n, n);
    let mut j = Matrix::zeros(n, n);
    let mut o = 0;
    let mut distinct: Vec<u32> = p.parts().to_vec();
    distinct.dedup();
    for d in distinct {
        let m = p.multiplicity(d);
        let d = d as usize;
        for _ in 0..m / 2 {
            for i in 0..2 * d {
                if i % d != d - 1 {
                    x[(o + i + 1, o + i)] = Q::one();
                }
            }
            for i in 0..d {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                j[(o + i, o + d + d - 1 - i)] = q(sign);
                j[(o + d + d - 1 - i, o + i)] = q(eps * sign);
            }
            o += 2 * d;
        }
        if m % 2 == 1 {
            for i in 0..d - 1 {
                x[(o + i + 1, o + i)] = Q::one();
            }
            for i in 0..d {
                j[(o + i, o + d - 1 - i)] = q(if i % 2 == 0 { 1 } else { -1 });
            }
            o += d;
        }
    }
    (x, j)
}

fn random_unimodular(n: usize, r: &mut ChaCha8Rng) -> Matrix {
    let mut p = Matrix::identity(n);
    if n < 2 {
        return p;
    }
    for _ in 0..3 * n {
        let a = r.gen_range(0..n);
        let mut b = r.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let k = q(r.gen_range(-2..=2));
        for c in 0..n {
            let v = &p[(b, c)] * &k;
            p[(a, c)] += v;
        }
    }
    p
}

/// Cayley transform `(1 − a)⁻¹(1 + a)` of a random `a` in the Lie algebra
/// of the form, which lies in the isometry group.
fn random_isometry(form: &BilinearForm, eps: i64, r: &mut ChaCha8Rng) -> Matrix {
    let n = form.gram.rows();
    let j_inv = form.gram.inverse().expect("nondegenerate form");
    loop {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for k in i..n {
                if r.gen_bool(0.3) {
                    let v = r.gen_range(-1..=1);
                    if i == k && eps == 1 {
                        continue;
                    }
                    m[(i, k)] = q(v);
                    m[(k, i)] = q(if eps == 1 { -v } else { v });
                }
            }
        }
        let a = &j_inv * &m;
        let one = Matrix::identity(n);
        if let Some(inv) = (&one - &a).inverse() {
            return &inv * &(&one + &a);
        }
    }
}

/// A seeded representative of a nilpotent orbit of a classical type.
///
/// Type A representatives are conjugated by a random unimodular matrix; for
/// B, C, D the block model is conjugated by a random isometry of its form.
/// Very even tags are not distinguished.
pub fn build_nilpotent(lt: LieType, label: &OrbitLabel, seed: u64) -> Result<NilpotentRep> {
    if label.lie_type() != lt {
        return Err(Error::TypeMismatch(label.lie_type(), lt));
    }
    let p = label
        .partition()
        .ok_or(Error::Unsupported("matrix models", lt))?
        .clone();
    let mut r = rng(seed);
    let (x, form) = match lt.family {
        Family::A => {
            let x = jordan_blocks(&p);
            let pm = random_unimodular(x.rows(), &mut r);
            let pinv = pm.inverse().expect("unimodular");
            (&(&pm * &x) * &pinv, None)
        }
        Family::B | Family::C | Family::D => {
            let eps = if lt.family == Family::C { -1 } else { 1 };
            let (x, gram) = form_model(&p, eps);
            let form = BilinearForm { gram };
            let ok_shape = if eps == 1 {
                form.is_symmetric()
            } else {
                form.is_alternating()
            };
            if !ok_shape || !form.is_nondegenerate() || !form.adjoint_defect(&x).is_zero() {
                return Err(Error::Internal(format!(
                    "block model for {label} is inconsistent"
                )));
            }
            let c = random_isometry(&form, eps, &mut r);
            if &(&c.transpose() * &form.gram) * &c != form.gram {
                return Err(Error::Internal(
                    "random conjugator is not an isometry".into(),
                ));
            }
            let cinv = c.inverse().expect("isometry");
            (&(&c * &x) * &cinv, Some(form))
        }
        _ => return Err(Error::Unsupported("matrix models", lt)),
    };
    if jordan_type(&x)? != p {
        return Err(Error::Internal(format!(
            "representative of {label} has the wrong Jordan type"
        )));
    }
    Ok(NilpotentRep {
        lie_type: lt,
        label: label.clone(),
        x,
        form,
    })
}

fn rational_sqrt(v: &Q) -> Option<Q> {
    if v.is_negative() {
        return None;
    }
    let (n, d) = (v.numer(), v.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Q::new(sn, sd))
}

fn normalize(v: Vec<Q>) -> Vec<Q> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .cloned()
        .expect("nonzero vector");
    v.into_iter().map(|x| x / &lead).collect()
}

fn outer(col: &[Q], row: &[Q]) -> Matrix {
    let mut m = Matrix::zeros(col.len(), row.len());
    for (i, a) in col.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            m[(i, j)] = a * b;
        }
    }
    m
}

/// Split `x² = y₁ + y₂` along the two isotropic lines of the form
/// `⟨x²v, x²w⟩ = (v, x²w)` on `im x²`; `y_i` is `x²` followed by the
/// projection onto the `i`-th line along the other. Lines are normalized
/// (first nonzero coordinate 1) and ordered lexicographically.
pub fn x2_decomposition(x: &Matrix, form: &BilinearForm) -> Result<(Matrix, Matrix)> {
    if !form.adjoint_defect(x).is_zero() {
        return Err(Error::Precondition("x is not anti-self-adjoint".into()));
    }
    let x2 = x * x;
    if !(&x2 * x).is_zero() || x2.rank() != 2 {
        return Err(Error::Precondition("need x³ = 0 and rank(x²) = 2".into()));
    }
    let cols = x2.pivot_columns();
    let n = x.rows();
    let u: Vec<Vec<Q>> = cols.iter().map(|&c| x2.column(c)).collect();
    // ⟨u_a, u_b⟩ = (e_{c_a}, u_b) = (J u_b)_{c_a}.
    let b = |a: usize, bb: usize| -> Q {
        (0..n)
            .map(|k| &form.gram[(cols[a], k)] * &u[bb][k])
            .fold(Q::zero(), |s, v| s + v)
    };
    let (b00, b01, b11) = (b(0, 0), b(0, 1), b(1, 1));
    if b01 != b(1, 0) {
        return Err(Error::Internal("induced form is not symmetric".into()));
    }
    if &b00 * &b11 == &b01 * &b01 {
        return Err(Error::Internal("induced form is degenerate".into()));
    }
    // Isotropic (p, q): b00 p² + 2 b01 p q + b11 q² = 0.
    let coords: Vec<(Q, Q)> = if b00.is_zero() {
        vec![(Q::one(), Q::zero()), (-b11.clone(), q(2) * &b01)]
    } else {
        let disc = &b01 * &b01 - &b00 * &b11;
        let root = rational_sqrt(&disc).ok_or_else(|| {
            Error::Precondition("isotropic lines of im x² are not rational".into())
        })?;
        vec![
            ((-&b01 + &root) / &b00, Q::one()),
            ((-&b01 - &root) / &b00, Q::one()),
        ]
    };
    let mut lines: Vec<Vec<Q>> = coords
        .into_iter()
        .map(|(p, qq)| normalize((0..n).map(|k| &p * &u[0][k] + &qq * &u[1][k]).collect()))
        .collect();
    lines.sort();
    // Coordinates in the basis (ℓ₁, ℓ₂) via left inverse on two independent rows.
    let basis = {
        let mut m = Matrix::zeros(n, 2);
        for k in 0..n {
            m[(k, 0)] = lines[0][k].clone();
            m[(k, 1)] = lines[1][k].clone();
        }
        m
    };
    let rows = basis.transpose().pivot_columns();
    let mut sub = Matrix::zeros(2, 2);
    for (a, &r) in rows.iter().enumerate() {
        sub[(a, 0)] = basis[(r, 0)].clone();
        sub[(a, 1)] = basis[(r, 1)].clone();
    }
    let sub_inv = sub
        .inverse()
        .ok_or_else(|| Error::Internal("isotropic lines coincide".into()))?;
    let mut pick = Matrix::zeros(2, n);
    for (a, &r) in rows.iter().enumerate() {
        pick[(a, r)] = Q::one();
    }
    let coef = &(&sub_inv * &pick) * &x2;
    let row = |a: usize| -> Vec<Q> { (0..n).map(|k| coef[(a, k)].clone()).collect() };
    let y1 = outer(&lines[0], &row(0));
    let y2 = outer(&lines[1], &row(1));
    if &y1 + &y2 != x2 {
        return Err(Error::Internal(
            "x² is not the sum of its projections".into(),
        ));
    }
    Ok((y1, y2))
}

/// The explicit `SL_2` element `[[1+u, u²], [u, 1−u+u²]]`, `u = t⁻¹`.
pub fn minnotsmall_element() -> LaurentMatrix {
    LaurentMatrix::new(vec![
        Matrix::identity(2),
        Matrix::from_i64(&[vec![1, 0], vec![1, -1]]),
        Matrix::from_i64(&[vec![0, 1], vec![0, 1]]),
    ])
    .expect("well formed")
}

/// A seeded element `P(1 + U₁t⁻¹ + U₂t⁻²)P⁻¹` of `SL_n` with strictly upper
/// triangular `U_i` and unimodular `P`.
pub fn random_unipotent_element(n: usize, seed: u64) -> LaurentMatrix {
    let mut r = rng(seed);
    let mut coeffs = vec![Matrix::identity(n)];
    for _ in 0..2 {
        let mut u = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                u[(i, j)] = q(r.gen_range(-1..=1));
            }
        }
        coeffs.push(u);
    }
    let p = random_unimodular(n, &mut r);
    let pinv = p.inverse().expect("unimodular");
    LaurentMatrix::new(coeffs)
        .expect("well formed")
        .conjugate_by(&p, &pinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn label(t: &str, s: &str) -> OrbitLabel {
        OrbitLabel::parse(lt(t), s).unwrap()
    }

    #[test]
    fn jordan_types() {
        assert_eq!(
            jordan_type(&Matrix::zeros(4, 4)).unwrap().to_string(),
            "[1^4]"
        );
        let j3 = jordan_blocks(&"[3]".parse().unwrap());
        assert_eq!(jordan_type(&j3).unwrap().to_string(), "[3]");
        assert!(jordan_type(&Matrix::identity(2)).is_err());
    }

    #[test]
    fn representatives() {
        let r = build_nilpotent(lt("A3"), &label("A3", "[2,1^2]"), 7).unwrap();
        assert_eq!(jordan_type(&r.x).unwrap().to_string(), "[2,1^2]");
        let r = build_nilpotent(lt("B4"), &label("B4", "[3^2,1^3]"), 3).unwrap();
        let f = r.form.as_ref().unwrap();
        assert_eq!(r.x.rows(), 9);
        assert!(f.adjoint_defect(&r.x).is_zero());
        assert_eq!((&r.x * &r.x).rank(), 2);
        assert!(r.x.pow(3).is_zero());
        let r = build_nilpotent(lt("C3"), &label("C3", "[1^6]"), 1).unwrap();
        assert!(r.x.is_zero());
    }

    #[test]
    fn coweight_examples() {
        let x = jordan_blocks(&"[2,1,1]".parse().unwrap());
        let g = LaurentMatrix::one_plus(&x).unwrap();
        assert_eq!(coweight_of_element(&g).unwrap().coords, vec![1, 0, 0, -1]);
        assert!(coweight_of_element(&LaurentMatrix::identity(3))
            .unwrap()
            .is_zero());
        let m = minnotsmall_element();
        assert!(m.det_is_one());
        let c = coweight_of_element(&m).unwrap();
        assert_eq!(c.coords, vec![2, -2]);
        assert_eq!(c.fund().unwrap(), vec![4]);
    }

    #[test]
    fn minnotsmall_pi_dagger() {
        let p = pi_dagger(&minnotsmall_element());
        assert_eq!(p, Matrix::from_i64(&[vec![1, 0], vec![1, -1]]));
        assert!(!p.is_nilpotent());
        assert_eq!(&p * &p, Matrix::identity(2));
    }

    #[test]
    fn iota_basics() {
        assert_eq!(
            iota(&LaurentMatrix::identity(3)).unwrap(),
            LaurentMatrix::identity(3)
        );
        let x = jordan_blocks(&"[2,2]".parse().unwrap());
        let g = LaurentMatrix::one_plus(&x).unwrap();
        assert_eq!(iota(&g).unwrap(), g);
        let x = jordan_blocks(&"[4]".parse().unwrap());
        let g = LaurentMatrix::one_plus(&x).unwrap();
        assert!(matches!(iota_with_bound(&g, 2), Err(Error::Truncation(2))));
        assert_eq!(pi_dagger(&LaurentMatrix::identity(2)), Matrix::zeros(2, 2));
    }

    #[test]
    fn x2_split() {
        let r = build_nilpotent(lt("B4"), &label("B4", "[3^2,1^3]"), 11).unwrap();
        let f = r.form.unwrap();
        let (y1, y2) = x2_decomposition(&r.x, &f).unwrap();
        assert_eq!((y1.rank(), y2.rank()), (1, 1));
        assert!((&y1 * &y2).is_zero() && (&y2 * &y1).is_zero());
        assert!((&r.x * &y1).is_zero() && (&y1 * &r.x).is_zero());
        assert_eq!(f.adjoint(&y1), y2);
        let g1 = LaurentMatrix::new(vec![Matrix::identity(9), r.x.clone(), y1]).unwrap();
        let g2 = LaurentMatrix::new(vec![Matrix::identity(9), r.x.clone(), y2]).unwrap();
        assert!(f.preserved_by(&g1) && f.preserved_by(&g2));
        assert_eq!(iota(&g1).unwrap(), g2);
        let r = build_nilpotent(lt("B4"), &label("B4", "[3,2^2,1^2]"), 1).unwrap();
        assert!(x2_decomposition(&r.x, r.form.as_ref().unwrap()).is_err());
    }
}
