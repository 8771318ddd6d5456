//! Verification suites: independent cases that each recompute something and
//! compare it with an expected value, so callers can run them in any order
//! or in parallel.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrixmodel::{
    build_nilpotent, coweight_of_element, iota, jordan_type, minnotsmall_element, pi_dagger,
    random_unipotent_element, x2_decomposition, LaurentMatrix, Matrix,
};
use crate::multiplicity::zero_weight_dim;
use crate::orbits::{closure_leq, OrbitLabel, Partition};
use crate::paperdata;
use crate::reeder::{
    build_embedding, check_pieces, enumerate_small, nsm_orbit_list, reeder_piece,
    restrict_orbit_members, stalk_cases, tau1, tau1_inverse, tau2_inverse, verify_stalk_identity,
    EmbeddingMode,
};
use crate::rootsystem::{format_tuple, minus_w0, Basis, Coweight, Family, LieType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Tables,
    Poset,
    Stalk,
    Matrix,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Tables, Suite::Poset, Suite::Stalk, Suite::Matrix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Tables => "tables",
            Suite::Poset => "poset",
            Suite::Stalk => "stalk",
            Suite::Matrix => "matrix",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::Error => "error",
        })
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub computed: String,
    pub expected: String,
    /// Table the expected value was transcribed from, if any.
    pub table: Option<String>,
}

impl Check {
    fn compare(
        suite: Suite,
        name: impl Into<String>,
        computed: impl fmt::Display,
        expected: impl fmt::Display,
    ) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        let status = if computed == expected {
            Status::Ok
        } else {
            Status::Mismatch
        };
        Check {
            suite,
            name: name.into(),
            status,
            computed,
            expected,
            table: None,
        }
    }

    fn holds(suite: Suite, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Check {
            suite,
            name: name.into(),
            status: if ok { Status::Ok } else { Status::Mismatch },
            computed: if ok { "true".into() } else { detail },
            expected: "true".into(),
            table: None,
        }
    }

    fn error(suite: Suite, name: impl Into<String>, e: &Error) -> Self {
        Check {
            suite,
            name: name.into(),
            status: Status::Error,
            computed: e.to_string(),
            expected: String::new(),
            table: None,
        }
    }

    fn with_table(mut self, table: &str) -> Self {
        self.table = Some(table.to_string());
        self
    }

    pub fn ok(&self) -> bool {
        self.status == Status::Ok
    }
}

/// One unit of verification work.
#[derive(Clone, Debug)]
pub enum Case {
    TableInvariants,
    Restriction(LieType),
    HookLength(LieType),
    DrawnPoset(LieType),
    Pieces(LieType),
    Stalk(LieType, Coweight, OrbitLabel),
    AOrbits(LieType, Partition, u64),
    FormModel(LieType, OrbitLabel, u64),
    Iota(u64),
    MinNotSmall,
}

pub const A_ORBIT_SEEDS: u64 = 5;
pub const FORM_MODEL_SEEDS: u64 = 3;
pub const IOTA_CASES: u64 = 100;
pub const PIECE_RANK_LIMIT: usize = 8;

fn lt(family: Family, rank: usize) -> LieType {
    LieType::new(family, rank).expect("valid type")
}

/// Every case of a suite, in a fixed order.
pub fn cases(suite: Suite) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    match suite {
        Suite::Tables => {
            out.push(Case::TableInvariants);
            for g in paperdata::store()?.calc_types() {
                out.push(Case::Restriction(g));
            }
            for n in 1..=7 {
                out.push(Case::HookLength(lt(Family::A, n)));
            }
        }
        Suite::Poset => {
            for p in &paperdata::store()?.posets {
                out.push(Case::DrawnPoset(p.lie_type));
            }
            for (family, lo) in [
                (Family::A, 1),
                (Family::B, 2),
                (Family::C, 2),
                (Family::D, 4),
            ] {
                for r in lo..=PIECE_RANK_LIMIT {
                    out.push(Case::Pieces(lt(family, r)));
                }
            }
            for (family, r) in [
                (Family::E, 6),
                (Family::E, 7),
                (Family::E, 8),
                (Family::F, 4),
                (Family::G, 2),
            ] {
                out.push(Case::Pieces(lt(family, r)));
            }
        }
        Suite::Stalk => {
            for (g, top, orbit) in stalk_cases()? {
                out.push(Case::Stalk(g, top, orbit));
            }
        }
        Suite::Matrix => {
            for n in 2..=6 {
                for p in Partition::all(n) {
                    for seed in 0..A_ORBIT_SEEDS {
                        out.push(Case::AOrbits(lt(Family::A, n - 1), p.clone(), seed));
                    }
                }
            }
            for t in ["B3", "B4", "C3", "C4", "D4"] {
                let t: LieType = t.parse()?;
                for label in nsm_orbit_list(t)? {
                    for seed in 0..FORM_MODEL_SEEDS {
                        out.push(Case::FormModel(t, label.clone(), seed));
                    }
                }
            }
            for seed in 0..IOTA_CASES {
                out.push(Case::Iota(seed));
            }
            out.push(Case::MinNotSmall);
        }
    }
    Ok(out)
}

impl Case {
    pub fn suite(&self) -> Suite {
        match self {
            Case::TableInvariants | Case::Restriction(_) | Case::HookLength(_) => Suite::Tables,
            Case::DrawnPoset(_) | Case::Pieces(_) => Suite::Poset,
            Case::Stalk(..) => Suite::Stalk,
            _ => Suite::Matrix,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Case::TableInvariants => "table invariants".into(),
            Case::Restriction(g) => format!("restriction {g}"),
            Case::HookLength(t) => format!("hook length {t}"),
            Case::DrawnPoset(t) => format!("drawn poset {t}"),
            Case::Pieces(t) => format!("pieces {t}"),
            Case::Stalk(g, top, o) => format!("stalk {g} {top} {o}"),
            Case::AOrbits(t, p, s) => format!("A orbits {t} {p} seed {s}"),
            Case::FormModel(t, o, s) => format!("form model {t} {o} seed {s}"),
            Case::Iota(s) => format!("iota seed {s}"),
            Case::MinNotSmall => "minimal non-small element".into(),
        }
    }

    /// Run the case; errors become a single error record.
    pub fn run(&self) -> Vec<Check> {
        let suite = self.suite();
        match self.run_inner() {
            Ok(v) => v,
            Err(e) => vec![Check::error(suite, self.label(), &e)],
        }
    }

    fn run_inner(&self) -> Result<Vec<Check>> {
        match self {
            Case::TableInvariants => table_invariants(),
            Case::Restriction(g) => restriction(*g),
            Case::HookLength(t) => hook_lengths(*t),
            Case::DrawnPoset(t) => drawn_poset(*t),
            Case::Pieces(t) => pieces(*t),
            Case::Stalk(g, top, o) => stalk(*g, top, o),
            Case::AOrbits(t, p, s) => a_orbits(*t, p, *s),
            Case::FormModel(t, o, s) => form_model(*t, o, *s),
            Case::Iota(s) => iota_case(*s),
            Case::MinNotSmall => min_not_small(),
        }
    }
}

/// Run every case of the given suites sequentially, in canonical order.
pub fn run_suites(suites: &[Suite]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for &s in suites {
        for c in cases(s)? {
            out.extend(c.run());
        }
    }
    Ok(out)
}

fn table_invariants() -> Result<Vec<Check>> {
    Ok(paperdata::store()?
        .checks()?
        .into_iter()
        .map(|c| Check::holds(Suite::Tables, c.name, c.ok, c.detail).with_table("tables"))
        .collect())
}

fn fund_set(v: impl IntoIterator<Item = Coweight>) -> Result<BTreeSet<Vec<i64>>> {
    v.into_iter().map(|c| c.fund()).collect()
}

fn show_set(s: &BTreeSet<Vec<i64>>) -> String {
    let items: Vec<String> = s.iter().map(|c| format_tuple(c)).collect();
    format!("{{{}}}", items.join(", "))
}

/// The partner-group coweights listed against each `λ` come out of the
/// restriction (or folding) of `λ`.
fn restriction(g: LieType) -> Result<Vec<Check>> {
    let store = paperdata::store()?;
    let emb = build_embedding(g)?;
    let mut lams: Vec<Coweight> = Vec::new();
    for r in store.calc_for(g) {
        if !lams.contains(&r.lam) {
            lams.push(r.lam.clone());
        }
    }
    let mut out = Vec::new();
    for lam in lams {
        let expected = fund_set(
            store
                .calc_for(g)
                .filter(|r| r.lam == lam)
                .map(|r| r.mu.clone()),
        )?;
        let computed = match emb.mode {
            EmbeddingMode::Subgroup => fund_set(restrict_orbit_members(&emb, &lam)?)?,
            EmbeddingMode::Folding => fund_set([emb.fold(&lam)?])?,
        };
        let src = store
            .calc_for(g)
            .find(|r| r.lam == lam)
            .map(|r| r.src.table.clone());
        let mut c = Check::compare(
            Suite::Tables,
            format!("restriction {g} {lam}"),
            show_set(&computed),
            show_set(&expected),
        );
        c.table = src;
        out.push(c);
    }
    Ok(out)
}

/// Standard Young tableaux count of a partition.
pub fn hook_length_dimension(p: &Partition) -> BigUint {
    let n = p.total();
    let dual = p.dual();
    let mut num = BigUint::one();
    for k in 2..=n {
        num *= k;
    }
    let mut den = BigUint::one();
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = dual.parts()[j] as usize - i - 1;
            den *= arm + leg + 1;
        }
    }
    num / den
}

fn hook_lengths(t: LieType) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for lam in enumerate_small(t)?.elements {
        let Some(p) = tau1(&lam)? else { continue };
        let zw = zero_weight_dim(&lam)?.dim;
        out.push(Check::compare(
            Suite::Tables,
            format!("zero weight {t} {lam} vs shape {p}"),
            zw,
            hook_length_dimension(&p),
        ));
    }
    Ok(out)
}

fn drawn_poset(t: LieType) -> Result<Vec<Check>> {
    let store = paperdata::store()?;
    let drawn = store
        .poset(t)
        .ok_or_else(|| Error::MissingRecord(format!("poset for {t}")))?;
    let poset = enumerate_small(t)?;
    let table = "poset".to_string();
    let mut out = Vec::new();
    let computed = fund_set(poset.elements.iter().cloned())?;
    let expected = drawn.coweights()?;
    let mut c = Check::compare(
        Suite::Poset,
        format!("small coweights {t}"),
        show_set(&computed),
        show_set(&expected),
    );
    c.table = Some(table.clone());
    out.push(c);

    if !drawn.cw_edges.is_empty() {
        let mut computed = BTreeSet::new();
        for &(hi, lo) in &poset.hasse_edges {
            computed.insert((poset.elements[hi].fund()?, poset.elements[lo].fund()?));
        }
        let mut expected = BTreeSet::new();
        for (hi, lo) in &drawn.cw_edges {
            expected.insert((hi.fund()?, lo.fund()?));
        }
        let show = |s: &BTreeSet<(Vec<i64>, Vec<i64>)>| {
            let v: Vec<String> = s
                .iter()
                .map(|(a, b)| format!("{}>{}", format_tuple(a), format_tuple(b)))
                .collect();
            v.join(" ")
        };
        let mut c = Check::compare(
            Suite::Poset,
            format!("covering relations {t}"),
            show(&computed),
            show(&expected),
        );
        c.table = Some(table.clone());
        out.push(c);
    }

    for piece in &drawn.pieces {
        for src in &piece.sources {
            let computed = reeder_piece(src)?.orbits;
            let a: BTreeSet<String> = computed.iter().map(|o| o.to_string()).collect();
            let b: BTreeSet<String> = piece.orbits.iter().map(|o| o.to_string()).collect();
            let mut c = Check::compare(
                Suite::Poset,
                format!("piece {t} {src}"),
                a.into_iter().collect::<Vec<_>>().join(" "),
                b.into_iter().collect::<Vec<_>>().join(" "),
            );
            c.table = Some(piece.src.table.clone());
            out.push(c);
        }
    }
    if t.is_classical() {
        for (hi, lo) in &drawn.orbit_edges {
            let ok = closure_leq(lo, hi)? && !closure_leq(hi, lo)?;
            out.push(
                Check::holds(
                    Suite::Poset,
                    format!("orbit closure {t} {lo} < {hi}"),
                    ok,
                    "not below in the closure order",
                )
                .with_table(&table),
            );
        }
    }
    Ok(out)
}

fn pieces(t: LieType) -> Result<Vec<Check>> {
    let r = check_pieces(t)?;
    Ok(vec![Check::holds(
        Suite::Poset,
        format!(
            "piece structure {t} ({} pieces, {} double)",
            r.pieces, r.doubles
        ),
        r.ok(),
        r.failures.join("; "),
    )])
}

fn stalk(g: LieType, top: &Coweight, orbit: &OrbitLabel) -> Result<Vec<Check>> {
    Ok(verify_stalk_identity(g, top, orbit)?
        .into_iter()
        .map(|s| {
            Check::compare(
                Suite::Stalk,
                format!("stalk {g} V_{top} at {orbit} via {}", s.h_orbit),
                s.rhs,
                s.lhs,
            )
            .with_table("Estalk")
        })
        .collect())
}

fn a_orbits(t: LieType, p: &Partition, seed: u64) -> Result<Vec<Check>> {
    let label = OrbitLabel::classical(t, p.clone(), None)?;
    let x = build_nilpotent(t, &label, seed)?.x;
    let n = x.rows();
    let g = LaurentMatrix::one_plus(&x)?;
    let h = LaurentMatrix::one_plus(&(-&x))?.inverse_with_bound(n)?;
    let name = format!("{t} {p} seed {seed}");
    Ok(vec![
        Check::compare(
            Suite::Matrix,
            format!("jordan type {name}"),
            jordan_type(&x)?,
            p,
        ),
        Check::compare(
            Suite::Matrix,
            format!("coweight of 1+x/t {name}"),
            coweight_of_element(&g)?,
            tau1_inverse(t, p)?,
        ),
        Check::compare(
            Suite::Matrix,
            format!("coweight of (1-x/t)^-1 {name}"),
            coweight_of_element(&h)?,
            tau2_inverse(t, p)?,
        ),
    ])
}

/// The SL coweight expected for `exp(x/t)` with `x` of type `[3, 2^{2j}, 1^k]`.
fn exp_coweight(p: &Partition) -> Option<Vec<i64>> {
    let parts = p.parts();
    if parts.first() != Some(&3) || p.multiplicity(3) != 1 {
        return None;
    }
    let twos = p.multiplicity(2);
    let ones = p.multiplicity(1);
    let mut v = vec![2];
    v.extend(std::iter::repeat_n(1, twos));
    v.extend(std::iter::repeat_n(0, ones + 1));
    v.extend(std::iter::repeat_n(-1, twos));
    v.push(-2);
    Some(v)
}

fn form_model(t: LieType, label: &OrbitLabel, seed: u64) -> Result<Vec<Check>> {
    let rep = build_nilpotent(t, label, seed)?;
    let form = rep
        .form
        .ok_or_else(|| Error::Internal("form model without a form".into()))?;
    let x = &rep.x;
    let name = format!("{t} {label} seed {seed}");
    let part = label
        .partition()
        .ok_or_else(|| Error::Internal("classical label without a partition".into()))?;
    let mut out = vec![
        Check::compare(
            Suite::Matrix,
            format!("jordan type {name}"),
            jordan_type(x)?,
            part,
        ),
        Check::holds(
            Suite::Matrix,
            format!("anti-self-adjoint {name}"),
            form.adjoint_defect(x).is_zero(),
            "x^T J + J x != 0",
        ),
    ];
    let x2 = x * x;
    let r2 = x2.rank();
    let x3_zero = (&x2 * x).is_zero();
    if r2 == 0 {
        let g = LaurentMatrix::one_plus(x)?;
        out.push(Check::holds(
            Suite::Matrix,
            format!("1+x/t preserves the form {name}"),
            form.preserved_by(&g),
            "g^T J g != J",
        ));
        out.push(Check::holds(
            Suite::Matrix,
            format!("iota fixes 1+x/t {name}"),
            iota(&g)? == g,
            "iota(g) != g",
        ));
    } else if r2 == 1 && x3_zero {
        let g = LaurentMatrix::exp_nilpotent(x)?;
        out.push(Check::holds(
            Suite::Matrix,
            format!("exp(x/t) preserves the form {name}"),
            form.preserved_by(&g),
            "g^T J g != J",
        ));
        out.push(Check::holds(
            Suite::Matrix,
            format!("iota fixes exp(x/t) {name}"),
            iota(&g)? == g,
            "iota(g) != g",
        ));
        if let Some(expected) = exp_coweight(part) {
            let ambient = LieType::new(Family::A, x.rows() - 1)?;
            out.push(Check::compare(
                Suite::Matrix,
                format!("coweight of exp(x/t) {name}"),
                coweight_of_element(&g)?,
                Coweight::classical(ambient, expected)?,
            ));
        }
    } else if r2 == 2 && x3_zero {
        let (y1, y2) = x2_decomposition(x, &form)?;
        let n = x.rows();
        let adjoint = form.adjoint(&y1) == y2;
        let orth = (&y1 * &y2).is_zero() && (&y2 * &y1).is_zero();
        let killed = [&y1, &y2]
            .iter()
            .all(|y| (x * *y).is_zero() && (*y * x).is_zero());
        out.push(Check::holds(
            Suite::Matrix,
            format!("x^2 splitting {name}"),
            adjoint && orth && killed && y1.rank() == 1 && y2.rank() == 1,
            format!("adjoint {adjoint}, y1y2 = y2y1 = 0 {orth}, x y = y x = 0 {killed}"),
        ));
        let g1 = LaurentMatrix::new(vec![Matrix::identity(n), x.clone(), y1])?;
        let g2 = LaurentMatrix::new(vec![Matrix::identity(n), x.clone(), y2])?;
        out.push(Check::holds(
            Suite::Matrix,
            format!("both lifts preserve the form {name}"),
            form.preserved_by(&g1) && form.preserved_by(&g2),
            "g^T J g != J",
        ));
        out.push(Check::holds(
            Suite::Matrix,
            format!("iota swaps the lifts {name}"),
            iota(&g1)? == g2,
            "iota(g1) != g2",
        ));
    } else {
        out.push(Check::holds(
            Suite::Matrix,
            format!("small orbit shape {name}"),
            false,
            format!("rank(x^2) = {r2}, x^3 = 0 {x3_zero}"),
        ));
    }
    Ok(out)
}

fn iota_case(seed: u64) -> Result<Vec<Check>> {
    let n = 2 + (seed % 3) as usize;
    let g = random_unipotent_element(n, seed);
    let ig = iota(&g)?;
    let c = coweight_of_element(&g)?;
    let name = format!("seed {seed} (n = {n})");
    Ok(vec![
        Check::holds(
            Suite::Matrix,
            format!("pi dagger of iota {name}"),
            pi_dagger(&ig) == pi_dagger(&g),
            "pi(iota g) != pi(g)",
        ),
        Check::compare(
            Suite::Matrix,
            format!("coweight of iota {name}"),
            coweight_of_element(&ig)?,
            minus_w0(&c)?.to(Basis::Classical)?,
        ),
    ])
}

fn min_not_small() -> Result<Vec<Check>> {
    let g = minnotsmall_element();
    let c = coweight_of_element(&g)?;
    let p = pi_dagger(&g);
    Ok(vec![
        Check::compare(
            Suite::Matrix,
            "coweight of the explicit SL2 element",
            format_tuple(&c.fund()?),
            "(4)",
        ),
        Check::holds(
            Suite::Matrix,
            "pi dagger of the explicit SL2 element is not nilpotent",
            !p.is_nilpotent(),
            "nilpotent",
        ),
        Check::holds(
            Suite::Matrix,
            "pi dagger of the explicit SL2 element is semisimple",
            &p * &p == Matrix::identity(2),
            "pi^2 != 1",
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hook_lengths_small() {
        let d = |s: &str| hook_length_dimension(&s.parse().unwrap());
        assert_eq!(d("[3,2]"), 5u32.into());
        assert_eq!(d("[2,2]"), 2u32.into());
        assert_eq!(d("[1^5]"), 1u32.into());
        assert_eq!(d("[4,2,1]"), 35u32.into());
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn minimal_case() {
        assert!(Case::MinNotSmall.run().iter().all(Check::ok));
    }
}
