//! Embedded transcriptions of the published tables, with load-time checks
//! against independent recomputation.
//!
//! The file format is documented at the top of `data/tables.txt`. Setting
//! `REEDERKIT_DATA` to a path replaces the embedded copy.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::multiplicity::{weight_multiplicity, zero_weight_dim};
use crate::orbits::OrbitLabel;
use crate::rootsystem::{
    dominance_leq, pairing_two_rho, parse_coweight, Coweight, Family, LieType,
};

pub const EMBEDDED_TABLES: &str = include_str!("../data/tables.txt");
pub const DATA_ENV: &str = "REEDERKIT_DATA";

const SECTIONS: &[&str] = &[
    "E6CALC", "E7CALC", "E8CALC", "FGCALC", "ESTALK", "EXCZW", "EXCPO", "CLASSPO",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheaf {
    Ic,
    IcSigma,
}

impl fmt::Display for Sheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sheaf::Ic => "IC",
            Sheaf::IcSigma => "IC-sigma",
        })
    }
}

impl FromStr for Sheaf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "IC" => Ok(Sheaf::Ic),
            "IC-sigma" => Ok(Sheaf::IcSigma),
            _ => Err(Error::Parse(format!("unknown sheaf {s:?}"))),
        }
    }
}

/// Table of origin and line number of a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub table: String,
    pub line: usize,
}

/// The group `H` paired with an exceptional `G`: a subgroup of maximal rank
/// for `E`, a group containing `G` as fixed points of a diagram automorphism
/// for `F4` and `G2`.
pub fn partner_type(g: LieType) -> Option<LieType> {
    let (family, rank) = match (g.family, g.rank) {
        (Family::E, 6) => (Family::A, 5),
        (Family::E, 7) => (Family::D, 6),
        (Family::E, 8) => (Family::D, 8),
        (Family::F, 4) => (Family::E, 6),
        (Family::G, 2) => (Family::D, 4),
        _ => return None,
    };
    LieType::new(family, rank).ok()
}

#[derive(Clone, Debug)]
pub struct CalcRecord {
    pub g_type: LieType,
    pub lam: Coweight,
    pub dim: u64,
    pub h_type: LieType,
    pub mu: Coweight,
    pub h_orbit: OrbitLabel,
    pub g_orbit: OrbitLabel,
    pub g_dim: u64,
    pub src: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationRecord {
    pub g_type: LieType,
    pub h_orbit: OrbitLabel,
    pub g_orbit: OrbitLabel,
    pub g_dim: u64,
}

#[derive(Clone, Debug)]
pub struct MultRecord {
    pub g_type: LieType,
    pub top: Coweight,
    pub mu: Coweight,
    pub value: u64,
    pub src: Provenance,
}

#[derive(Clone, Debug)]
pub struct StalkPolynomial {
    pub g_type: LieType,
    pub orbit: OrbitLabel,
    pub sheaf: Sheaf,
    /// `(exponent, coefficient)`, exponents strictly decreasing.
    pub terms: Vec<(u32, u64)>,
    pub src: Provenance,
}

impl StalkPolynomial {
    pub fn at_one(&self) -> u64 {
        self.terms.iter().map(|&(_, c)| c).sum()
    }
}

/// Parse `2q^35+q^31+3`, or `-` for the zero polynomial.
pub fn parse_polynomial(s: &str) -> Result<Vec<(u32, u64)>> {
    if s == "-" {
        return Ok(Vec::new());
    }
    let mut terms: Vec<(u32, u64)> = Vec::new();
    for term in s.split('+') {
        let bad = || Error::Parse(format!("bad term {term:?} in polynomial {s:?}"));
        let (coef, rest) = match term.find('q') {
            Some(i) => (&term[..i], Some(&term[i + 1..])),
            None => (term, None),
        };
        let coef: u64 = if coef.is_empty() && rest.is_some() {
            1
        } else {
            coef.parse().map_err(|_| bad())?
        };
        let exp: u32 = match rest {
            None => 0,
            Some("") => 1,
            Some(r) => r
                .strip_prefix('^')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?,
        };
        if coef == 0 {
            return Err(bad());
        }
        if let Some(&(prev, _)) = terms.last() {
            if exp >= prev {
                return Err(Error::Parse(format!(
                    "exponents not strictly decreasing in {s:?}"
                )));
            }
        }
        terms.push((exp, coef));
    }
    Ok(terms)
}

#[derive(Clone, Debug)]
pub struct ZeroWeightDecomposition {
    pub lam: Coweight,
    /// `(label, dimension)`; the label is kept exactly as printed.
    pub irreps: Vec<(String, u64)>,
    pub src: Provenance,
}

impl ZeroWeightDecomposition {
    pub fn total(&self) -> u64 {
        self.irreps.iter().map(|(_, d)| d).sum()
    }
}

/// Dimension of `phi(d,e)`, `phi''(d,e)` and similar labels.
fn irrep_dimension(label: &str) -> Result<u64> {
    let open = label
        .find('(')
        .ok_or_else(|| Error::Parse(format!("bad irrep label {label:?}")))?;
    let inner = label[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| Error::Parse(format!("bad irrep label {label:?}")))?;
    let (d, _) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad irrep label {label:?}")))?;
    d.parse()
        .map_err(|_| Error::Parse(format!("bad irrep dimension in {label:?}")))
}

/// A Reeder piece as drawn: its source coweights and its orbits, open first.
#[derive(Clone, Debug)]
pub struct PieceRecord {
    pub sources: Vec<Coweight>,
    pub orbits: Vec<OrbitLabel>,
    pub src: Provenance,
}

/// A drawn poset: small coweights with their covering relations, and the
/// orbits of the small nilpotent cone with the drawn closure edges.
#[derive(Clone, Debug)]
pub struct PosetTable {
    pub lie_type: LieType,
    pub pieces: Vec<PieceRecord>,
    pub cw_edges: Vec<(Coweight, Coweight)>,
    pub orbit_edges: Vec<(OrbitLabel, OrbitLabel)>,
}

impl PosetTable {
    fn new(lie_type: LieType) -> Self {
        PosetTable {
            lie_type,
            pieces: Vec::new(),
            cw_edges: Vec::new(),
            orbit_edges: Vec::new(),
        }
    }

    /// All coweights appearing as piece sources, in fundamental coordinates.
    pub fn coweights(&self) -> Result<BTreeSet<Vec<i64>>> {
        let mut out = BTreeSet::new();
        for p in &self.pieces {
            for s in &p.sources {
                out.insert(s.fund()?);
            }
        }
        Ok(out)
    }

    pub fn orbits(&self) -> BTreeSet<OrbitLabel> {
        self.pieces
            .iter()
            .flat_map(|p| p.orbits.iter().cloned())
            .collect()
    }
}

/// Outcome of one load-time invariant.
#[derive(Clone, Debug)]
pub struct TableCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct DataStore {
    pub calc: Vec<CalcRecord>,
    pub mults: Vec<MultRecord>,
    pub stalks: Vec<StalkPolynomial>,
    pub zero_weights: Vec<ZeroWeightDecomposition>,
    pub posets: Vec<PosetTable>,
    orbit_dims: HashMap<OrbitLabel, u64>,
}

struct Fields {
    line: usize,
    map: BTreeMap<String, String>,
}

impl Fields {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Data {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn take(&mut self, key: &str) -> Result<String> {
        self.map
            .remove(key)
            .ok_or_else(|| self.err(format!("missing field {key:?}")))
    }

    fn take_opt(&mut self, key: &str) -> Option<String> {
        self.map.remove(key)
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(k) => Err(self.err(format!("unknown field {k:?}"))),
            None => Ok(()),
        }
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Data { .. } => e,
            other => self.err(other.to_string()),
        })
    }
}

fn section_group(section: &str) -> Option<LieType> {
    match section {
        "E6CALC" => "E6".parse().ok(),
        "E7CALC" => "E7".parse().ok(),
        "E8CALC" => "E8".parse().ok(),
        _ => None,
    }
}

fn allowed_kinds(section: &str) -> &'static [&'static str] {
    match section {
        "E6CALC" | "E7CALC" | "E8CALC" | "FGCALC" => &["calc"],
        "ESTALK" => &["mult", "stalk"],
        "EXCZW" => &["zw"],
        "EXCPO" => &["cw_edge", "orbit_edge", "piece"],
        "CLASSPO" => &["node", "cw_edge", "orbit_edge"],
        _ => &[],
    }
}

impl DataStore {
    /// Parse and validate; every invariant must hold.
    pub fn parse(text: &str) -> Result<Self> {
        let store = Self::parse_unchecked(text)?;
        for c in store.checks()? {
            if !c.ok {
                return Err(Error::Load(format!("{}: {}", c.name, c.detail)));
            }
        }
        Ok(store)
    }

    /// Parse without running the recomputation checks.
    pub fn parse_unchecked(text: &str) -> Result<Self> {
        let mut store = DataStore::default();
        let mut section: Option<String> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(name) = l.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
                if !SECTIONS.contains(&name) {
                    return Err(Error::Data {
                        line,
                        msg: format!("unknown section [{name}]"),
                    });
                }
                section = Some(name.to_string());
                continue;
            }
            let sec = section.clone().ok_or(Error::Data {
                line,
                msg: "record outside of any section".into(),
            })?;
            let mut tokens = l.split_whitespace();
            let kind = tokens.next().unwrap_or_default();
            if !allowed_kinds(&sec).contains(&kind) {
                return Err(Error::Data {
                    line,
                    msg: format!("record kind {kind:?} not allowed in [{sec}]"),
                });
            }
            let mut map = BTreeMap::new();
            for t in tokens {
                let (k, v) = t.split_once('=').ok_or(Error::Data {
                    line,
                    msg: format!("expected key=value, got {t:?}"),
                })?;
                if map.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(Error::Data {
                        line,
                        msg: format!("duplicate field {k:?}"),
                    });
                }
            }
            let mut f = Fields { line, map };
            store.add_record(&sec, kind, &mut f)?;
            f.finish()?;
        }
        Ok(store)
    }

    fn add_record(&mut self, section: &str, kind: &str, f: &mut Fields) -> Result<()> {
        let table = f.take("src")?;
        let src = Provenance {
            table,
            line: f.line,
        };
        let group = match (section_group(section), f.take_opt("group")) {
            (Some(g), None) => g,
            (Some(g), Some(given)) => {
                let given: LieType = f.wrap(given.parse())?;
                if given != g {
                    return Err(f.err(format!("group {given} in section [{section}]")));
                }
                g
            }
            (None, Some(given)) => f.wrap(given.parse())?,
            (None, None) => return Err(f.err("missing field \"group\"")),
        };
        match kind {
            "calc" => {
                let h_type = partner_type(group)
                    .ok_or_else(|| f.err(format!("no partner group for {group}")))?;
                let lam = f.take("lambda")?;
                let lam = f.wrap(parse_coweight(group, &lam))?;
                let dim = f.take("dim")?;
                let dim = f.wrap(
                    dim.parse()
                        .map_err(|_| Error::Parse(format!("bad dim {dim:?}"))),
                )?;
                let mu = f.take("mu")?;
                let mu = f.wrap(parse_coweight(h_type, &mu))?;
                let h_orbit = f.take("h_orbit")?;
                let h_orbit = f.wrap(OrbitLabel::parse(h_type, &h_orbit))?;
                let g_orbit = f.take("g_orbit")?;
                let g_orbit = f.wrap(OrbitLabel::parse(group, &g_orbit))?;
                let g_dim = f.take("g_dim")?;
                let g_dim = f.wrap(
                    g_dim
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad g_dim {g_dim:?}"))),
                )?;
                match self.orbit_dims.get(&g_orbit) {
                    Some(&d) if d != g_dim => {
                        return Err(
                            f.err(format!("{g_orbit} listed with dimensions {d} and {g_dim}"))
                        )
                    }
                    _ => {
                        self.orbit_dims.insert(g_orbit.clone(), g_dim);
                    }
                }
                self.calc.push(CalcRecord {
                    g_type: group,
                    lam,
                    dim,
                    h_type,
                    mu,
                    h_orbit,
                    g_orbit,
                    g_dim,
                    src,
                });
            }
            "mult" => {
                let top = f.take("top")?;
                let top = f.wrap(parse_coweight(group, &top))?;
                let mu = f.take("mu")?;
                let mu = f.wrap(parse_coweight(group, &mu))?;
                let value = f.take("value")?;
                let value = f.wrap(
                    value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad value {value:?}"))),
                )?;
                self.mults.push(MultRecord {
                    g_type: group,
                    top,
                    mu,
                    value,
                    src,
                });
            }
            "stalk" => {
                let orbit = f.take("orbit")?;
                let orbit = f.wrap(OrbitLabel::parse(group, &orbit))?;
                let sheaf = f.take("sheaf")?;
                let sheaf = f.wrap(sheaf.parse())?;
                let poly = f.take("poly")?;
                let terms = f.wrap(parse_polynomial(&poly))?;
                if self
                    .stalks
                    .iter()
                    .any(|s| s.orbit == orbit && s.sheaf == sheaf)
                {
                    return Err(f.err(format!("duplicate stalk record for {orbit} {sheaf}")));
                }
                self.stalks.push(StalkPolynomial {
                    g_type: group,
                    orbit,
                    sheaf,
                    terms,
                    src,
                });
            }
            "zw" => {
                let lam = f.take("lambda")?;
                let lam = f.wrap(parse_coweight(group, &lam))?;
                let irreps = f.take("irreps")?;
                let irreps = irreps
                    .split('/')
                    .map(|l| Ok((l.to_string(), irrep_dimension(l)?)))
                    .collect::<Result<Vec<_>>>();
                let irreps = f.wrap(irreps)?;
                self.zero_weights
                    .push(ZeroWeightDecomposition { lam, irreps, src });
            }
            "cw_edge" => {
                let hi = f.take("hi")?;
                let hi = f.wrap(parse_coweight(group, &hi))?;
                let lo = f.take("lo")?;
                let lo = f.wrap(parse_coweight(group, &lo))?;
                self.poset_mut(group).cw_edges.push((hi, lo));
            }
            "orbit_edge" => {
                let hi = f.take("hi")?;
                let hi = f.wrap(OrbitLabel::parse(group, &hi))?;
                let lo = f.take("lo")?;
                let lo = f.wrap(OrbitLabel::parse(group, &lo))?;
                self.poset_mut(group).orbit_edges.push((hi, lo));
            }
            "piece" | "node" => {
                let key = if kind == "piece" { "sources" } else { "lambda" };
                let sources = f.take(key)?;
                let sources = sources
                    .split('/')
                    .map(|s| parse_coweight(group, s))
                    .collect::<Result<Vec<_>>>();
                let sources = f.wrap(sources)?;
                let orbits = f.take("orbits")?;
                let orbits = orbits
                    .split('/')
                    .map(|s| OrbitLabel::parse(group, s))
                    .collect::<Result<Vec<_>>>();
                let orbits = f.wrap(orbits)?;
                self.poset_mut(group).pieces.push(PieceRecord {
                    sources,
                    orbits,
                    src,
                });
            }
            _ => return Err(f.err(format!("unknown record kind {kind:?}"))),
        }
        Ok(())
    }

    fn poset_mut(&mut self, lt: LieType) -> &mut PosetTable {
        if let Some(i) = self.posets.iter().position(|p| p.lie_type == lt) {
            return &mut self.posets[i];
        }
        self.posets.push(PosetTable::new(lt));
        self.posets.last_mut().unwrap()
    }

    pub fn poset(&self, lt: LieType) -> Option<&PosetTable> {
        self.posets.iter().find(|p| p.lie_type == lt)
    }

    /// Exceptional types with orbit calculation records, in file order.
    pub fn calc_types(&self) -> Vec<LieType> {
        let mut out: Vec<LieType> = Vec::new();
        for r in &self.calc {
            if !out.contains(&r.g_type) {
                out.push(r.g_type);
            }
        }
        out
    }

    pub fn calc_for(&self, g: LieType) -> impl Iterator<Item = &CalcRecord> {
        self.calc.iter().filter(move |r| r.g_type == g)
    }

    pub fn saturations(&self, g: LieType) -> Vec<SaturationRecord> {
        let mut out: Vec<SaturationRecord> = Vec::new();
        for r in self.calc_for(g) {
            let s = SaturationRecord {
                g_type: g,
                h_orbit: r.h_orbit.clone(),
                g_orbit: r.g_orbit.clone(),
                g_dim: r.g_dim,
            };
            if !out.contains(&s) {
                out.push(s);
            }
        }
        out
    }

    /// The G-orbit meeting a given H-orbit (its saturation, or for folding
    /// the intersection with the nilpotent cone of G).
    pub fn saturation_of(&self, g: LieType, h_orbit: &OrbitLabel) -> Result<&OrbitLabel> {
        self.calc_for(g)
            .find(|r| &r.h_orbit == h_orbit)
            .map(|r| &r.g_orbit)
            .ok_or_else(|| Error::MissingRecord(format!("saturation of {h_orbit} in {g}")))
    }

    /// All H-orbits listed with the given G-orbit.
    pub fn h_orbits_of(&self, g_orbit: &OrbitLabel) -> Vec<OrbitLabel> {
        let mut out: Vec<OrbitLabel> = Vec::new();
        for r in self.calc_for(g_orbit.lie_type()) {
            if &r.g_orbit == g_orbit && !out.contains(&r.h_orbit) {
                out.push(r.h_orbit.clone());
            }
        }
        out
    }

    pub fn orbit_dim(&self, label: &OrbitLabel) -> Result<u64> {
        self.orbit_dims
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownOrbit(format!("{label} in {}", label.lie_type())))
    }

    /// Orbits of the small nilpotent cone of an exceptional type.
    pub fn exceptional_orbits(&self, g: LieType) -> Vec<OrbitLabel> {
        let mut out: Vec<OrbitLabel> = Vec::new();
        for r in self.calc_for(g) {
            if !out.contains(&r.g_orbit) {
                out.push(r.g_orbit.clone());
            }
        }
        out
    }

    /// Closure order on the embedded orbits: reflexive-transitive closure of
    /// the drawn edges.
    pub fn exceptional_closure_leq(&self, a: &OrbitLabel, b: &OrbitLabel) -> Result<bool> {
        let lt = a.lie_type();
        self.orbit_dim(a)?;
        self.orbit_dim(b)?;
        let poset = self
            .poset(lt)
            .ok_or_else(|| Error::MissingRecord(format!("orbit poset for {lt}")))?;
        let mut stack = vec![b.clone()];
        let mut seen = BTreeSet::new();
        while let Some(x) = stack.pop() {
            if &x == a {
                return Ok(true);
            }
            if !seen.insert(x.clone()) {
                continue;
            }
            for (hi, lo) in &poset.orbit_edges {
                if hi == &x {
                    stack.push(lo.clone());
                }
            }
        }
        Ok(false)
    }

    pub fn stalk(&self, g: LieType, orbit: &OrbitLabel, sheaf: Sheaf) -> Result<&StalkPolynomial> {
        self.stalks
            .iter()
            .find(|s| s.g_type == g && &s.orbit == orbit && s.sheaf == sheaf)
            .ok_or_else(|| Error::MissingRecord(format!("{sheaf} stalk at {orbit} in {g}")))
    }

    pub fn stalk_value_at_one(&self, orbit: &OrbitLabel, sheaf: Sheaf, g: LieType) -> Result<u64> {
        Ok(self.stalk(g, orbit, sheaf)?.at_one())
    }

    pub fn zero_weight(&self, lam: &Coweight) -> Option<&ZeroWeightDecomposition> {
        let c = lam.fund().ok()?;
        self.zero_weights
            .iter()
            .find(|z| z.lam.lie_type == lam.lie_type && z.lam.fund().ok().as_ref() == Some(&c))
    }

    /// Recompute every checkable entry. One entry per record or group of
    /// records; the store is only usable when all pass.
    pub fn checks(&self) -> Result<Vec<TableCheck>> {
        let mut out = Vec::new();
        let mut push =
            |name: String, ok: bool, detail: String| out.push(TableCheck { name, ok, detail });

        for r in &self.calc {
            let d = pairing_two_rho(&r.lam)?;
            push(
                format!("calc dim {} {} (line {})", r.g_type, r.lam, r.src.line),
                d == r.dim as i64,
                format!("table {} recomputed {d}", r.dim),
            );
        }
        let mut by_lam: BTreeMap<(LieType, Vec<i64>), (u64, u64, usize)> = BTreeMap::new();
        for r in &self.calc {
            let e = by_lam
                .entry((r.g_type, r.lam.fund()?))
                .or_insert((r.dim, 0, r.src.line));
            e.1 = e.1.max(r.g_dim);
        }
        for ((g, lam), (dim, top, line)) in by_lam {
            push(
                format!(
                    "open orbit dim {g} {} (line {line})",
                    crate::rootsystem::format_fundamental(&lam)
                ),
                dim == top,
                format!("lambda dim {dim}, largest orbit dim {top}"),
            );
        }
        for r in &self.mults {
            let m = weight_multiplicity(&r.top, &r.mu)?;
            push(
                format!(
                    "mult {} V_{} at {} (line {})",
                    r.g_type, r.top, r.mu, r.src.line
                ),
                m == r.value.into(),
                format!("table {} recomputed {m}", r.value),
            );
        }
        for z in &self.zero_weights {
            let zw = zero_weight_dim(&z.lam)?;
            push(
                format!(
                    "zero weight {} {} (line {})",
                    z.lam.lie_type, z.lam, z.src.line
                ),
                zw.dim == z.total().into(),
                format!("table sum {} recomputed {}", z.total(), zw.dim),
            );
        }
        for s in &self.stalks {
            push(
                format!("stalk orbit {} {} (line {})", s.g_type, s.orbit, s.src.line),
                self.orbit_dims.contains_key(&s.orbit),
                "orbit listed in the calculation tables".into(),
            );
        }
        for p in &self.posets {
            for (hi, lo) in &p.cw_edges {
                let ok = dominance_leq(lo, hi)? && hi != lo;
                push(
                    format!("coweight edge {} {hi} > {lo}", p.lie_type),
                    ok,
                    "strict dominance".into(),
                );
            }
            for (hi, lo) in &p.orbit_edges {
                let (dh, dl) = (
                    crate::orbits::orbit_dimension_with(self, hi),
                    crate::orbits::orbit_dimension_with(self, lo),
                );
                let ok = matches!((&dh, &dl), (Ok(a), Ok(b)) if a > b);
                push(
                    format!("orbit edge {} {hi} > {lo}", p.lie_type),
                    ok,
                    format!("dimensions {dh:?} > {dl:?}"),
                );
            }
            if !p.lie_type.is_classical() {
                for piece in &p.pieces {
                    let mut expected: Vec<OrbitLabel> = Vec::new();
                    for src in &piece.sources {
                        for r in self.calc_for(p.lie_type) {
                            if r.lam.fund()? == src.fund()? && !expected.contains(&r.g_orbit) {
                                expected.push(r.g_orbit.clone());
                            }
                        }
                    }
                    let a: BTreeSet<_> = expected.iter().collect();
                    let b: BTreeSet<_> = piece.orbits.iter().collect();
                    push(
                        format!("piece {} line {}", p.lie_type, piece.src.line),
                        a == b,
                        "orbits agree with the calculation table".into(),
                    );
                }
            }
        }
        Ok(out)
    }
}

static STORE: OnceLock<std::result::Result<DataStore, String>> = OnceLock::new();

/// Load the table file named by `REEDERKIT_DATA`, or the embedded copy.
pub fn load_tables() -> Result<DataStore> {
    match std::env::var_os(DATA_ENV) {
        Some(path) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Load(format!("{}: {e}", path.to_string_lossy())))?;
            DataStore::parse(&text)
        }
        None => DataStore::parse(EMBEDDED_TABLES),
    }
}

pub fn load_tables_from(text: &str) -> Result<DataStore> {
    DataStore::parse(text)
}

/// Process-wide store, loaded on first use.
pub fn store() -> Result<&'static DataStore> {
    STORE
        .get_or_init(|| load_tables().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::Load(e.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lt(s: &str) -> LieType {
        s.parse().unwrap()
    }

    #[test]
    fn embedded_tables_load() {
        let s = DataStore::parse(EMBEDDED_TABLES).unwrap();
        assert_eq!(
            s.calc_types(),
            vec![lt("E6"), lt("E7"), lt("E8"), lt("F4"), lt("G2")]
        );
        assert_eq!(s.calc.len(), 39);
        assert_eq!(s.zero_weights.len(), 26);
    }

    #[test]
    fn e7_top_record() {
        let s = store().unwrap();
        let e7 = lt("E7");
        let lam = parse_coweight(e7, "w2+w7").unwrap();
        let rows: Vec<_> = s.calc_for(e7).filter(|r| r.lam == lam).collect();
        let got: Vec<(String, u64)> = rows
            .iter()
            .map(|r| (r.g_orbit.to_string(), r.g_dim))
            .collect();
        assert_eq!(got, vec![("A2+A1".into(), 76), ("4A1".into(), 70)]);
    }

    #[test]
    fn g2_record() {
        let s = store().unwrap();
        let g2 = lt("G2");
        let rows: Vec<_> = s
            .calc_for(g2)
            .filter(|r| r.lam == Coweight::omega(g2, 1))
            .collect();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.mu.coords == vec![2, 1, 1, 0]));
        let pairs: Vec<(String, String)> = rows
            .iter()
            .map(|r| (r.h_orbit.to_string(), r.g_orbit.to_string()))
            .collect();
        assert_eq!(
            pairs,
            vec![
                ("[3^2,1^2]".into(), "G2(a1)".into()),
                ("[3,2^2,1]".into(), "~A1".into())
            ]
        );
    }

    #[test]
    fn stalk_values() {
        let s = store().unwrap();
        let e7 = lt("E7");
        let o = OrbitLabel::exceptional(e7, "(3A1)''");
        assert_eq!(s.stalk_value_at_one(&o, Sheaf::Ic, e7).unwrap(), 4);
        assert_eq!(s.stalk_value_at_one(&o, Sheaf::IcSigma, e7).unwrap(), 2);
        let e6 = lt("E6");
        let o = OrbitLabel::exceptional(e6, "2A2");
        assert_eq!(s.stalk_value_at_one(&o, Sheaf::Ic, e6).unwrap(), 1);
        assert!(s.stalk_value_at_one(&o, Sheaf::IcSigma, e6).is_err());
        let o = OrbitLabel::exceptional(e7, "4A1");
        assert_eq!(s.stalk_value_at_one(&o, Sheaf::IcSigma, e7).unwrap(), 0);
    }

    #[test]
    fn polynomial_parsing() {
        assert_eq!(
            parse_polynomial("2q^35+q^31+q+3").unwrap(),
            vec![(35, 2), (31, 1), (1, 1), (0, 3)]
        );
        assert!(parse_polynomial("q^3+q^5").is_err());
        assert!(parse_polynomial("0q^3").is_err());
        assert_eq!(parse_polynomial("-").unwrap(), vec![]);
    }

    #[test]
    fn rejects_unknown_section_and_field() {
        let e = DataStore::parse_unchecked("[E9CALC]\n").unwrap_err();
        assert!(e.to_string().contains("unknown section"));
        let e = DataStore::parse_unchecked(
            "[EXCZW]\nzw group=G2 lambda=0 irreps=phi(1,6) src=x colour=red\n",
        )
        .unwrap_err();
        assert!(e.to_string().contains("line 2"));
    }

    #[test]
    fn rejects_tampered_values() {
        let bad = EMBEDDED_TABLES.replace("mu=w6 value=22", "mu=w6 value=23");
        assert!(DataStore::parse(&bad).is_err());
        let bad = EMBEDDED_TABLES.replace("phi(120,25)", "phi(121,25)");
        assert!(DataStore::parse(&bad).is_err());
        let bad = EMBEDDED_TABLES.replace("lambda=w2 dim=22", "lambda=w2 dim=23");
        assert!(DataStore::parse(&bad).is_err());
    }

    #[test]
    fn exceptional_closure() {
        let s = store().unwrap();
        let e7 = lt("E7");
        let o = |n: &str| OrbitLabel::exceptional(e7, n);
        assert!(s
            .exceptional_closure_leq(&o("(3A1)''"), &o("A2+A1"))
            .unwrap());
        assert!(!s.exceptional_closure_leq(&o("(3A1)''"), &o("A2")).unwrap());
        assert!(s.exceptional_closure_leq(&o("1"), &o("4A1")).unwrap());
        assert!(s.exceptional_closure_leq(&o("E7"), &o("1")).is_err());
    }
}
