use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use reederkit::multiplicity::weight_multiplicity;
use reederkit::orbits::orbit_dimension;
use reederkit::reeder::{all_pieces, enumerate_small, ReederPiece, SmallPoset};
use reederkit::rootsystem::{
    format_fundamental, format_tuple, pairing_two_rho, parse_coweight, root_datum, Basis, Family,
    LieType,
};
use reederkit::verify::{cases, Check, Status, Suite};
use reederkit::Error;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "reederkit",
    version,
    about = "Small coweights, Reeder pieces and weight multiplicities"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Small coweights with their dominance order.
    Small {
        family: String,
        rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Reeder pieces, one per pair {λ, −w₀λ}.
    Reeder { family: String, rank: usize },
    /// Weight multiplicity of `mu` in the representation with highest weight `lambda`.
    ///
    /// Coweights are written as fundamental combinations (`w2+w7`, `3w1`, `0`)
    /// or as classical tuples (`2,1,1,0`).
    Mult {
        family: String,
        rank: usize,
        lambda: String,
        mu: String,
    },
    /// Run verification suites and print one record per check.
    Verify {
        #[arg(value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Tables,
    Stalk,
    Matrix,
    Poset,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::All => Suite::ALL.to_vec(),
            SuiteArg::Tables => vec![Suite::Tables],
            SuiteArg::Stalk => vec![Suite::Stalk],
            SuiteArg::Matrix => vec![Suite::Matrix],
            SuiteArg::Poset => vec![Suite::Poset],
        }
    }

    fn name(self) -> &'static str {
        match self {
            SuiteArg::All => "all",
            SuiteArg::Tables => "tables",
            SuiteArg::Stalk => "stalk",
            SuiteArg::Matrix => "matrix",
            SuiteArg::Poset => "poset",
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Load(_) | Error::Data { .. } | Error::Internal(_) | Error::MissingRecord(_) => {
                Failure::Runtime(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn lie_type(family: &str, rank: usize) -> Result<LieType, Failure> {
    let family: Family = family
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    Ok(LieType::new(family, rank)?)
}

/// Write to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn schema(kind: &str) -> String {
    format!("reederkit.{kind}/{SCHEMA_VERSION}")
}

/// Stable identifier from fundamental coordinates.
fn node_id(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
    format!("w_{}", parts.join("_"))
}

fn small_json(p: &SmallPoset) -> Result<Value, Failure> {
    let mut nodes = Vec::new();
    for (i, e) in p.elements.iter().enumerate() {
        let classical = match e.to(Basis::Classical) {
            Ok(c) => json!(c.coords),
            Err(_) => Value::Null,
        };
        nodes.push(json!({
            "id": node_id(&e.coords),
            "label": format_fundamental(&e.coords),
            "fundamental": e.coords,
            "classical": classical,
            "dim": pairing_two_rho(e)?,
            "dual": node_id(&p.elements[p.involution[i]].coords),
        }));
    }
    let edges: Vec<Value> = p
        .hasse_edges
        .iter()
        .map(|&(hi, lo)| json!({"from": node_id(&p.elements[hi].coords), "to": node_id(&p.elements[lo].coords)}))
        .collect();
    Ok(json!({
        "schema": schema("small"),
        "type": p.lie_type.to_string(),
        "nodes": nodes,
        "edges": edges,
    }))
}

fn small_dot(p: &SmallPoset) -> String {
    let mut out = format!("digraph \"small_{}\" {{\n  rankdir=TB;\n", p.lie_type);
    for (i, e) in p.elements.iter().enumerate() {
        let attrs = if p.involution[i] == i {
            ""
        } else {
            ", style=dashed"
        };
        out.push_str(&format!(
            "  {} [label=\"{}\"{attrs}];\n",
            node_id(&e.coords),
            format_fundamental(&e.coords)
        ));
    }
    for &(hi, lo) in &p.hasse_edges {
        out.push_str(&format!(
            "  {} -> {};\n",
            node_id(&p.elements[hi].coords),
            node_id(&p.elements[lo].coords)
        ));
    }
    out.push_str("}\n");
    out
}

fn piece_json(lt: LieType, p: &ReederPiece) -> Result<Value, Failure> {
    let sources: Vec<String> = p.sources.iter().map(|s| format_tuple(&s.coords)).collect();
    let fundamental = p
        .sources
        .iter()
        .map(|s| Ok(format_fundamental(&s.fund()?)))
        .collect::<Result<Vec<String>, Error>>()?;
    let orbits = p
        .orbits
        .iter()
        .map(|o| Ok(json!({"label": o.to_string(), "dim": orbit_dimension(o)?})))
        .collect::<Result<Vec<Value>, Error>>()?;
    let basis = if lt.is_classical() {
        "classical"
    } else {
        "fundamental"
    };
    Ok(json!({
        "sources": sources,
        "sources_basis": basis,
        "sources_fundamental": fundamental,
        "orbits": orbits,
        "case": p.case.to_string(),
        "dim": orbit_dimension(p.open_orbit())?,
    }))
}

fn record(c: &Check, suite: &str) -> Value {
    let mut v = json!({
        "command": format!("verify {suite}"),
        "suite": c.suite.name(),
        "inputs": c.name,
        "outputs": c.computed,
        "status": c.status.to_string(),
    });
    if c.status != Status::Ok {
        v["expected"] = json!(c.expected);
    }
    if let Some(t) = &c.table {
        v["table_of_origin"] = json!(t);
    }
    v
}

fn verify(arg: SuiteArg, jobs: usize) -> Result<bool, Failure> {
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let mut all = Vec::new();
    for s in arg.suites() {
        all.extend(cases(s)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let checks: Vec<Check> = pool
        .install(|| all.par_iter().map(|c| c.run()).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect();
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (ok, mismatch, error) = (
        count(Status::Ok),
        count(Status::Mismatch),
        count(Status::Error),
    );
    let report = json!({
        "schema": schema("verify"),
        "suite": arg.name(),
        "records": checks.iter().map(|c| record(c, arg.name())).collect::<Vec<_>>(),
        "summary": {"ok": ok, "mismatch": mismatch, "error": error},
    });
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(&report).expect("serializable")
    ));
    for c in checks.iter().filter(|c| !c.ok()) {
        eprintln!(
            "{}: {} computed {:?} expected {:?}",
            c.status, c.name, c.computed, c.expected
        );
    }
    eprintln!(
        "{} checks: {ok} ok, {mismatch} mismatch, {error} error",
        checks.len()
    );
    Ok(mismatch == 0 && error == 0)
}

fn run(args: Args) -> Result<bool, Failure> {
    match args.command {
        Command::Small {
            family,
            rank,
            format,
        } => {
            let lt = lie_type(&family, rank)?;
            let poset = enumerate_small(lt)?;
            match format {
                Format::Json => {
                    let v = small_json(&poset)?;
                    emit(&format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("serializable")
                    ));
                }
                Format::Dot => emit(&small_dot(&poset)),
            }
            Ok(true)
        }
        Command::Reeder { family, rank } => {
            let lt = lie_type(&family, rank)?;
            let pieces = all_pieces(lt)?
                .iter()
                .map(|p| piece_json(lt, p))
                .collect::<Result<Vec<_>, _>>()?;
            let v = json!({
                "schema": schema("reeder"),
                "type": lt.to_string(),
                "pieces": pieces,
            });
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            ));
            Ok(true)
        }
        Command::Mult {
            family,
            rank,
            lambda,
            mu,
        } => {
            let lt = lie_type(&family, rank)?;
            let lam = parse_coweight(lt, &lambda)?;
            let mu = parse_coweight(lt, &mu)?;
            if !root_datum(lt).is_dominant(&lam.fund()?) {
                return Err(Failure::Usage(format!("{lam} is not dominant")));
            }
            emit(&format!("{}\n", weight_multiplicity(&lam, &mu)?));
            Ok(true)
        }
        Command::Verify { suite, jobs } => verify(suite, jobs),
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
