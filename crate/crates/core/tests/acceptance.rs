//! Acceptance criteria, one line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use reederkit::multiplicity::{weight_multiplicity, zero_weight_dim};
use reederkit::paperdata;
use reederkit::reeder::enumerate_small;
use reederkit::rootsystem::{pairing_two_rho, parse_coweight, LieType};
use reederkit::verify::{cases, Case, Check, Suite};
use reederkit::Result;

struct Outcome {
    ok: bool,
    detail: String,
}

fn lt(s: &str) -> LieType {
    s.parse().expect("valid type")
}

fn run_cases(cs: impl IntoIterator<Item = Case>) -> (usize, Vec<Check>) {
    let mut total = 0;
    let mut bad = Vec::new();
    for c in cs {
        for r in c.run() {
            total += 1;
            if !r.ok() {
                bad.push(r);
            }
        }
    }
    (total, bad)
}

fn summarize(total: usize, bad: &[Check]) -> Outcome {
    let detail = match bad.first() {
        None => format!("{total} checks"),
        Some(b) => format!(
            "{} of {total} checks failed; first: {} computed {} expected {}",
            bad.len(),
            b.name,
            b.computed,
            b.expected
        ),
    };
    Outcome {
        ok: bad.is_empty(),
        detail,
    }
}

fn small_counts() -> Result<Outcome> {
    let expected = [
        ("E6", 8),
        ("E7", 6),
        ("E8", 5),
        ("F4", 4),
        ("G2", 3),
        ("A3", 7),
        ("C4", 5),
        ("B4", 5),
        ("D4", 6),
    ];
    let mut problems = Vec::new();
    for (t, n) in expected {
        let p = enumerate_small(lt(t))?;
        if p.len() != n {
            problems.push(format!("{t}: {} elements, expected {n}", p.len()));
        }
    }
    let e6 = enumerate_small(lt("E6"))?;
    if e6.maximal().len() != 2 {
        problems.push(format!(
            "E6: {} maximal elements, expected 2",
            e6.maximal().len()
        ));
    }
    let drawn = expected.iter().map(|(t, _)| Case::DrawnPoset(lt(t)));
    let (total, bad) = run_cases(drawn);
    problems.extend(
        bad.iter()
            .map(|b| format!("{}: {} vs {}", b.name, b.computed, b.expected)),
    );
    Ok(Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("9 types, {total} poset checks")
        } else {
            problems.join("; ")
        },
    })
}

fn dimensions() -> Result<Outcome> {
    let expected: [(&str, &[i64]); 5] = [
        ("E6", &[48, 48, 46, 46, 42, 32, 22, 0]),
        ("E7", &[76, 66, 54, 52, 34, 0]),
        ("E8", &[136, 114, 92, 58, 0]),
        ("F4", &[30, 22, 16, 0]),
        ("G2", &[10, 6, 0]),
    ];
    let mut problems = Vec::new();
    for (t, want) in expected {
        let dims = enumerate_small(lt(t))?
            .elements
            .iter()
            .map(pairing_two_rho)
            .collect::<Result<Vec<i64>>>()?;
        if dims != want {
            problems.push(format!("{t}: {dims:?}"));
        }
    }
    Ok(Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            "5 types".into()
        } else {
            problems.join("; ")
        },
    })
}

fn restriction() -> Result<Outcome> {
    let types = paperdata::store()?.calc_types();
    let (total, bad) = run_cases(types.into_iter().map(Case::Restriction));
    Ok(summarize(total, &bad))
}

fn multiplicities() -> Result<Outcome> {
    let expected: [(&str, &str, &[(&str, u64)]); 4] = [
        (
            "E6",
            "3w1",
            &[
                ("3w1", 1),
                ("w1+w3", 1),
                ("w4", 1),
                ("w1+w6", 4),
                ("w2", 10),
                ("0", 24),
            ],
        ),
        (
            "E6",
            "3w6",
            &[
                ("3w6", 1),
                ("w5+w6", 1),
                ("w4", 1),
                ("w1+w6", 4),
                ("w2", 10),
                ("0", 24),
            ],
        ),
        (
            "E7",
            "w2+w7",
            &[
                ("w2+w7", 1),
                ("w3", 5),
                ("2w7", 6),
                ("w6", 22),
                ("w1", 75),
                ("0", 225),
            ],
        ),
        (
            "E8",
            "w2",
            &[("w2", 1), ("w7", 6), ("w1", 29), ("w8", 111), ("0", 370)],
        ),
    ];
    let mut problems = Vec::new();
    let mut count = 0;
    for (t, top, rows) in expected {
        let g = lt(t);
        let top = parse_coweight(g, top)?;
        for &(mu, want) in rows {
            let m = weight_multiplicity(&top, &parse_coweight(g, mu)?)?;
            count += 1;
            if m != want.into() {
                problems.push(format!("{t} V_{top} at {mu}: {m}, expected {want}"));
            }
        }
    }
    Ok(Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{count} entries")
        } else {
            problems.join("; ")
        },
    })
}

fn stalks() -> Result<Outcome> {
    let cs = cases(Suite::Stalk)?;
    let per_type = ["E6", "E7", "E8"]
        .iter()
        .map(|t| {
            let n = cs
                .iter()
                .filter(|c| matches!(c, Case::Stalk(g, ..) if *g == lt(t)))
                .count();
            format!("{t} {n}")
        })
        .collect::<Vec<_>>()
        .join(", ");
    let (total, bad) = run_cases(cs);
    let mut o = summarize(total, &bad);
    o.detail = format!("{} (cases: {per_type})", o.detail);
    Ok(o)
}

fn zero_weights() -> Result<Outcome> {
    let expected = [
        ("E7", "w2+w7", 225u64),
        ("E8", "w2", 370),
        ("E6", "w4", 45),
        ("F4", "w2", 9),
        ("G2", "w1", 2),
    ];
    let mut problems = Vec::new();
    for (t, lam, want) in expected {
        let lam = parse_coweight(lt(t), lam)?;
        let d = zero_weight_dim(&lam)?.dim;
        if d != want.into() {
            problems.push(format!("{t} {lam}: {d}, expected {want}"));
        }
    }
    let store = paperdata::store()?;
    for z in &store.zero_weights {
        let d = zero_weight_dim(&z.lam)?.dim;
        if d != z.total().into() {
            problems.push(format!(
                "{} {}: {d}, table sum {}",
                z.lam.lie_type,
                z.lam,
                z.total()
            ));
        }
    }
    Ok(Outcome {
        ok: problems.is_empty(),
        detail: if problems.is_empty() {
            format!("{} table rows", store.zero_weights.len())
        } else {
            problems.join("; ")
        },
    })
}

fn classical_pieces() -> Result<Outcome> {
    let cs = cases(Suite::Poset)?
        .into_iter()
        .filter(|c| matches!(c, Case::Pieces(t) if t.is_classical()));
    let (total, bad) = run_cases(cs);
    Ok(summarize(total, &bad))
}

fn matrix_models() -> Result<Outcome> {
    let (total, bad) = run_cases(cases(Suite::Matrix)?);
    Ok(summarize(total, &bad))
}

fn hook_lengths() -> Result<Outcome> {
    let cs = cases(Suite::Tables)?
        .into_iter()
        .filter(|c| matches!(c, Case::HookLength(_)));
    let (total, bad) = run_cases(cs);
    Ok(summarize(total, &bad))
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "small coweight counts and posets",
            Duration::from_secs(1),
            small_counts,
        ),
        ("orbit dimensions", Duration::from_secs(1), dimensions),
        (
            "restriction to the partner group",
            Duration::from_secs(10),
            restriction,
        ),
        (
            "weight multiplicities",
            Duration::from_secs(60),
            multiplicities,
        ),
        ("stalk identity", Duration::from_secs(60), stalks),
        ("zero weight spaces", Duration::from_secs(60), zero_weights),
        (
            "classical Reeder pieces",
            Duration::from_secs(30),
            classical_pieces,
        ),
        ("matrix models", Duration::from_secs(120), matrix_models),
        (
            "zero weights vs hook lengths",
            Duration::from_secs(10),
            hook_lengths,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome {
            ok: false,
            detail: format!("error: {e}"),
        });
        let elapsed = start.elapsed();
        let slow = elapsed > *budget;
        let verdict = if outcome.ok { "PASS" } else { "FAIL" };
        let timing = if slow {
            format!(
                "{:.2}s, over the {}s budget",
                elapsed.as_secs_f64(),
                budget.as_secs()
            )
        } else {
            format!("{:.2}s", elapsed.as_secs_f64())
        };
        println!(
            "criterion {}: {verdict} {name} [{timing}] {}",
            i + 1,
            outcome.detail
        );
        if !outcome.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
