//! Experiment runner for the sequence-space toolkit.
//!
//! Every subcommand emits a JSON report with the tool version and the
//! effective configuration embedded; a fixed seed makes output bytes
//! reproducible. Exit codes: 0 ok, 2 usage, 3 precondition, 4 budget,
//! 5 invariant violation (including failed verify suites).

use baire::export;
use baire::suites::{self, SuiteConfig};
use baire::{
    bisection_locate, classify_cardinality, cover_check, naturals_demo,
    run_construction, run_transfinite, verify_p_definition, CoverOutcome,
    CylinderComplex, CylinderWord, DeletionSchedule, Error, NaturalsFamily, Point,
    PointedSet,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "baire", version, about = "Deletion games on binary sequence space")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct ConfigArgs {
    /// Resolution depth for density and nowhere-density checks.
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,

    /// Bound K on the limit part of ordinal indices.
    #[arg(long = "k-bound", global = true, default_value_t = 2)]
    k_bound: u32,

    /// Extra depth allowed when hunting escape cylinders; defaults to 2·depth.
    #[arg(long, global = true)]
    lookahead: Option<usize>,

    /// Resolution budget: maximum deletion height, bisection steps, and
    /// predicate breadth.
    #[arg(long, global = true, default_value_t = 16)]
    budget: usize,

    /// Seed for every randomized sweep.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format for export; reports are always JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fold a deletion schedule over an initial complex.
    Construct {
        /// Schedule JSON: a list of {"target","r"} or {"stem"} entries.
        #[arg(long, required_unless_present = "sweep")]
        schedule: Option<PathBuf>,
        /// Initial complex: "full" or a complex JSON file.
        #[arg(long, default_value = "full")]
        initial: String,
        /// Run this many seeded random dense schedules in parallel
        /// instead of reading a file.
        #[arg(long, conflicts_with = "schedule")]
        sweep: Option<usize>,
    },
    /// Witness-preserving run around a list of avoided branches.
    Preserve {
        /// Comma-separated avoid targets, e.g. ":0,01:0".
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
        /// The witness to keep.
        #[arg(long = "seed-point")]
        seed_point: String,
        /// Steps to run; defaults to the whole avoid list.
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long, default_value = "full")]
        initial: String,
    },
    /// Segmented run with a limit stage after each segment.
    Transfinite {
        /// Segments JSON: a list of lists of avoid targets.
        #[arg(long)]
        segments: PathBuf,
        #[arg(long = "seed-point")]
        seed_point: String,
        #[arg(long, default_value = "full")]
        initial: String,
    },
    /// Locate a point by interval bisection and decide membership.
    Bisect {
        #[arg(long)]
        point: String,
        /// Pointed-set JSON file; defaults to the full space.
        #[arg(long)]
        space: Option<PathBuf>,
        /// Step budget; defaults to the global budget.
        #[arg(long = "max-steps")]
        max_steps: Option<u64>,
    },
    /// Run a named property suite.
    Verify {
        /// One of: metric, trie, baire, cardinality, bisection, naturals.
        suite: String,
        /// Randomized cases per property.
        #[arg(long, default_value_t = 200)]
        samples: u64,
    },
    /// Classify a pointed set by its kernel.
    Classify {
        #[arg(long)]
        input: PathBuf,
        /// Isolation horizon; defaults to the global depth.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Initial-segment deletions on a finite window of naturals.
    Naturals {
        #[arg(long)]
        bound: u64,
        /// Comma-separated cutoffs to delete.
        #[arg(long, value_delimiter = ',', conflicts_with = "cofinal")]
        delete: Vec<u64>,
        /// Delete every cutoff up to the bound (the cofinal family).
        #[arg(long, default_value_t = false)]
        cofinal: bool,
    },
    /// Re-encode a complex or trace as JSON or DOT.
    Export {
        #[arg(long)]
        input: PathBuf,
        /// What the input file holds.
        #[arg(long, value_enum, default_value_t = Kind::Complex)]
        kind: Kind,
    },
    /// Check a cylinder cover of a space.
    Cover {
        /// Comma-separated cover stems, e.g. "0,10,110".
        #[arg(long, value_delimiter = ',')]
        stems: Vec<String>,
        #[arg(long, default_value = "full")]
        initial: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Complex,
    Trace,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let payload = json!({
                "error": {
                    "kind": error_kind(&err),
                    "message": err.to_string(),
                }
            });
            eprintln!("{payload}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Malformed(_) | Error::EmptyPeriod => "malformed-input",
        Error::InvalidInterval => "invalid-interval",
        Error::NoPredecessor(_) => "no-predecessor",
        Error::LimitCarry(_) => "limit-carry-undefined",
        Error::Precondition(_) | Error::NotNowhereDense(_) => "precondition",
        Error::Budget(_) | Error::BisectionBudget { .. } => "budget-exceeded",
        Error::Invariant(_) => "invariant-violation",
        Error::MetricAxiom(_) => "metric-axiom-violation",
    }
}

fn read_to_string(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))
}

fn load_complex(spec: &str) -> Result<CylinderComplex, Error> {
    if spec == "full" {
        return Ok(CylinderComplex::Full);
    }
    if spec == "empty" {
        return Ok(CylinderComplex::Empty);
    }
    let text = read_to_string(&PathBuf::from(spec))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        Error::Malformed(format!(
            "complex parse error at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })?;
    export::complex_from_json(&value)
}

fn parse_points(texts: &[String]) -> Result<Vec<Point>, Error> {
    texts.iter().map(|s| Point::parse(s)).collect()
}

fn effective(config: &ConfigArgs) -> (usize, usize) {
    let lookahead = config.lookahead.unwrap_or(2 * config.depth);
    (config.depth, lookahead)
}

fn header(config: &ConfigArgs, command: &str) -> Value {
    let (depth, lookahead) = effective(config);
    json!({
        "name": "baire",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": {
            "depth": depth,
            "k_bound": config.k_bound,
            "lookahead": lookahead,
            "budget": config.budget,
            "seed": config.seed,
        },
    })
}

fn emit(report: Value) {
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
}

fn measure_string(c: &CylinderComplex) -> String {
    c.measure().to_string()
}

/// Run `count` seeded random dense schedules, fanned out over threads.
/// Schedules are drawn sequentially from the seeded generator, the runs
/// are independent, and the aggregated report is sorted by the canonical
/// schedule encoding so thread timing never shows in the bytes.
fn run_sweep(
    config: &ConfigArgs,
    initial: &CylinderComplex,
    count: usize,
    depth: usize,
    lookahead: usize,
) -> Result<(), Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let schedules: Vec<DeletionSchedule> = (0..count)
        .map(|_| suites::random_dense_schedule(&mut rng, depth))
        .collect();
    let budget = config.budget;
    let mut runs: Vec<(String, Value)> = std::thread::scope(|scope| {
        let handles: Vec<_> = schedules
            .iter()
            .map(|schedule| {
                scope.spawn(move || -> Result<(String, Value), Error> {
                    let key = export::schedule_to_json(schedule).to_string();
                    let state = run_construction(initial, schedule, budget)?;
                    state.verify()?;
                    let fragment = json!({
                        "schedule": export::schedule_to_json(schedule),
                        "final_measure": measure_string(state.current()),
                        "nonempty": !state.current().is_empty(),
                        "dense_at_depth": state.deletions_dense_at_depth(depth),
                        "nowhere_dense_at_depth":
                            state.current().nowhere_dense_at_depth(depth, lookahead),
                    });
                    Ok((key, fragment))
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker does not panic"))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    runs.sort_by(|a, b| a.0.cmp(&b.0));
    let mut report = Map::new();
    report.insert("tool".into(), header(config, "construct-sweep"));
    report.insert(
        "runs".into(),
        Value::Array(runs.into_iter().map(|(_, v)| v).collect()),
    );
    emit(Value::Object(report));
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    let config = cli.config;
    let (depth, lookahead) = effective(&config);
    match cli.command {
        Command::Construct {
            schedule,
            initial,
            sweep,
        } => {
            let initial = load_complex(&initial)?;
            if let Some(count) = sweep {
                return run_sweep(&config, &initial, count, depth, lookahead);
            }
            let schedule_text =
                read_to_string(&schedule.expect("clap enforces schedule xor sweep"))?;
            let schedule: DeletionSchedule = export::schedule_from_str(&schedule_text)?;
            schedule.validate_non_repeating()?;
            let state = run_construction(&initial, &schedule, config.budget)?;
            state.verify()?;
            let steps: Vec<Value> = state
                .records
                .iter()
                .map(|r| {
                    json!({
                        "applied": r.applied,
                        "n": r.base_height,
                        "deleted": r.deleted.as_ref().map(|w| w.stem().to_string()),
                    })
                })
                .collect();
            let mut report = Map::new();
            report.insert("tool".into(), header(&config, "construct"));
            report.insert(
                "measures".into(),
                Value::Array(
                    state
                        .measures()
                        .iter()
                        .map(|m| Value::String(m.to_string()))
                        .collect(),
                ),
            );
            report.insert("steps".into(), Value::Array(steps));
            report.insert(
                "final".into(),
                json!({
                    "measure": measure_string(state.current()),
                    "nonempty": !state.current().is_empty(),
                    "dense_at_depth": state.deletions_dense_at_depth(depth),
                    "nowhere_dense_at_depth":
                        state.current().nowhere_dense_at_depth(depth, lookahead),
                    "complex": export::complex_to_json(state.current()),
                }),
            );
            emit(Value::Object(report));
            Ok(())
        }
        Command::Preserve {
            avoid,
            seed_point,
            steps,
            initial,
        } => {
            let initial = load_complex(&initial)?;
            let avoid = parse_points(&avoid)?;
            let seed = Point::parse(&seed_point)?;
            let steps = steps.unwrap_or(avoid.len());
            let state =
                baire::preserve_run(&initial, &avoid, &seed, steps, config.budget)?;
            state.verify()?;
            let mut report = Map::new();
            report.insert("tool".into(), header(&config, "preserve"));
            report.insert(
                "witnesses".into(),
                Value::Array(
                    state
                        .witnesses
                        .iter()
                        .map(|p| Value::String(p.to_string()))
                        .collect(),
                ),
            );
            report.insert(
                "deleted".into(),
                Value::Array(
                    state
                        .deleted
                        .iter()
                        .map(|w| Value::String(w.stem().to_string()))
                        .collect(),
                ),
            );
            report.insert(
                "final".into(),
                json!({
                    "measure": measure_string(state.current()),
                    "witnesses_in_remainder": state
                        .witnesses
                        .iter()
                        .all(|p| state.current().contains_point(p)),
                }),
            );
            emit(Value::Object(report));
            Ok(())
        }
        Command::Transfinite {
            segments,
            seed_point,
            initial,
        } => {
            let initial = load_complex(&initial)?;
            let text = read_to_string(&segments)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                Error::Malformed(format!(
                    "segments parse error at line {}, column {}: {e}",
                    e.line(),
                    e.column()
                ))
            })?;
            let segments: Vec<Vec<Point>> = value
                .as_array()
                .ok_or_else(|| Error::Malformed("segments must be a list of lists".into()))?
                .iter()
                .map(|seg| {
                    seg.as_array()
                        .ok_or_else(|| {
                            Error::Malformed("each segment is a list of points".into())
                        })?
                        .iter()
                        .map(|p| {
                            p.as_str()
                                .ok_or_else(|| {
                                    Error::Malformed("points are strings".into())
                                })
                                .and_then(Point::parse)
                        })
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let seed = Point::parse(&seed_point)?;
            let state = run_transfinite(
                &initial,
                &segments,
                &seed,
                config.budget,
                config.k_bound,
            )?;
            let mut report = Map::new();
            report.insert("tool".into(), header(&config, "transfinite"));
            report.insert(
                "stages".into(),
                Value::Array(
                    state
                        .stages
                        .iter()
                        .map(|(at, c)| {
                            json!({
                                "at": at.to_string(),
                                "measure": measure_string(c),
                            })
                        })
                        .collect(),
                ),
            );
            report.insert(
                "limits".into(),
                Value::Array(
                    state
                        .limits
                        .iter()
                        .map(|l| {
                            json!({
                                "at": l.at.to_string(),
                                "preserved": l.preserved.stem().to_string(),
                                "witness": l.witness.to_string(),
                            })
                        })
                        .collect(),
                ),
            );
            report.insert(
                "witnesses".into(),
                Value::Array(
                    state
                        .witnesses
                        .iter()
                        .map(|p| Value::String(p.to_string()))
                        .collect(),
                ),
            );
            emit(Value::Object(report));
            Ok(())
        }
        Command::Bisect {
            point,
            space,
            max_steps,
        } => {
            let x = Point::parse(&point)?;
            let space = match space {
                None => PointedSet::from_body(CylinderComplex::Full),
                Some(path) => {
                    let text = read_to_string(&path)?;
                    let value: Value = serde_json::from_str(&text).map_err(|e| {
                        Error::Malformed(format!("pointed-set parse error: {e}"))
                    })?;
                    export::pointed_from_json(&value)?
                }
            };
            let max_steps = max_steps.unwrap_or(config.budget as u64);
            let outcome = bisection_locate(&space, &x, max_steps);
            match outcome {
                Ok(report) => {
                    let mut out = Map::new();
                    out.insert("tool".into(), header(&config, "bisect"));
                    out.insert("member".into(), Value::Bool(report.member));
                    out.insert("steps".into(), json!(report.steps));
                    out.insert("trace".into(), export::trace_to_json(&report.trace));
                    if config.format == Format::Dot {
                        out.insert(
                            "dot".into(),
                            Value::String(export::trace_to_dot(&report.trace)),
                        );
                    }
                    emit(Value::Object(out));
                    Ok(())
                }
                Err(Error::BisectionBudget { max_steps, trace }) => {
                    // Surface the trace walked so far, then fail.
                    let payload = json!({
                        "trace": export::trace_to_json(&trace),
                    });
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                    Err(Error::BisectionBudget { max_steps, trace })
                }
                Err(e) => Err(e),
            }
        }
        Command::Verify { suite, samples } => {
            let suite_config = SuiteConfig {
                depth,
                lookahead,
                budget: config.budget,
                samples,
                ordinal_bound: config.k_bound,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let report = match suite.as_str() {
                "metric" => suites::metric_suite(&mut rng, &suite_config),
                "trie" => suites::trie_suite(&mut rng, &suite_config),
                "baire" => suites::baire_suite(&mut rng, &suite_config),
                "cardinality" => suites::cardinality_suite(&mut rng, &suite_config),
                "bisection" => suites::bisection_suite(&suite_config),
                "naturals" => suites::naturals_suite(&suite_config),
                other => {
                    // Unknown suite names are a usage error, not a failure.
                    eprintln!("unknown suite {other:?}; expected one of metric, trie, baire, cardinality, bisection, naturals");
                    std::process::exit(2);
                }
            };
            let ok = report.passed();
            let mut out = Map::new();
            out.insert("tool".into(), header(&config, "verify"));
            out.insert("suite".into(), Value::String(report.suite.clone()));
            out.insert(
                "properties".into(),
                Value::Array(
                    report
                        .properties
                        .iter()
                        .map(|p| {
                            json!({
                                "name": p.name,
                                "cases": p.cases,
                                "failures": p.failures,
                            })
                        })
                        .collect(),
                ),
            );
            if suite == "metric" {
                // Echo the carry rule in the formal-distance encoding.
                let five = baire::FormalDistance::unit(baire::OrdinalIndex::new(0, 5));
                let sum = baire::oplus(&five, &five)?;
                out.insert(
                    "carry_example".into(),
                    json!({
                        "lhs": five.to_string(),
                        "rhs": five.to_string(),
                        "sum": sum.to_string(),
                    }),
                );
            }
            if suite == "baire" {
                // Echo the predicate headline numbers for quick reading.
                let p_depth = depth.min(3);
                let p = verify_p_definition(
                    &CylinderComplex::Full,
                    p_depth,
                    config.budget.max(1 << p_depth),
                )?;
                out.insert(
                    "predicate".into(),
                    json!({
                        "depth": p_depth,
                        "exhaustive_empty": p.exhaustive_empty,
                        "max_k_nonempty": p.max_k_nonempty,
                        "witness": p
                            .witness
                            .iter()
                            .map(|w| w.stem().to_string())
                            .collect::<Vec<_>>(),
                    }),
                );
            }
            out.insert("ok".into(), Value::Bool(ok));
            emit(Value::Object(out));
            if ok {
                Ok(())
            } else {
                Err(Error::Invariant(format!("suite {suite} reported failures")))
            }
        }
        Command::Classify { input, horizon } => {
            let text = read_to_string(&input)?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Malformed(format!("pointed-set parse error: {e}")))?;
            let s = export::pointed_from_json(&value)?;
            let horizon = horizon.unwrap_or(depth);
            let class = classify_cardinality(&s, horizon);
            let mut out = Map::new();
            out.insert("tool".into(), header(&config, "classify"));
            out.insert("horizon".into(), json!(horizon));
            out.insert("class".into(), Value::String(class.to_string()));
            emit(Value::Object(out));
            Ok(())
        }
        Command::Naturals {
            bound,
            delete,
            cofinal,
        } => {
            let family = if cofinal {
                NaturalsFamily::Cofinal
            } else {
                NaturalsFamily::Explicit(delete)
            };
            let report = naturals_demo(bound, &family)?;
            let mut out = Map::new();
            out.insert("tool".into(), header(&config, "naturals"));
            out.insert("bound".into(), json!(bound));
            out.insert("remainder_size".into(), json!(report.remainder_size));
            out.insert("empties_in_limit".into(), json!(report.empties_in_limit));
            emit(Value::Object(out));
            Ok(())
        }
        Command::Export { input, kind } => {
            let text = read_to_string(&input)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| {
                Error::Malformed(format!(
                    "input parse error at line {}, column {}: {e}",
                    e.line(),
                    e.column()
                ))
            })?;
            match kind {
                Kind::Complex => {
                    let c = export::complex_from_json(&value)?;
                    match config.format {
                        Format::Dot => print!("{}", export::complex_to_dot(&c)),
                        Format::Json | Format::Text => {
                            println!(
                                "{}",
                                serde_json::to_string_pretty(&export::complex_to_json(&c))
                                    .unwrap()
                            )
                        }
                    }
                }
                Kind::Trace => {
                    // A trace round-trips through its JSON rows.
                    let rows = value.as_array().ok_or_else(|| {
                        Error::Malformed("a trace is a JSON array".into())
                    })?;
                    let mut steps = Vec::new();
                    for row in rows {
                        let obj = row.as_object().ok_or_else(|| {
                            Error::Malformed("trace rows are objects".into())
                        })?;
                        let get = |k: &str| -> Result<Point, Error> {
                            obj.get(k)
                                .and_then(Value::as_str)
                                .ok_or_else(|| {
                                    Error::Malformed(format!("trace row missing {k:?}"))
                                })
                                .and_then(Point::parse)
                        };
                        let branch = match obj.get("branch").and_then(Value::as_str) {
                            Some("L") => baire::Branch::Left,
                            Some("R") => baire::Branch::Right,
                            Some("HIT") => baire::Branch::Hit,
                            other => {
                                return Err(Error::Malformed(format!(
                                    "unknown branch {other:?}"
                                )))
                            }
                        };
                        steps.push(baire::BisectionStep {
                            low: get("a")?,
                            high: get("b")?,
                            mid: get("mid")?,
                            branch,
                        });
                    }
                    match config.format {
                        Format::Dot => print!("{}", export::trace_to_dot(&steps)),
                        Format::Json | Format::Text => println!(
                            "{}",
                            serde_json::to_string_pretty(&export::trace_to_json(&steps))
                                .unwrap()
                        ),
                    }
                }
            }
            Ok(())
        }
        Command::Cover { stems, initial } => {
            let space = load_complex(&initial)?;
            let cover: Vec<CylinderWord> = stems
                .iter()
                .map(|s| CylinderWord::parse(s))
                .collect::<Result<_, _>>()?;
            let outcome = cover_check(&space, &cover);
            let mut out = Map::new();
            out.insert("tool".into(), header(&config, "cover"));
            match outcome {
                CoverOutcome::Covered(minimal) => {
                    out.insert("covered".into(), Value::Bool(true));
                    out.insert(
                        "minimal_subcover".into(),
                        Value::Array(
                            minimal
                                .iter()
                                .map(|w| Value::String(w.stem().to_string()))
                                .collect(),
                        ),
                    );
                }
                CoverOutcome::Uncovered(witness) => {
                    out.insert("covered".into(), Value::Bool(false));
                    out.insert(
                        "witness".into(),
                        Value::String(witness.stem().to_string()),
                    );
                }
            }
            emit(Value::Object(out));
            Ok(())
        }
    }
}
