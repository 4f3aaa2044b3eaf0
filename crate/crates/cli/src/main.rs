mod report;
mod selftest;
mod verify;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;
use stabilize_core::io::{instance_hash, parse_instance, Instance};
use stabilize_core::oracle::OracleBudget;
use stabilize_core::par::{configure_threads, Execution};

use report::{OracleQuery, Output};

/// Exact fractional matchings, odd-cycle minimization and graph stabilizers.
///
/// Results are JSON on standard output. Exit status: 0 on success, 1 on bad
/// input, 2 when m-stabilize (or `oracle min-m-stabilizer`) finds no
/// feasible removal set.
#[derive(Parser)]
#[command(name = "stabilize", version)]
struct Cli {
    /// Worker threads for batch runs and oracle searches.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Add wall-clock time to each result (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Instance files; `-` reads standard input. Several files give a JSON array.
    #[arg(required = true)]
    paths: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum-weight basic fractional matching and minimum fractional cover.
    SolveFractional(Inputs),
    /// Basic optimum with the fewest odd cycles, with every augmentation step.
    MinCycles(Inputs),
    /// Fewest odd cycles over basic optima, with stabilizer lower bounds.
    Gamma(Inputs),
    /// Minimum vertex-stabilizer.
    StabilizeVertices(Inputs),
    /// Edge-stabilizer within a factor of the optimum.
    StabilizeEdges(Inputs),
    /// Stabilize by removing only vertices the instance's matching leaves exposed.
    MStabilize(Inputs),
    /// Whether the maximum-weight matching equals the fractional optimum.
    CheckStability(Inputs),
    /// Brute-force ground truth for small graphs.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        #[arg(long, default_value_t = OracleBudget::default().max_vertices)]
        max_vertices: usize,
        #[arg(long, default_value_t = OracleBudget::default().max_subset_vertices)]
        max_subset_vertices: usize,
        #[command(flatten)]
        inputs: Inputs,
    },
    /// Re-check the certificate in a result document against its instance.
    Verify { instance: PathBuf, result: PathBuf },
    /// Compare the solvers with the oracle on seeded random graphs.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::SolveFractional(_) => "solve-fractional",
            Command::MinCycles(_) => "min-cycles",
            Command::Gamma(_) => "gamma",
            Command::StabilizeVertices(_) => "stabilize-vertices",
            Command::StabilizeEdges(_) => "stabilize-edges",
            Command::MStabilize(_) => "m-stabilize",
            Command::CheckStability(_) => "check-stability",
            Command::Oracle { .. } => "oracle",
            Command::Verify { .. } => "verify",
            Command::Selftest { .. } => "selftest",
        }
    }
}

fn read(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn run_one(cli: &Cli, path: &Path, exec: Execution) -> Result<Output> {
    let inst = load(path)?;
    let g = &inst.graph;
    let start = Instant::now();
    let mut out = match &cli.command {
        Command::SolveFractional(_) => report::solve_fractional_doc(g),
        Command::MinCycles(_) => report::min_cycles_doc(g),
        Command::Gamma(_) => report::gamma_doc(g),
        Command::StabilizeVertices(_) => report::stabilize_vertices_doc(g),
        Command::StabilizeEdges(_) => report::stabilize_edges_doc(g),
        Command::MStabilize(_) => report::m_stabilize_doc(g, inst.require_matching()?)?,
        Command::CheckStability(_) => report::check_stability_doc(g),
        Command::Oracle {
            query,
            max_vertices,
            max_subset_vertices,
            ..
        } => {
            let budget = OracleBudget {
                max_vertices: *max_vertices,
                max_subset_vertices: *max_subset_vertices,
                ..OracleBudget::default()
            };
            let mut out = report::oracle_doc(&inst, *query, &budget, exec)?;
            let q = clap::ValueEnum::to_possible_value(query).expect("no skipped variants");
            out.body.insert("query".into(), q.get_name().into());
            out
        }
        Command::Verify { .. } | Command::Selftest { .. } => unreachable!("not an instance command"),
    };
    if cli.timing {
        out.body.insert("timing_ms".into(), (start.elapsed().as_secs_f64() * 1e3).into());
    }
    out.body.insert("command".into(), cli.command.name().into());
    out.body.insert("instance".into(), instance_hash(&inst).into());
    Ok(out)
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("plain data serializes"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        configure_threads(j);
    }
    let exec = if cli.jobs == Some(1) {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let inputs = match &cli.command {
        Command::Verify { instance, result } => {
            let checked = (|| -> Result<(Value, bool)> {
                let inst = load(instance)?;
                let doc: Value = serde_json::from_str(&read(result)?).context("result is not JSON")?;
                Ok(verify::verify(&inst, &doc))
            })();
            return match checked {
                Ok((v, ok)) => {
                    print(&v);
                    if ok {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => {
                    eprintln!("error: {e:#}");
                    ExitCode::from(1)
                }
            };
        }
        Command::Selftest { seed, count } => {
            let (v, ok) = selftest::run(*seed, *count, exec);
            print(&v);
            return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
        Command::Oracle { inputs, .. } => inputs,
        Command::SolveFractional(i)
        | Command::MinCycles(i)
        | Command::Gamma(i)
        | Command::StabilizeVertices(i)
        | Command::StabilizeEdges(i)
        | Command::MStabilize(i)
        | Command::CheckStability(i) => i,
    };

    if let [path] = inputs.paths.as_slice() {
        return match run_one(&cli, path, exec) {
            Ok(out) => {
                print(&Value::Object(out.body));
                if out.infeasible {
                    ExitCode::from(2)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        };
    }

    // Batch: instances are independent; oracle searches inside run sequentially.
    let results = exec.map(&inputs.paths, |p| run_one(&cli, p, Execution::Sequential));
    let (mut failed, mut infeasible) = (false, false);
    let docs: Vec<Value> = inputs
        .paths
        .iter()
        .zip(results)
        .map(|(p, r)| match r {
            Ok(out) => {
                infeasible |= out.infeasible;
                let mut body = out.body;
                body.insert("path".into(), p.display().to_string().into());
                Value::Object(body)
            }
            Err(e) => {
                failed = true;
                eprintln!("error: {e:#}");
                serde_json::json!({"path": p.display().to_string(), "error": format!("{e:#}")})
            }
        })
        .collect();
    print(&Value::Array(docs));
    if failed {
        ExitCode::from(1)
    } else if infeasible {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
