use std::fs;
use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use germlab::germmap::{local_multiplicity_with, reduced_preimage, verify_theorem_with};
use germlab::localsb::{mora_normal_form, LocalOrder, SbOptions, DEFAULT_DEGREE_CAP};
use germlab::milnor::milnor_number_with;
use germlab::parse::{parse_list, parse_map, parse_polynomial, parse_vars};
use germlab::suite::{run_suite, MapSource, SuiteConfig};
use germlab::{Error, MilnorResult, Multiplicity, Polynomial, Ring, Verdict};

const SCHEMA_VERSION: &str = "1";

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

#[derive(Parser)]
#[command(name = "germ-lab", version, about = "Exact Milnor numbers and pullbacks of hypersurface germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Comma-separated variable names, in order. Polynomial, map and ideal
    /// arguments starting with '@' are read from the named file.
    #[arg(long, default_value = "x,y")]
    vars: String,
    /// Degree cap for standard basis computations.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
    /// Emit a JSON report instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Milnor number of a hypersurface germ at the origin.
    Milnor {
        #[command(flatten)]
        common: Common,
        poly: String,
    },
    /// Local multiplicity of a map germ.
    Mult {
        #[command(flatten)]
        common: Common,
        /// Map components separated by ';'.
        #[arg(long)]
        map: String,
    },
    /// Pullback g∘F with its reduced equation and exponent.
    Pullback {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        poly: String,
    },
    /// Compare mu(V) with mu(F^-1(V)).
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        map: String,
        poly: String,
    },
    /// Run a seeded verification suite.
    Suite {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Degree bound for generated maps and germs.
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
        degree_cap: u32,
        /// Replace every fourth catalog germ by a generated one.
        #[arg(long)]
        generated_germs: bool,
        /// Use the identity map for every case.
        #[arg(long)]
        identity_map: bool,
        /// Write the JSON report to this file ('-' for standard output).
        #[arg(long)]
        json: Option<String>,
    },
    /// Mora normal form with respect to an ideal.
    Nf {
        #[command(flatten)]
        common: Common,
        /// Generators separated by ';'.
        #[arg(long)]
        ideal: String,
        poly: String,
    },
}

struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json_mode, json_target) = match &cli.command {
        Command::Suite { json, .. } => (json.is_some(), json.clone()),
        Command::Milnor { common, .. }
        | Command::Mult { common, .. }
        | Command::Pullback { common, .. }
        | Command::Verify { common, .. }
        | Command::Nf { common, .. } => (common.json, None),
    };
    match run(cli.command) {
        Ok(outcome) => {
            let rendered = if json_mode {
                serde_json::to_string_pretty(&outcome.json).expect("serializable") + "\n"
            } else {
                outcome.text
            };
            if let Some(path) = json_target.filter(|p| p != "-") {
                if let Err(e) = fs::write(&path, &rendered) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
                print!("{}", summary_line(&outcome.json));
            } else {
                print!("{rendered}");
            }
            let _ = std::io::stdout().flush();
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::DegreeCapExceeded { .. }
        | Error::CapExceededWithoutStabilization { .. }
        | Error::GenerationExhausted { .. }
        | Error::ZeroPullback
        | Error::NotThroughOrigin => EXIT_UNDECIDED,
        _ => EXIT_INPUT,
    }
}

fn summary_line(report: &Value) -> String {
    let c = &report["result"]["counters"];
    format!(
        "cases {} holds {} violated {} outside_hypotheses {} skipped {}\n",
        c["total"],
        c["holds"],
        c["violated"],
        c["outside_hypotheses"],
        skipped_total(c)
    )
}

fn skipped_total(counters: &Value) -> u64 {
    counters["skipped"]
        .as_object()
        .map(|m| m.values().filter_map(Value::as_u64).sum())
        .unwrap_or(0)
}

fn envelope(command: &str, inputs: Value, result: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "result": result,
    })
}

fn options(degree_cap: u32) -> SbOptions {
    SbOptions {
        degree_cap,
        ..SbOptions::default()
    }
}

fn ring_inputs(ring: &Arc<Ring>) -> Value {
    json!(ring.names())
}

/// The argument itself, or the contents of the file it names after '@'.
fn source(arg: &str) -> Result<String, Error> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Milnor { common, poly } => {
            let ring = parse_vars(&common.vars)?;
            let f = parse_polynomial(&source(&poly)?, &ring)?;
            let mu = milnor_number_with(&f, options(common.degree_cap))?;
            let code = match mu {
                MilnorResult::Finite(_) | MilnorResult::SmoothPoint => EXIT_OK,
                MilnorResult::NonIsolated | MilnorResult::NotThroughOrigin => EXIT_UNDECIDED,
            };
            Ok(Outcome {
                text: format!("{mu}\n"),
                json: envelope(
                    "milnor",
                    json!({"vars": ring_inputs(&ring), "poly": f.to_string()}),
                    serde_json::to_value(mu).expect("serializable"),
                ),
                code,
            })
        }
        Command::Mult { common, map } => {
            let ring = parse_vars(&common.vars)?;
            let map = parse_map(&source(&map)?, &ring)?;
            let m = local_multiplicity_with(&map, options(common.degree_cap))?;
            let (text, code) = match m {
                Multiplicity::Finite(k) => (format!("{k}\n"), EXIT_OK),
                Multiplicity::NotFinite => ("not finite\n".to_string(), EXIT_UNDECIDED),
            };
            Ok(Outcome {
                text,
                json: envelope(
                    "mult",
                    json!({"vars": ring_inputs(&ring), "map": map.to_string()}),
                    serde_json::to_value(m).expect("serializable"),
                ),
                code,
            })
        }
        Command::Pullback { common, map, poly } => {
            let ring = parse_vars(&common.vars)?;
            let map = parse_map(&source(&map)?, &ring)?;
            let g = parse_polynomial(&source(&poly)?, &ring)?;
            let pre = reduced_preimage(&g, &map)?;
            let text = format!(
                "pullback: {}\nh: {}\nr: {}\npure: {}\n",
                pre.pullback, pre.h, pre.r, pre.pure
            );
            Ok(Outcome {
                text,
                json: envelope(
                    "pullback",
                    json!({"vars": ring_inputs(&ring), "map": map.to_string(), "poly": g.to_string()}),
                    serde_json::to_value(&pre).expect("serializable"),
                ),
                code: EXIT_OK,
            })
        }
        Command::Verify { common, map, poly } => {
            let ring = parse_vars(&common.vars)?;
            let map = parse_map(&source(&map)?, &ring)?;
            let g = parse_polynomial(&source(&poly)?, &ring)?;
            let report = verify_theorem_with(&g, &map, options(common.degree_cap));
            let code = match report.inequality {
                Verdict::Holds if report.corollary != Verdict::Violated => EXIT_OK,
                Verdict::Violated | Verdict::Holds => EXIT_VIOLATION,
                Verdict::Skipped(_) => EXIT_UNDECIDED,
            };
            let show = |v: Option<MilnorResult>| v.map_or("-".to_string(), |m| m.to_string());
            let text = format!(
                "mu(V): {}\nmu(W): {}\nh: {}\nr: {}\npure: {}\ninequality: {}\ncorollary: {}\n",
                show(report.mu_v),
                show(report.mu_w),
                report.h.as_ref().map_or("-".to_string(), Polynomial::to_string),
                report.r.map_or("-".to_string(), |r| r.to_string()),
                report.pure.map_or("-".to_string(), |p| p.to_string()),
                report.inequality,
                report.corollary
            );
            Ok(Outcome {
                text,
                json: envelope(
                    "verify",
                    json!({"vars": ring_inputs(&ring), "map": map.to_string(), "poly": g.to_string()}),
                    serde_json::to_value(&report).expect("serializable"),
                ),
                code,
            })
        }
        Command::Suite {
            n,
            cases,
            seed,
            max_degree,
            degree_cap,
            generated_germs,
            identity_map,
            json: _,
        } => {
            let cfg = SuiteConfig {
                seed,
                num_cases: cases,
                n,
                max_degree: max_degree.unwrap_or(if n == 3 { 2 } else { 3 }),
                degree_cap,
                generated_germs,
                map_source: if identity_map {
                    MapSource::Identity
                } else {
                    MapSource::Random
                },
            };
            let report = run_suite(&cfg)?;
            let c = &report.counters;
            let text = format!(
                "cases: {}\nholds: {} (equality {})\nviolated: {}\noutside hypotheses: {}\nskipped: {}\ncorollary violated: {}\npure-power failures: {}\ntime: {} ms\n",
                c.total,
                c.holds,
                c.equality_cases,
                c.violated,
                c.outside_hypotheses,
                c.skipped.total(),
                c.corollary_violated,
                c.pure_power_failures,
                report.timing.total_ms
            );
            let code = if report.success() { EXIT_OK } else { EXIT_VIOLATION };
            Ok(Outcome {
                text,
                json: envelope(
                    "suite",
                    serde_json::to_value(&cfg).expect("serializable"),
                    serde_json::to_value(&report).expect("serializable"),
                ),
                code,
            })
        }
        Command::Nf {
            common,
            ideal,
            poly,
        } => {
            let ring = parse_vars(&common.vars)?;
            let gens = parse_list(&source(&ideal)?, &ring)?;
            let p = parse_polynomial(&source(&poly)?, &ring)?;
            let nf = mora_normal_form(&p, &gens, LocalOrder, common.degree_cap)?;
            let ideal_text: Vec<String> = gens.iter().map(Polynomial::to_string).collect();
            Ok(Outcome {
                text: format!("{nf}\n"),
                json: envelope(
                    "nf",
                    json!({"vars": ring_inputs(&ring), "ideal": ideal_text, "poly": p.to_string()}),
                    json!({"normal_form": nf.to_string()}),
                ),
                code: EXIT_OK,
            })
        }
    }
}
