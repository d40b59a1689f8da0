//! `acute`: build, search, generate and certify acute point sets.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acute_core::basecases::{self, SearchConfig};
use acute_core::doubling::{self, ConstructOptions};
use acute_core::geometry::{Meta, PointSet, FORMAT_VERSION};
use acute_core::verifier::{self, Mode, Verdict, DEFAULT_FLOAT_TOLERANCE};
use acute_core::{ef, io, rational, Error};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (point-set format v1)");

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "acute", version = VERSION, about = "Construct and certify acute point sets")]
struct Cli {
    /// Worker threads for verification (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an acute set in R^d by repeated doubling of a catalog base.
    Construct {
        #[arg(short = 'd')]
        dim: usize,
        /// Recompute the exact minimum apex dot after every doubling step.
        #[arg(long)]
        recheck_exact: bool,
        /// Catalog entry to start from (d1..d5).
        #[arg(long)]
        base: Option<String>,
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Check acuteness of a point set (exact JSON or float CSV).
    Verify {
        input: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        csv: CsvArgs,
        /// Also write the report to this file.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Annealing search for an exactly certified acute set.
    Search {
        #[arg(short = 'd')]
        dim: usize,
        #[arg(short = 'n')]
        size: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        iters: Option<u64>,
        #[arg(long = "max-denom")]
        max_denom: Option<u64>,
        /// Minimum float cosine before exact certification is attempted.
        #[arg(long)]
        margin: Option<f64>,
        #[arg(long)]
        temperature: Option<f64>,
        /// Per-iteration temperature factor, in (0, 1).
        #[arg(long)]
        cooling: Option<f64>,
        /// Initial perturbation size.
        #[arg(long)]
        step: Option<f64>,
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Random hypercube vertices with right-angle deletion.
    Ef {
        #[arg(short = 'd')]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(short = 'o')]
        output: PathBuf,
    },
    /// Print size, dimension, exact s and smallest angle.
    Stats {
        input: PathBuf,
        #[command(flatten)]
        csv: CsvArgs,
    },
    /// Write a point set as float CSV.
    Export {
        input: PathBuf,
        #[arg(short = 'o')]
        output: PathBuf,
    },
}

#[derive(Args)]
struct ModeArgs {
    /// Exact rational verification (default for JSON input).
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Floating-point verification (default for CSV input).
    #[arg(long)]
    float: bool,
    #[arg(long, default_value_t = DEFAULT_FLOAT_TOLERANCE)]
    tol: f64,
}

#[derive(Args)]
struct CsvArgs {
    /// Rationalize CSV coordinates with this maximum denominator.
    #[arg(long)]
    rationalize: Option<u64>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CertificateMismatch { .. } => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn read_point_set(path: &Path, csv: &CsvArgs) -> Result<PointSet, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    let with_path = |e: Error| {
        let f = Failure::from(e);
        Failure {
            message: format!("{}: {}", path.display(), f.message),
            ..f
        }
    };
    if is_csv(path) {
        let rows = io::read_csv(text.as_bytes()).map_err(with_path)?;
        io::point_set_from_floats(&rows, csv.rationalize, Meta::default()).map_err(with_path)
    } else {
        io::from_json(&text).map_err(with_path)
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: format!("{}: {e}", path.display()),
    })
}

fn print_json(value: &serde_json::Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    );
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(input_error("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure {
                code: EXIT_INTERNAL,
                message: e.to_string(),
            })?;
    }
    match cli.command {
        Command::Construct {
            dim,
            recheck_exact,
            base,
            output,
        } => {
            let base = base
                .as_deref()
                .map(basecases::parse_catalog_id)
                .transpose()?;
            let (set, trace) = doubling::construct_with(
                dim,
                &ConstructOptions {
                    base,
                    recheck_exact,
                },
            )?;
            write_file(&output, io::to_json(&set).as_bytes())?;
            let last_bound = trace
                .steps
                .last()
                .map(|s| rational::format_rational(&s.s_next));
            print_json(&json!({
                "dim": set.dim(),
                "n": set.len(),
                "base_id": trace.base_id,
                "steps": trace.steps.len(),
                "s_lower_bound": last_bound,
                "output": output.display().to_string(),
            }));
            Ok(EXIT_OK)
        }
        Command::Verify {
            input,
            mode,
            csv,
            output,
        } => {
            let use_float =
                mode.float || (!mode.exact && is_csv(&input) && csv.rationalize.is_none());
            if is_csv(&input) && !use_float && csv.rationalize.is_none() {
                return Err(input_error(
                    "exact verification of CSV input needs --rationalize <max-denom>",
                ));
            }
            let set = read_point_set(&input, &csv)?;
            let mode = if use_float {
                Mode::Float {
                    tolerance: mode.tol,
                }
            } else {
                Mode::Exact
            };
            let report = verifier::verify_acute(&set, mode)?;
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            if let Some(path) = output {
                write_file(&path, text.as_bytes())?;
            }
            println!("{text}");
            Ok(if report.verdict == Verdict::Acute {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Search {
            dim,
            size,
            seed,
            iters,
            max_denom,
            margin,
            temperature,
            cooling,
            step,
            output,
        } => {
            let mut cfg = SearchConfig::new(dim, size, seed);
            cfg.initial_temperature = temperature.unwrap_or(cfg.initial_temperature);
            cfg.cooling_rate = cooling.unwrap_or(cfg.cooling_rate);
            cfg.perturbation_scale = step.unwrap_or(cfg.perturbation_scale);
            cfg.max_iters = iters.unwrap_or(cfg.max_iters);
            cfg.max_denominator = max_denom.unwrap_or(cfg.max_denominator);
            cfg.margin = margin.unwrap_or(cfg.margin);
            match basecases::search_acute(&cfg)? {
                Some(entry) => {
                    write_file(&output, io::to_json(&entry.points).as_bytes())?;
                    print_json(&json!({
                        "found": true,
                        "dim": dim,
                        "n": size,
                        "seed": seed,
                        "s_min": entry.certificate.s_min.as_ref().map(rational::format_rational),
                        "min_angle_deg": entry.certificate.min_angle_deg,
                        "output": output.display().to_string(),
                    }));
                    Ok(EXIT_OK)
                }
                None => {
                    print_json(&json!({ "found": false, "dim": dim, "n": size, "seed": seed }));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Ef {
            dim,
            seed,
            samples,
            output,
        } => {
            let run = ef::ef_generate(dim, seed, samples)?;
            let report = verifier::verify_acute(&run.output, Mode::Exact)?;
            if !report.verdict.is_acute() {
                return Err(Failure {
                    code: EXIT_INTERNAL,
                    message: "ef output failed certification".into(),
                });
            }
            write_file(&output, io::to_json(&run.output).as_bytes())?;
            let mut summary = serde_json::to_value(&run).expect("runs serialize");
            summary["output_size"] = json!(run.output.len());
            summary["verdict"] = json!(report.verdict);
            summary["output"] = json!(output.display().to_string());
            print_json(&summary);
            Ok(EXIT_OK)
        }
        Command::Stats { input, csv } => {
            let set = read_point_set(&input, &csv)?;
            let s_min = verifier::min_apex_dot(&set).ok().map(|(s, _)| s);
            print_json(&json!({
                "n": set.len(),
                "dim": set.dim(),
                "s_min": s_min.as_ref().map(rational::format_rational),
                "s_min_approx": s_min.as_ref().map(rational::to_f64),
                "min_angle_deg": verifier::min_angle_deg(&set).ok(),
                "format_version": FORMAT_VERSION,
            }));
            Ok(EXIT_OK)
        }
        Command::Export { input, output } => {
            let set = read_point_set(&input, &CsvArgs { rationalize: None })?;
            let mut buf = Vec::new();
            io::write_csv(&set, &mut buf).map_err(Failure::from)?;
            write_file(&output, &buf)?;
            Ok(EXIT_OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(cli));
    match outcome {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(f)) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}
