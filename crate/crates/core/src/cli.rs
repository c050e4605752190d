//! Command-line front end.
//!
//! [`run`] does all the work and returns the exit code together with what
//! would go to stdout and stderr, so the binary is a two-line wrapper and
//! tests can drive the CLI in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::mtcm::{mtcm_dispatch, mtcm_optimize, mtcm_oracle, MtcmResult, OptimizerConfig, OracleConfig};
use crate::nac::{NacTree, NestingReport};
use crate::sealevel::{format_report, sealevel_report, sealevel_surface, write_report_csv, write_surface_csv, SeaLevelLabel};
use crate::schema::{parse_stdf, parse_tail_copula, read_json_file, to_json_string};
use crate::stdf::ValidationReport;
use crate::tail_copula::TailCopulaModel;
use crate::{Error, Result};

pub const SEED_ENV: &str = "TAILMAX_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// Closed form when one applies, numerical search otherwise.
    Auto,
    /// Always run the numerical search.
    Optimizer,
}

#[derive(Debug, Parser)]
#[command(name = "tailmax", version, about = "Tail copulas and maximal tail concordance")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Seed for the random starts; overrides TAILMAX_SEED and --config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Number of random starts in addition to the diagonal start.
    #[arg(long, global = true)]
    pub starts: Option<usize>,

    /// Optimizer settings as JSON (fields starts, seed, max_evals, range_log, tol).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the tail copula at a point.
    Eval {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, value_name = "X1,X2,...", allow_hyphen_values = true)]
        x: String,
    },
    /// Compute the maximal tail concordance measure and its maximizer.
    Mtcm {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodChoice,
    },
    /// Brute-force grid search over the unit-product set (d <= 4).
    Oracle {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        /// Grid points per axis.
        #[arg(long, default_value_t = 201)]
        grid_n: usize,
        /// Half-width of the grid in log coordinates.
        #[arg(long, allow_hyphen_values = true)]
        log_range: Option<f64>,
        /// Skip the local refinement grid.
        #[arg(long)]
        no_refine: bool,
    },
    /// Closed-form results and nesting check for a nested Archimedean tree.
    Nac {
        #[arg(long, value_name = "FILE")]
        tree: PathBuf,
    },
    /// Compare the five sea-level models with their published values.
    Sealevel,
    /// Objective surface of a sea-level model on a log grid.
    Surface {
        #[arg(long, default_value = "I-2")]
        label: String,
        #[arg(long, default_value_t = 101)]
        grid_n: usize,
        #[arg(long, allow_hyphen_values = true)]
        log_range: Option<f64>,
    },
    /// Randomized checks of the stable tail dependence function axioms.
    Validate {
        #[arg(long, value_name = "FILE")]
        model: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

/// Exit code, stdout and stderr of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    body: String,
    failed: bool,
    warnings: Vec<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output {
            body,
            failed: false,
            warnings: Vec::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(out) => {
            let mut stderr = String::new();
            for w in &out.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let code = if out.failed { 1 } else { 0 };
            match &cli.out {
                Some(path) => match std::fs::write(path, &out.body) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr,
                    },
                    Err(e) => {
                        let _ = writeln!(stderr, "error: {}: {e}", path.display());
                        Outcome {
                            code: 2,
                            stdout: String::new(),
                            stderr,
                        }
                    }
                },
                None => Outcome {
                    code,
                    stdout: out.body,
                    stderr,
                },
            }
        }
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TailCopulaOutOfRange { .. } => 1,
        _ => 2,
    }
}

/// Seed precedence: `--seed`, then a seed in `--config`, then
/// `TAILMAX_SEED`, then the built-in default.
fn optimizer_config(cli: &Cli) -> Result<OptimizerConfig> {
    let mut seed_from_file = false;
    let mut config = match &cli.config {
        Some(path) => {
            let value = read_json_file(path)?;
            seed_from_file = value.get("seed").is_some();
            serde_path_to_error::deserialize::<_, OptimizerConfig>(&value).map_err(|e| Error::Schema {
                path: format!("{}: {}", path.display(), e.path()),
                message: e.into_inner().to_string(),
            })?
        }
        None => OptimizerConfig::default(),
    };
    if !seed_from_file {
        if let Ok(v) = std::env::var(SEED_ENV) {
            config.seed = v.trim().parse().map_err(|_| Error::Schema {
                path: SEED_ENV.into(),
                message: format!("expected an unsigned integer, got `{v}`"),
            })?;
        }
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(starts) = cli.starts {
        config.starts = starts;
    }
    config.validate()?;
    Ok(config)
}

fn load_model(path: &Path) -> Result<TailCopulaModel> {
    parse_tail_copula(&read_json_file(path)?).map_err(|e| in_file(e, path))
}

fn in_file(e: Error, path: &Path) -> Error {
    match e {
        Error::Schema { path: inner, message } => Error::Schema {
            path: format!("{}: {inner}", path.display()),
            message,
        },
        other => other,
    }
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<f64>> {
    let x = text
        .split(',')
        .enumerate()
        .map(|(i, s)| {
            s.trim().parse::<f64>().map_err(|_| Error::Schema {
                path: format!("--x[{i}]"),
                message: format!("expected a number, got `{}`", s.trim()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if x.len() != dim {
        return Err(Error::Schema {
            path: "--x".into(),
            message: format!("the model has dimension {dim}, got {} coordinates", x.len()),
        });
    }
    Ok(x)
}

fn json_body<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    to_json_string(value)
}

fn fmt6(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn csv_join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn b_header(d: usize) -> String {
    (1..=d).map(|j| format!("b{j}")).collect::<Vec<_>>().join(",")
}

fn mtcm_body(result: &MtcmResult, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json_body(result)?,
        Format::Csv => format!(
            "lambda_star,{},method,converged\n{},{},{},{}\n",
            b_header(result.b_star.len()),
            result.lambda_star,
            csv_join(&result.b_star),
            result.method.as_str(),
            result.diagnostics.converged
        ),
        Format::Text => {
            let d = &result.diagnostics;
            format!(
                "lambda* = {:.6}\nb*      = {}\nmethod  = {}\nstarts {}  best start {}  evaluations {}  converged {}\n",
                result.lambda_star,
                fmt6(&result.b_star),
                result.method.as_str(),
                d.starts_used,
                d.best_start,
                d.function_evals,
                d.converged
            )
        }
    })
}

fn execute(cli: &Cli) -> Result<Output> {
    let format = cli.format.unwrap_or(match cli.command {
        Command::Surface { .. } => Format::Csv,
        _ => Format::Text,
    });
    match &cli.command {
        Command::Eval { model, x } => {
            let m = load_model(model)?;
            let x = parse_point(x, m.dim())?;
            let value = m.eval(&x).map_err(|e| match e {
                Error::NegativeCoordinate { index, value } => Error::Schema {
                    path: format!("--x[{index}]"),
                    message: format!("must be nonnegative, got {value}"),
                },
                Error::NonFinite { index } => Error::Schema {
                    path: format!("--x[{index}]"),
                    message: "must be finite".into(),
                },
                other => other,
            })?;
            Ok(Output::ok(match format {
                Format::Json => json_body(&json!({ "x": x, "lambda": value }))?,
                Format::Csv => format!("lambda\n{value}\n"),
                Format::Text => format!("{value:.6}\n"),
            }))
        }
        Command::Mtcm { model, method } => {
            let m = load_model(model)?;
            let config = optimizer_config(cli)?;
            let result = match method {
                MethodChoice::Auto => mtcm_dispatch(&m, &config)?,
                MethodChoice::Optimizer => mtcm_optimize(&m, &config)?,
            };
            let mut out = Output::ok(mtcm_body(&result, format)?);
            if !result.diagnostics.converged {
                out.failed = true;
                out.warnings.push("the search did not converge within the evaluation budget".into());
            }
            Ok(out)
        }
        Command::Oracle {
            model,
            grid_n,
            log_range,
            no_refine,
        } => {
            let m = load_model(model)?;
            let defaults = OracleConfig::default();
            let config = OracleConfig {
                grid_points: *grid_n,
                log_range: log_range.unwrap_or(defaults.log_range),
                refine: !no_refine,
            };
            let result = mtcm_oracle(&m, &config)?;
            Ok(Output::ok(mtcm_body(&result, format)?))
        }
        Command::Nac { tree } => nac_command(tree, format),
        Command::Sealevel => {
            let config = optimizer_config(cli)?;
            let rows = sealevel_report(&config)?;
            let body = match format {
                Format::Json => json_body(&rows)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_report_csv(&rows, &mut buf)?;
                    String::from_utf8(buf).expect("CSV is ASCII")
                }
                Format::Text => format_report(&rows),
            };
            let mut out = Output::ok(body);
            if let Some(bad) = rows.iter().find(|r| !r.pass) {
                out.failed = true;
                out.warnings.push(format!("model {} is out of tolerance", bad.label));
            }
            Ok(out)
        }
        Command::Surface {
            label,
            grid_n,
            log_range,
        } => {
            let label: SeaLevelLabel = label.parse()?;
            let points = sealevel_surface(label, *grid_n, log_range.unwrap_or(10f64.ln()))?;
            let body = match format {
                Format::Json => json_body(&points)?,
                Format::Csv | Format::Text => {
                    let mut buf = Vec::new();
                    write_surface_csv(&points, &mut buf)?;
                    String::from_utf8(buf).expect("CSV is ASCII")
                }
            };
            Ok(Output::ok(body))
        }
        Command::Validate { model, samples } => {
            let stdf = parse_stdf(&read_json_file(model)?).map_err(|e| in_file(e, model))?;
            let seed = optimizer_config(cli)?.seed;
            let report = stdf.validate(*samples, seed);
            let mut out = Output::ok(validation_body(&report, format)?);
            out.failed = !report.passed;
            Ok(out)
        }
    }
}

fn validation_body(report: &ValidationReport, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => json_body(report)?,
        Format::Csv => format!(
            "samples,passed,failures,worst_bound_violation,worst_homogeneity_violation\n{},{},{},{},{}\n",
            report.samples,
            report.passed,
            report.failures,
            report.worst_bound_violation,
            report.worst_homogeneity_violation
        ),
        Format::Text => format!(
            "{} samples, {} failures, worst bound violation {:.6e}, worst homogeneity violation {:.6e}: {}\n",
            report.samples,
            report.failures,
            report.worst_bound_violation,
            report.worst_homogeneity_violation,
            if report.passed { "pass" } else { "FAIL" }
        ),
    })
}

fn load_tree(path: &Path) -> Result<NacTree> {
    let value = read_json_file(path)?;
    // A full model description with family "nac" is accepted as well.
    if value.get("family").is_some() {
        let model = parse_tail_copula(&value).map_err(|e| in_file(e, path))?;
        return match model.kind() {
            crate::tail_copula::TailCopulaKind::Nac(tree) => Ok(tree.clone()),
            _ => Err(Error::Schema {
                path: format!("{}: family", path.display()),
                message: "expected a nested Archimedean tree".into(),
            }),
        };
    }
    NacTree::from_json(&value).map_err(|e| in_file(e, path))
}

#[derive(Serialize)]
struct NacSummary<'a> {
    lambda_star: f64,
    lambda_star_recursive: f64,
    b_star: Vec<f64>,
    nesting: &'a NestingReport,
    tree: Value,
}

fn nac_command(path: &Path, format: Format) -> Result<Output> {
    let tree = load_tree(path)?;
    let root = tree.root();
    let summary = NacSummary {
        lambda_star: tree.mtcm_closed(root)?,
        lambda_star_recursive: tree.mtcm_recursive(),
        b_star: tree.maximizer(root)?,
        nesting: &tree.check_clayton_nesting(),
        tree: tree.to_json(),
    };
    let body = match format {
        Format::Json => json_body(&summary)?,
        Format::Csv => format!(
            "lambda_star,lambda_star_recursive,{},nesting_valid\n{},{},{},{}\n",
            b_header(summary.b_star.len()),
            summary.lambda_star,
            summary.lambda_star_recursive,
            csv_join(&summary.b_star),
            summary.nesting.valid
        ),
        Format::Text => {
            let mut s = format!(
                "lambda* = {:.6}\nb*      = {}\nnesting = {}\n",
                summary.lambda_star,
                fmt6(&summary.b_star),
                if summary.nesting.valid { "valid" } else { "violated" }
            );
            for v in &summary.nesting.violations {
                let _ = writeln!(
                    s,
                    "  vertex {} (alpha {}) under vertex {} (alpha {})",
                    v.child, v.child_alpha, v.parent, v.parent_alpha
                );
            }
            s
        }
    };
    let mut out = Output::ok(body);
    if !summary.nesting.valid {
        out.warnings.push(format!(
            "{} child vertices have a smaller alpha than their parent; the Clayton nesting condition fails",
            summary.nesting.violations.len()
        ));
    }
    Ok(out)
}
