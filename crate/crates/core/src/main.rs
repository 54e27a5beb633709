use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zetarep::eval::EvalResult;
use zetarep::integral::zeta_integral;
use zetarep::limits::{default_grid, limit_trajectory, TrajectoryKind};
use zetarep::numerics::{fmt_float, ComplexValue, PrecisionContext};
use zetarep::series::{s_n_table, zeta_series};
use zetarep::taylor::{a_table, b_table, c_from_b, digits_for_error, f_consistency, laguerre_table, radius_estimate};
use zetarep::verify::{format_table, run_suite, Suite};
use zetarep::zeros::{refine_zero, scan_zeros_with_threshold, zeros_to_csv, zeros_to_json, DEFAULT_SCAN_THRESHOLD};
use zetarep::ZetaError;

const EXIT_INVALID: u8 = 2;
const EXIT_NONCONVERGENCE: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "zetarep", version, about = "Zeta function evaluators, coefficient tables, Abel-limit trajectories and zero scans")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "ZETAREP_BITS", default_value_t = 128)]
    bits: u32,

    /// Absolute target tolerance. Defaults to 2^-(bits-24).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Largest number of series terms for `eval --method series`.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_terms: usize,

    /// Output format. Each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EvalMethod {
    Series,
    Integral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CoeffArg {
    A,
    B,
    C,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ζ(s) from the binomial series or the integral representation.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_enum, default_value_t = EvalMethod::Integral)]
        method: EvalMethod,
    },
    /// S_1(s) .. S_N(s).
    SnTable {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        n_max: usize,
    },
    /// Taylor coefficients a_n, b_n(y) or the reciprocal coefficients c_n(y).
    Coeffs {
        #[arg(long, value_enum)]
        kind: CoeffArg,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y: f64,
        #[arg(long)]
        n_max: usize,
    },
    /// Radius of convergence of Σ c_n(y) zⁿ estimated from a coefficient window.
    Radius {
        #[arg(long, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, default_value_t = 40)]
        n_max: usize,
        /// First index of the fitting window; the window ends at n_max.
        #[arg(long, default_value_t = 10)]
        window_start: usize,
    },
    /// Laguerre-expansion coefficients ã_n, optionally with the f(z) consistency check at z.
    Laguerre {
        #[arg(long)]
        n_max: usize,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
    },
    /// A limit trajectory as x → 1.
    Limits {
        /// L62_deriv_ratio, L63_value_ratio, L61_phiprime_over_phitilde or psi_over_nphi.
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Truncate every series at this many terms instead of summing in full.
        #[arg(long)]
        n_max: Option<usize>,
        /// Comma-separated x values in (0, 1); defaults to 1 - 10^(-k/2), k = 2..12.
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<f64>>,
    },
    /// Scan the critical line for zeros and refine each candidate.
    Zeros {
        #[arg(long)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = DEFAULT_SCAN_THRESHOLD)]
        threshold: f64,
    },
    /// Run the built-in check suites and print a pass/fail table.
    Verify {
        /// core, series, integral, coeffs, limits or zeros; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
    },
}

enum Failure {
    Zeta(ZetaError),
    Io(String),
    VerifyFailed(String),
}

impl From<ZetaError> for Failure {
    fn from(e: ZetaError) -> Self {
        Failure::Zeta(e)
    }
}

fn exit_code(e: &ZetaError) -> u8 {
    match e {
        ZetaError::NonConvergence { .. } | ZetaError::PrecisionBudget { .. } | ZetaError::Overflow(_) => {
            EXIT_NONCONVERGENCE
        }
        _ => EXIT_INVALID,
    }
}

fn context_json(ctx: &PrecisionContext) -> Value {
    json!({ "bits": ctx.bits(), "target_tol": ctx.target_tol() })
}

fn context_line(command: &str, ctx: &PrecisionContext) -> String {
    format!("# zetarep {command} bits={} target_tol={:e}\n", ctx.bits(), ctx.target_tol())
}

fn envelope(command: &str, ctx: &PrecisionContext, result: Value) -> String {
    let v = json!({ "command": command, "context": context_json(ctx), "result": result });
    let mut s = serde_json::to_string_pretty(&v).expect("json value serializes");
    s.push('\n');
    s
}

fn complex_arg(text: &str, ctx: &PrecisionContext) -> Result<ComplexValue, Failure> {
    Ok(ComplexValue::parse(text, ctx.bits())?)
}

fn pair(c: &ComplexValue, digits: usize) -> (String, String) {
    (fmt_float(c.re(), digits), fmt_float(c.im(), digits))
}

fn eval_digits(r: &EvalResult) -> usize {
    digits_for_error(r.error_estimate, r.value.abs_f64(), r.value.prec())
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let ctx = match cli.tol {
        Some(t) => PrecisionContext::new(cli.bits, t)?,
        None => PrecisionContext::with_bits(cli.bits)?,
    };
    let full_digits = ((ctx.bits() as f64) * std::f64::consts::LOG10_2).floor() as usize;
    match &cli.command {
        Command::Eval { s, method } => {
            let s = complex_arg(s, &ctx)?;
            let r = match method {
                EvalMethod::Series => zeta_series(&s, cli.max_terms, &ctx)?,
                EvalMethod::Integral => zeta_integral(&s, &ctx)?,
            };
            let d = eval_digits(&r);
            let (re, im) = pair(&r.value, d);
            let (sre, sim) = pair(&s, full_digits);
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => Ok(envelope(
                    "eval",
                    &ctx,
                    json!({
                        "s": { "re": sre, "im": sim },
                        "method": r.method,
                        "value": { "re": re, "im": im },
                        "error_estimate": r.error_estimate,
                        "effort": r.effort,
                        "precision_bits": r.precision_bits,
                    }),
                )),
                Format::Csv => Ok(format!(
                    "{}re,im,error_estimate,method,effort,precision_bits\n{re},{im},{:e},{},{},{}\n",
                    context_line("eval", &ctx),
                    r.error_estimate,
                    r.method,
                    r.effort,
                    r.precision_bits
                )),
            }
        }
        Command::SnTable { s, n_max } => {
            let s = complex_arg(s, &ctx)?;
            let t = s_n_table(&s, *n_max, &ctx)?;
            // The tableau runs with enough guard bits that each entry is good to
            // the target tolerance relative to the largest term, |S_1| = 1.
            let err = ctx.target_tol();
            let rows: Vec<(usize, String, String)> = t
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let dr = digits_for_error(err, v.re().to_f64().abs(), ctx.bits());
                    let di = digits_for_error(err, v.im().to_f64().abs(), ctx.bits());
                    (i + 1, fmt_float(v.re(), dr), fmt_float(v.im(), di))
                })
                .collect();
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut out = context_line("sn-table", &ctx);
                    out.push_str("n,re,im\n");
                    for (n, re, im) in rows {
                        let _ = writeln!(out, "{n},{re},{im}");
                    }
                    Ok(out)
                }
                Format::Json => {
                    let (sre, sim) = pair(&s, full_digits);
                    let values: Vec<Value> =
                        rows.into_iter().map(|(n, re, im)| json!({ "n": n, "re": re, "im": im })).collect();
                    Ok(envelope(
                        "sn-table",
                        &ctx,
                        json!({
                            "s": { "re": sre, "im": sim },
                            "n_max": n_max,
                            "error_estimate": err,
                            "precision_bits": t.precision_used,
                            "values": values,
                        }),
                    ))
                }
            }
        }
        Command::Coeffs { kind, y, n_max } => {
            let table = match kind {
                CoeffArg::A => a_table(*n_max, &ctx)?,
                CoeffArg::B => b_table(*y, *n_max, &ctx)?,
                CoeffArg::C => c_from_b(&b_table(*y, *n_max, &ctx)?)?,
            };
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(context_line("coeffs", &ctx) + &table.to_csv()),
                Format::Json => Ok(envelope("coeffs", &ctx, table.to_json())),
            }
        }
        Command::Radius { y, n_max, window_start } => {
            let c = c_from_b(&b_table(*y, *n_max, &ctx)?)?;
            let r = radius_estimate(&c, (*window_start, *n_max))?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    Ok(envelope("radius", &ctx, serde_json::to_value(&r).expect("report serializes")))
                }
                Format::Csv => Ok(format!(
                    "{}y,n_lo,n_hi,radius_estimate,radius_fit,rh_threshold_met\n{},{},{},{:.6e},{:.6e},{}\n",
                    context_line("radius", &ctx),
                    r.y,
                    r.n_window.0,
                    r.n_window.1,
                    r.radius_estimate,
                    r.radius_fit,
                    r.rh_threshold_met
                )),
            }
        }
        Command::Laguerre { n_max, z } => {
            let table = laguerre_table(*n_max, &ctx)?;
            let check = match z {
                Some(z) => {
                    let z = complex_arg(z, &ctx)?;
                    let (direct, series) = f_consistency(&z, *n_max, &ctx)?;
                    Some((z, direct.clone(), series.clone(), direct.dist(&series)))
                }
                None => None,
            };
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut out = context_line("laguerre", &ctx) + &table.to_csv();
                    if let Some((z, direct, series, diff)) = check {
                        let (zr, zi) = pair(&z, full_digits);
                        let (dr, di) = pair(&direct, 20);
                        let (sr, si) = pair(&series, 20);
                        out.push_str("\nz_re,z_im,direct_re,direct_im,series_re,series_im,difference\n");
                        let _ = writeln!(out, "{zr},{zi},{dr},{di},{sr},{si},{diff:.3e}");
                    }
                    Ok(out)
                }
                Format::Json => {
                    let consistency = check.map(|(z, direct, series, diff)| {
                        let c = |v: &ComplexValue| {
                            let (re, im) = pair(v, 20);
                            json!({ "re": re, "im": im })
                        };
                        json!({ "z": c(&z), "direct": c(&direct), "series": c(&series), "difference": diff })
                    });
                    Ok(envelope("laguerre", &ctx, json!({ "table": table.to_json(), "consistency": consistency })))
                }
            }
        }
        Command::Limits { kind, s, n_max, x } => {
            let kind = TrajectoryKind::parse(kind)?;
            let s = complex_arg(s, &ctx)?;
            let grid = x.clone().unwrap_or_else(default_grid);
            let tr = limit_trajectory(kind, &s, &grid, *n_max, &ctx)?;
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(context_line("limits", &ctx) + &tr.to_csv()),
                Format::Json => Ok(envelope("limits", &ctx, tr.to_json())),
            }
        }
        Command::Zeros { t_min, t_max, step, threshold } => {
            let candidates = scan_zeros_with_threshold(*t_min, *t_max, *step, *threshold, &ctx)?;
            let mut records = Vec::with_capacity(candidates.len());
            for t in candidates {
                records.push(refine_zero(&ComplexValue::from_f64(0.5, t, ctx.bits()), &ctx)?);
            }
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(context_line("zeros", &ctx) + &zeros_to_csv(&records)),
                Format::Json => Ok(envelope("zeros", &ctx, zeros_to_json(&records))),
            }
        }
        Command::Verify { suite } => {
            let suites = match suite {
                Some(tag) => vec![Suite::parse(tag)?],
                None => Suite::ALL.to_vec(),
            };
            let outcomes: Vec<_> = suites.into_iter().flat_map(|s| run_suite(s, &ctx)).collect();
            let text = match cli.format {
                None => format_table(&outcomes),
                Some(Format::Csv) => {
                    let mut out = context_line("verify", &ctx);
                    out.push_str("suite,check,passed,detail\n");
                    for o in &outcomes {
                        let _ = writeln!(out, "{},{},{},\"{}\"", o.suite.tag(), o.name, o.passed, o.detail.replace('"', "'"));
                    }
                    out
                }
                Some(Format::Json) => {
                    let rows: Vec<Value> = outcomes
                        .iter()
                        .map(|o| json!({ "suite": o.suite.tag(), "check": o.name, "passed": o.passed, "detail": o.detail }))
                        .collect();
                    envelope("verify", &ctx, Value::Array(rows))
                }
            };
            if outcomes.iter().all(|o| o.passed) {
                Ok(text)
            } else {
                Err(Failure::VerifyFailed(text))
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|text| emit(&cli, &text));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Zeta(e)) => {
            eprintln!("zetarep: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(msg)) => {
            eprintln!("zetarep: cannot write output: {msg}");
            ExitCode::from(EXIT_INVALID)
        }
        Err(Failure::VerifyFailed(text)) => {
            let _ = emit(&cli, &text);
            eprintln!("zetarep: verification failed");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}
