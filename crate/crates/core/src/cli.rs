//! Command-line front end: argument parsing, dispatch, and deterministic
//! JSON/CSV rendering. `run` is what the binary calls; tests call it directly.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{FieldParams, QSqrtJson};
use crate::error::{Error, Result};
use crate::euler::{constants, d_special, euler_p, predict_moment, EulerContext, DEFAULT_CUTOFF};
use crate::lfun::{afe_value, l_coeffs_charsum, l_coeffs_pointcount, rh_report};
use crate::moments::{
    default_workers, exact_moment, reports_csv, residual_report_from, summarize, Method, DEFAULT_BUDGET,
};
use crate::verify::{run_target, SuiteParams, Target, TargetReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "quadlab", version, about = "Quadratic L-functions over F_q[x]: exact values, moments, predictions, checks")]
pub struct Cli {
    /// Field size (prime, 1 mod 4)
    #[arg(long, global = true, default_value_t = 5)]
    pub q: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Degree up to which Euler products are taken prime by prime
    #[arg(long = "cutoff-degree", global = true, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff_degree: usize,
    /// Worker threads (default: QUADLAB_WORKERS, else all cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Refuse moment runs estimated above this many symbol evaluations
    #[arg(long = "max-cost", global = true, default_value_t = DEFAULT_BUDGET)]
    pub max_cost: f64,
    /// Add wall-clock timing to the output (makes it non-reproducible)
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase", tag = "name")]
pub enum Command {
    /// L(u, χ_D) coefficients, central value and checks for one D
    Lvalue {
        /// ascending coefficients, e.g. "3,2,0,0,1" = x⁴ + 2x + 3
        #[arg(long)]
        d: String,
    },
    /// Exact first moment over H_{2g+2}
    Moment {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        method: Option<Method>,
    },
    /// The four-term prediction and its ingredients
    Predict {
        #[arg(long)]
        g: usize,
        #[arg(long = "sign-toggle", default_value_t = 1, allow_hyphen_values = true)]
        sign_toggle: i32,
    },
    /// Euler-product constants
    Constants,
    /// Run verification targets
    Verify {
        /// poisson | afe | fe | rh | lemma25 | lemma52 | lemma53 | eq517 | appendix | parity | all
        #[arg(long, default_value = "all")]
        target: String,
        #[arg(long = "max-fdeg")]
        max_fdeg: Option<usize>,
        #[arg(long = "g-max")]
        g_max: Option<usize>,
        #[arg(long = "rh-tol", default_value_t = 1e-6)]
        rh_tol: f64,
    },
    /// Exact moments against the prediction for g = 0..=g_max
    Report {
        #[arg(long = "g-max", default_value_t = 2)]
        g_max: usize,
        #[arg(long)]
        method: Option<Method>,
    },
}

/// Everything that determines a run, echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub q: u32,
    pub command: Command,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub cutoff_degree: usize,
    pub workers: usize,
    pub max_cost: f64,
    pub timing: bool,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        Self {
            q: cli.q,
            command: cli.command.clone(),
            format: cli.format,
            out: cli.out.clone(),
            cutoff_degree: cli.cutoff_degree,
            workers: cli.workers.unwrap_or_else(default_workers),
            max_cost: cli.max_cost,
            timing: cli.timing,
        }
    }
}

/// Rendered output plus whether any verification failed.
struct Outcome {
    json: Value,
    csv: String,
    failed: bool,
}

/// Parse `argv` (program name first), run, write the report; returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let cfg = RunConfig::from_cli(&cli);
    let started = Instant::now();
    let outcome = match FieldParams::new(cfg.q).and_then(|fp| dispatch(&cfg, &fp)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "quadlab: {e}");
            return exit_code(&e);
        }
    };
    let mut doc = json!({
        "tool": "quadlab",
        "version": env!("CARGO_PKG_VERSION"),
        "config": cfg,
        "result": outcome.json,
    });
    if cfg.timing {
        doc["elapsed_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&doc).expect("serialisable") + "\n",
        Format::Csv => outcome.csv,
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "quadlab: cannot write output: {e}");
        return 1;
    }
    if outcome.failed {
        1
    } else {
        0
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Field { .. } | Error::Parse { .. } | Error::Domain(_) | Error::Budget { .. } => 2,
        Error::Inconsistent(_) | Error::NoConvergence(_) => 1,
    }
}

fn dispatch(cfg: &RunConfig, fp: &FieldParams) -> Result<Outcome> {
    let q = cfg.q;
    match &cfg.command {
        Command::Lvalue { d } => lvalue(fp, d),
        Command::Moment { g, method } => {
            let method = method.unwrap_or(Method::default_for(*g));
            let m = exact_moment(q, *g, method, cfg.workers, cfg.max_cost)?;
            let exact = QSqrtJson::from(&m.exact);
            let csv = format!(
                "q,g,method,ensemble_size,exact_a,exact_b,exact_float\n{},{},{},{},{},{},{:.12e}\n",
                q, g, method, m.ensemble_size, exact.a, exact.b, exact.float
            );
            Ok(Outcome {
                json: json!({
                    "q": q, "g": g, "method": method, "ensemble_size": m.ensemble_size,
                    "cost_estimate": m.cost_estimate, "exact": exact,
                }),
                csv,
                failed: false,
            })
        }
        Command::Predict { g, sign_toggle } => {
            let ctx = EulerContext::new(q, cfg.cutoff_degree)?;
            let b = predict_moment(*g, &ctx, *sign_toggle)?;
            let v = serde_json::to_value(&b)?;
            Ok(Outcome {
                csv: key_value_csv(&v),
                json: v,
                failed: false,
            })
        }
        Command::Constants => {
            let ctx = EulerContext::new(q, cfg.cutoff_degree)?;
            let p = euler_p(1.0, &ctx)?;
            let v = json!({
                "q": q,
                "cutoff_degree": cfg.cutoff_degree,
                "p1": p.value,
                "plogp": p.logderiv_over_logq,
                "d_special": d_special(&ctx)?,
                "constants": constants(&ctx)?,
            });
            Ok(Outcome {
                csv: key_value_csv(&v),
                json: v,
                failed: false,
            })
        }
        Command::Verify {
            target,
            max_fdeg,
            g_max,
            rh_tol,
        } => {
            let targets: Vec<Target> = if target == "all" {
                Target::ALL.to_vec()
            } else {
                target.split(',').map(|t| t.trim().parse()).collect::<Result<_>>()?
            };
            let params = SuiteParams {
                q,
                max_fdeg: *max_fdeg,
                g_max: *g_max,
                cutoff: cfg.cutoff_degree,
                rh_tol: *rh_tol,
            };
            let reports: Vec<TargetReport> = targets.iter().map(|&t| run_target(t, &params)).collect::<Result<_>>()?;
            let mut csv = String::from("target,passed,checked,failed\n");
            for r in &reports {
                csv.push_str(&format!("{},{},{},{}\n", r.target, r.passed, r.checked, r.failed));
            }
            Ok(Outcome {
                failed: reports.iter().any(|r| !r.passed),
                json: json!({ "passed": reports.iter().all(|r| r.passed), "targets": reports }),
                csv,
            })
        }
        Command::Report { g_max, method } => {
            let ctx = EulerContext::new(q, cfg.cutoff_degree)?;
            let mut reports = Vec::new();
            for g in 0..=*g_max {
                let method = method.unwrap_or(Method::default_for(g));
                let m = exact_moment(q, g, method, cfg.workers, cfg.max_cost)?;
                reports.push(residual_report_from(&m, &ctx, cfg.workers)?);
            }
            let csv = reports_csv(&reports);
            Ok(Outcome {
                json: serde_json::to_value(summarize(reports))?,
                csv,
                failed: false,
            })
        }
    }
}

fn lvalue(fp: &FieldParams, text: &str) -> Result<Outcome> {
    let d = fp.parse(text)?;
    let l = l_coeffs_charsum(fp, &d)?;
    let pc = l_coeffs_pointcount(&d)?;
    let central = l.central_value();
    let deg = d.deg();
    let afe = if deg >= 2 && deg % 2 == 0 {
        Some(afe_value(fp, &d, deg / 2 - 1)?)
    } else {
        None
    };
    let rh = rh_report(&l, 1e-6)?;
    let fe = l.functional_equation_holds();
    let agree = pc == l && afe.as_ref().is_none_or(|a| *a == central);
    let mut csv = String::from("n,c_n,a_n\n");
    for (n, c) in l.c.iter().enumerate() {
        let a = l.a.get(n).map_or(String::new(), |a| a.to_string());
        csv.push_str(&format!("{n},{c},{a}\n"));
    }
    Ok(Outcome {
        json: json!({
            "d": d.to_string(),
            "d_coeffs": d.coeffs(),
            "degree": deg,
            "lambda": l.lambda,
            "delta": l.delta,
            "coeffs": l.c,
            "completed": l.a,
            "central": QSqrtJson::from(&central),
            "afe_value": afe.as_ref().map(QSqrtJson::from),
            "functional_equation": fe,
            "methods_agree": agree,
            "rh": rh,
        }),
        csv,
        failed: !(fe && agree && rh.passed),
    })
}

/// Flatten a JSON object into key,value rows (nested keys dotted).
fn key_value_csv(v: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, out);
                }
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, out);
                }
            }
            Value::String(s) => out.push_str(&format!("{prefix},\"{s}\"\n")),
            other => out.push_str(&format!("{prefix},{other}\n")),
        }
    }
    let mut out = String::from("key,value\n");
    walk("", v, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("quadlab").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn moment_genus_zero() {
        let (code, out, _) = run_str(&["moment", "--q", "5", "--g", "0", "--workers", "1"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["exact"]["text"], "20 − 4√5");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_str(&["moment", "--q", "7", "--g", "0"]).0, 2);
        assert_eq!(run_str(&["lvalue", "--d", "x^^2"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        let (code, _, err) = run_str(&["constants", "--q", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("1 mod 4"));
    }
}
