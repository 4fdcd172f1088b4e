//! The exact first moment Σ_{D ∈ H_{2g+2}} L(1/2, χ_D), and the residual ladder
//! against the four-term prediction.
//!
//! Every method's central value is a fixed Q(√q)-linear form in integer
//! coefficients, so workers only add integers; the single conversion to Q(√q)
//! happens once at the end. That makes the result independent of worker count
//! and of how the index space was split.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ensemble_range, ensemble_size, monic_count, FieldParams, QSqrt, QSqrtJson};
use crate::error::{domain, Error, Result};
use crate::euler::{predict_moment, AsymptoticBreakdown, EulerContext};
use crate::lfun::{afe_from_coeffs, charsum_coeffs, PointCounter};

/// Default refusal threshold, in symbol evaluations.
pub const DEFAULT_BUDGET: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Charsum,
    Pointcount,
    Afe,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Charsum, Method::Pointcount, Method::Afe];

    /// afe from g = 2 on, direct character sums below.
    pub fn default_for(g: usize) -> Self {
        if g >= 2 {
            Method::Afe
        } else {
            Method::Charsum
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Charsum => "charsum",
            Method::Pointcount => "pointcount",
            Method::Afe => "afe",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "charsum" => Ok(Method::Charsum),
            "pointcount" => Ok(Method::Pointcount),
            "afe" => Ok(Method::Afe),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "method must be charsum, pointcount or afe".into(),
            }),
        }
    }
}

/// Estimated work in symbol (or field-character) evaluations.
pub fn moment_cost(q: u32, g: usize, method: Method) -> f64 {
    let n = 2 * g + 2;
    let qf = q as f64;
    let members = ensemble_size(q, n) as f64;
    let geometric = |top: usize| (0..=top).map(|k| qf.powi(k as i32)).sum::<f64>();
    // the square-freeness sieve touches every monic polynomial once
    let sieve = monic_count(q, n) as f64;
    sieve
        + members
            * match method {
                Method::Charsum => geometric(n - 1),
                Method::Afe => geometric(g),
                // character sums over F_{q^j}, j ≤ δ + 1 = g + 1, each a degree-n Horner
                Method::Pointcount => (geometric(g + 1) - 1.0) * n as f64,
            }
}

/// Integer coefficient totals over a slice of the ensemble.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Partial {
    pub members: u64,
    pub totals: Vec<i128>,
}

impl Partial {
    pub fn merge(mut self, other: Partial) -> Partial {
        if self.totals.len() < other.totals.len() {
            self.totals.resize(other.totals.len(), 0);
        }
        for (a, b) in self.totals.iter_mut().zip(&other.totals) {
            *a += b;
        }
        self.members += other.members;
        self
    }

    /// The moment this partial represents.
    pub fn value(&self, q: u32, g: usize, method: Method) -> Result<QSqrt> {
        let totals: Vec<i64> = self
            .totals
            .iter()
            .map(|&t| i64::try_from(t).map_err(|_| Error::Domain("coefficient total overflows i64".into())))
            .collect::<Result<_>>()?;
        Ok(match method {
            Method::Afe => afe_from_coeffs(q, g, &totals),
            _ => crate::lfun::central_from_coeffs(q, &totals),
        })
    }
}

/// Shared read-only state for one moment computation.
pub struct MomentJob {
    fp: FieldParams,
    g: usize,
    method: Method,
    counter: Option<PointCounter>,
}

impl MomentJob {
    pub fn new(q: u32, g: usize, method: Method) -> Result<Self> {
        let fp = FieldParams::new(q)?;
        let counter = (method == Method::Pointcount).then(|| PointCounter::for_degree(q, 2 * g + 2));
        Ok(Self { fp, g, method, counter })
    }

    pub fn n(&self) -> usize {
        2 * self.g + 2
    }

    /// Number of monic polynomials of degree 2g + 2 (the index space).
    pub fn index_space(&self) -> u64 {
        monic_count(self.fp.q(), self.n())
    }

    /// Totals over the members of H_{2g+2} whose monic index lies in `range`.
    pub fn partial(&self, range: Range<u64>) -> Result<Partial> {
        let q = self.fp.q();
        let n = self.n();
        let width = match self.method {
            Method::Afe => self.g + 1,
            _ => n,
        };
        let mut out = Partial {
            members: 0,
            totals: vec![0; width],
        };
        for d in ensemble_range(q, n, range) {
            let c = match self.method {
                Method::Charsum => charsum_coeffs(&self.fp, d.coeffs(), n - 1),
                Method::Afe => charsum_coeffs(&self.fp, d.coeffs(), self.g),
                Method::Pointcount => self.counter.as_ref().expect("built for pointcount").l_coeffs(&d)?.c,
            };
            for (t, x) in out.totals.iter_mut().zip(c) {
                *t += x as i128;
            }
            out.members += 1;
        }
        Ok(out)
    }
}

/// Result of an exact moment run.
#[derive(Debug, Clone)]
pub struct MomentResult {
    pub q: u32,
    pub g: usize,
    pub method: Method,
    pub ensemble_size: u64,
    pub exact: QSqrt,
    pub cost_estimate: f64,
}

/// Worker count from QUADLAB_WORKERS, else the machine's parallelism.
pub fn default_workers() -> usize {
    std::env::var("QUADLAB_WORKERS")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&w| w >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Σ_{D ∈ H_{2g+2}} L(1/2, χ_D) exactly in Q(√q).
pub fn exact_moment(q: u32, g: usize, method: Method, workers: usize, budget: f64) -> Result<MomentResult> {
    let cost = moment_cost(q, g, method);
    if cost > budget {
        return Err(Error::Budget {
            estimate: cost,
            budget,
        });
    }
    if workers == 0 {
        return domain("workers must be at least 1");
    }
    let job = MomentJob::new(q, g, method)?;
    let space = job.index_space();
    let chunks = (workers as u64 * 16).min(space).max(1);
    let step = space.div_ceil(chunks);
    let ranges: Vec<Range<u64>> = (0..chunks)
        .map(|i| (i * step).min(space)..((i + 1) * step).min(space))
        .filter(|r| !r.is_empty())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let partials: Vec<Partial> =
        pool.install(|| ranges.into_par_iter().map(|r| job.partial(r)).collect::<Result<_>>())?;
    let total = partials.into_iter().fold(Partial::default(), Partial::merge);
    let expected = ensemble_size(q, job.n());
    if total.members != expected {
        return Err(Error::Inconsistent(format!(
            "enumerated {} members, expected {expected}",
            total.members
        )));
    }
    Ok(MomentResult {
        q,
        g,
        method,
        ensemble_size: expected,
        exact: total.value(q, g, method)?,
        cost_estimate: cost,
    })
}

/// One rung of the ladder for a fixed sign of the ζ_A(1/2) bracket term.
#[derive(Debug, Clone, Serialize)]
pub struct ToggleResiduals {
    pub sign_toggle: i32,
    pub t1: f64,
    pub total: f64,
    pub after_t1: f64,
    pub after_t1t2: f64,
    pub after_all: f64,
    /// after_all with R0 built from the printed log-derivative display
    pub after_all_r0_printed: f64,
    pub rel_after_t1: f64,
    /// |after_T1| ≥ |after_T1T2| ≥ |after_all|
    pub ladder_monotone: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub q: u32,
    pub g: usize,
    pub method: Method,
    pub ensemble_size: u64,
    pub exact: QSqrtJson,
    pub exact_float: f64,
    /// breakdown of the prediction with the winning sign
    pub breakdown: AsymptoticBreakdown,
    pub residuals: Vec<ToggleResiduals>,
    /// sign whose full prediction leaves the smaller |after_all|
    pub winning_toggle: i32,
    /// log_q|after_all| / g for the winning sign (g ≥ 1)
    pub residual_exponent: Option<f64>,
    pub workers: usize,
}

fn ladder(exact: f64, b: &AsymptoticBreakdown) -> ToggleResiduals {
    let q = b.q as f64;
    let n = (2 * b.g + 2) as f64;
    let t2_printed = q.powf(n / 3.0) * (b.constants.r1 * n + b.constants.r0_printed);
    let after_t1 = exact - b.t1;
    let after_t1t2 = after_t1 - b.t2;
    let after_all = after_t1t2 - b.t3 - b.t4;
    ToggleResiduals {
        sign_toggle: b.sign_toggle,
        t1: b.t1,
        total: b.total,
        after_t1,
        after_t1t2,
        after_all,
        after_all_r0_printed: exact - (b.t1 + t2_printed + b.t3 + b.t4),
        rel_after_t1: after_t1.abs() / b.t1.abs(),
        ladder_monotone: after_t1.abs() >= after_t1t2.abs() && after_t1t2.abs() >= after_all.abs(),
    }
}

/// Residual ladder for an already computed moment.
pub fn residual_report_from(result: &MomentResult, ctx: &EulerContext, workers: usize) -> Result<MomentReport> {
    if ctx.q() != result.q {
        return domain("Euler context built for a different q");
    }
    let exact_float = result.exact.to_f64();
    let plus = predict_moment(result.g, ctx, 1)?;
    let minus = predict_moment(result.g, ctx, -1)?;
    let residuals = vec![ladder(exact_float, &plus), ladder(exact_float, &minus)];
    let (winning_toggle, breakdown) = if residuals[0].after_all.abs() <= residuals[1].after_all.abs() {
        (1, plus)
    } else {
        (-1, minus)
    };
    let win = &residuals[if winning_toggle == 1 { 0 } else { 1 }];
    let residual_exponent =
        (result.g >= 1).then(|| win.after_all.abs().ln() / (result.q as f64).ln() / result.g as f64);
    Ok(MomentReport {
        q: result.q,
        g: result.g,
        method: result.method,
        ensemble_size: result.ensemble_size,
        exact: QSqrtJson::from(&result.exact),
        exact_float,
        breakdown,
        residuals,
        winning_toggle,
        residual_exponent,
        workers,
    })
}

pub fn residual_report(
    g: usize,
    ctx: &EulerContext,
    method: Method,
    workers: usize,
    budget: f64,
) -> Result<MomentReport> {
    let result = exact_moment(ctx.q(), g, method, workers, budget)?;
    residual_report_from(&result, ctx, workers)
}

/// Ladder over g = 0..=g_max with the cross-g conclusions.
#[derive(Debug, Clone, Serialize)]
pub struct LadderSummary {
    pub reports: Vec<MomentReport>,
    /// the sign winning at every g ≥ 1, if one does
    pub consistent_toggle: Option<i32>,
    /// |exact − T1|/T1 strictly decreasing in g (winning sign at each g)
    pub rel_after_t1_decreasing: bool,
    /// |exact − T1|/T1 strictly decreasing in g for each fixed sign (+1, −1)
    pub rel_after_t1_decreasing_by_toggle: [bool; 2],
}

pub fn summarize(reports: Vec<MomentReport>) -> LadderSummary {
    let winners: Vec<i32> = reports.iter().filter(|r| r.g >= 1).map(|r| r.winning_toggle).collect();
    let consistent_toggle = match winners.first() {
        Some(&w) if winners.iter().all(|&x| x == w) => Some(w),
        _ => None,
    };
    let decreasing = |vals: Vec<f64>| vals.windows(2).all(|w| w[1] < w[0]);
    let rel_win: Vec<f64> = reports
        .iter()
        .map(|r| {
            r.residuals
                .iter()
                .find(|t| t.sign_toggle == r.winning_toggle)
                .map_or(f64::NAN, |t| t.rel_after_t1)
        })
        .collect();
    let by = |i: usize| decreasing(reports.iter().map(|r| r.residuals[i].rel_after_t1).collect());
    LadderSummary {
        consistent_toggle,
        rel_after_t1_decreasing: decreasing(rel_win),
        rel_after_t1_decreasing_by_toggle: [by(0), by(1)],
        reports,
    }
}

/// CSV, one row per g, winning sign.
pub fn reports_csv(reports: &[MomentReport]) -> String {
    let mut out = String::from(
        "g,ensemble_size,exact_a,exact_b,exact_float,T1,T2,T3,T4,after_T1,after_T1T2,after_all,winning_toggle\n",
    );
    for r in reports {
        let b = &r.breakdown;
        let res = r
            .residuals
            .iter()
            .find(|t| t.sign_toggle == r.winning_toggle)
            .expect("winning sign present");
        out.push_str(&format!(
            "{},{},{},{},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}\n",
            r.g,
            r.ensemble_size,
            r.exact.a,
            r.exact.b,
            r.exact_float,
            b.t1,
            b.t2,
            b.t3,
            b.t4,
            res.after_t1,
            res.after_t1t2,
            res.after_all,
            r.winning_toggle
        ));
    }
    out
}

/// Closed form at g = 0: every D ∈ H_2 has L(u) = 1 − u.
pub fn genus_zero_moment(q: u32) -> QSqrt {
    let size = BigRational::from_integer(BigInt::from((q as u64 - 1) * q as u64));
    (&QSqrt::one(q) - &QSqrt::q_half_pow(q, -1)).scale(&size)
}
