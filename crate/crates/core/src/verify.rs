//! The verification suite: one function per target, each returning a
//! self-describing report. The `verify` subcommand is a thin wrapper.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{ensemble, monic_polys, monic_up_to, FieldParams};
use crate::cyclotomic::verify_poisson;
use crate::error::{Error, Result};
use crate::euler::EulerContext;
use crate::lfun::{afe_value, l_coeffs_charsum, l_coeffs_pointcount, rh_report, verify_lemma25};
use crate::series::{
    appendix_identity, inductive_step, verify_eq517, verify_lemma52, verify_lemma53, verify_parity_identities,
    Parity,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Poisson,
    Afe,
    Fe,
    Rh,
    Lemma25,
    Lemma52,
    Lemma53,
    Eq517,
    Appendix,
    Parity,
}

impl Target {
    pub const ALL: [Target; 10] = [
        Target::Poisson,
        Target::Afe,
        Target::Fe,
        Target::Rh,
        Target::Lemma25,
        Target::Lemma52,
        Target::Lemma53,
        Target::Eq517,
        Target::Appendix,
        Target::Parity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Poisson => "poisson",
            Target::Afe => "afe",
            Target::Fe => "fe",
            Target::Rh => "rh",
            Target::Lemma25 => "lemma25",
            Target::Lemma52 => "lemma52",
            Target::Lemma53 => "lemma53",
            Target::Eq517 => "eq517",
            Target::Appendix => "appendix",
            Target::Parity => "parity",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Target::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| Error::Parse {
            input: s.to_string(),
            reason: "unknown verify target".into(),
        })
    }
}

/// Knobs for the suite; `None` picks each target's default.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteParams {
    pub q: u32,
    pub max_fdeg: Option<usize>,
    pub g_max: Option<usize>,
    pub cutoff: usize,
    pub rh_tol: f64,
}

impl SuiteParams {
    pub fn new(q: u32) -> Self {
        Self {
            q,
            max_fdeg: None,
            g_max: None,
            cutoff: crate::euler::DEFAULT_CUTOFF,
            rh_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TargetReport {
    pub target: Target,
    pub passed: bool,
    pub checked: u64,
    pub failed: u64,
    pub details: Value,
}

fn tally(target: Target, results: Vec<bool>, details: Value) -> TargetReport {
    let failed = results.iter().filter(|&&b| !b).count() as u64;
    TargetReport {
        target,
        passed: failed == 0 && !results.is_empty(),
        checked: results.len() as u64,
        failed,
        details,
    }
}

pub fn run_target(target: Target, p: &SuiteParams) -> Result<TargetReport> {
    let fp = FieldParams::new(p.q)?;
    match target {
        Target::Poisson => poisson(&fp, p.max_fdeg.unwrap_or(4)),
        Target::Afe => afe(&fp, p.g_max.unwrap_or(2)),
        Target::Fe => fe(&fp, p.g_max.unwrap_or(2)),
        Target::Rh => rh(&fp, p.g_max.unwrap_or(2), p.rh_tol),
        Target::Lemma25 => lemma25(&fp, p.g_max.unwrap_or(1), p.max_fdeg.unwrap_or(3)),
        Target::Lemma52 => {
            let r = verify_lemma52(&fp, 3, 3)?;
            Ok(tally(target, vec![r.passed], serde_json::to_value(&r)?))
        }
        Target::Lemma53 => {
            let r = verify_lemma53(p.q, 5)?;
            Ok(tally(target, vec![r.passed], serde_json::to_value(&r)?))
        }
        Target::Eq517 => {
            let ctx = EulerContext::new(p.q, p.cutoff)?;
            let r = verify_eq517(&[0.5, -0.4], &ctx)?;
            let dual = r.c_dual_gap <= 1e-10;
            Ok(tally(target, vec![r.passed, dual], serde_json::to_value(&r)?))
        }
        Target::Appendix => appendix(6),
        Target::Parity => {
            let g_max = p.g_max.unwrap_or(20);
            let failing = verify_parity_identities(g_max);
            let results = (1..=g_max).map(|g| !failing.contains(&g)).collect();
            Ok(tally(target, results, json!({ "g_max": g_max, "failing": failing })))
        }
    }
}

fn poisson(fp: &FieldParams, max_fdeg: usize) -> Result<TargetReport> {
    let q = fp.q();
    let cases: Vec<_> = (2..=max_fdeg)
        .flat_map(|d| monic_polys(q, d).flat_map(move |f| (1..d).map(move |m| (f.clone(), m))))
        .collect();
    let results: Vec<bool> = cases
        .par_iter()
        .map(|(f, m)| verify_poisson(fp, f, *m))
        .collect::<Result<_>>()?;
    Ok(tally(Target::Poisson, results, json!({ "max_fdeg": max_fdeg })))
}

fn afe(fp: &FieldParams, g_max: usize) -> Result<TargetReport> {
    let mut results = Vec::new();
    for g in 1..=g_max {
        let ds: Vec<_> = ensemble(fp.q(), 2 * g + 2).collect();
        let r: Vec<bool> = ds
            .par_iter()
            .map(|d| Ok(afe_value(fp, d, g)? == l_coeffs_charsum(fp, d)?.central_value()))
            .collect::<Result<_>>()?;
        results.extend(r);
    }
    Ok(tally(Target::Afe, results, json!({ "genera": (1..=g_max).collect::<Vec<_>>() })))
}

fn fe(fp: &FieldParams, g_max: usize) -> Result<TargetReport> {
    let mut results = Vec::new();
    for g in 1..=g_max {
        let ds: Vec<_> = ensemble(fp.q(), 2 * g + 2).collect();
        let r: Vec<bool> = ds
            .par_iter()
            .map(|d| {
                let a = l_coeffs_charsum(fp, d)?;
                let b = l_coeffs_pointcount(d)?;
                Ok(a.functional_equation_holds() && a == b)
            })
            .collect::<Result<_>>()?;
        results.extend(r);
    }
    Ok(tally(
        Target::Fe,
        results,
        json!({ "genera": (1..=g_max).collect::<Vec<_>>(), "also_checks": "charsum == pointcount" }),
    ))
}

fn rh(fp: &FieldParams, g_max: usize, tol: f64) -> Result<TargetReport> {
    let mut results = Vec::new();
    let mut worst = 0.0f64;
    for g in 1..=g_max {
        let ds: Vec<_> = ensemble(fp.q(), 2 * g + 2).collect();
        let r: Vec<(bool, f64)> = ds
            .par_iter()
            .map(|d| {
                let rep = rh_report(&l_coeffs_charsum(fp, d)?, tol)?;
                Ok((rep.passed, rep.max_deviation))
            })
            .collect::<Result<_>>()?;
        for (ok, dev) in r {
            worst = worst.max(dev);
            results.push(ok);
        }
    }
    Ok(tally(Target::Rh, results, json!({ "tolerance": tol, "max_deviation": worst })))
}

fn lemma25(fp: &FieldParams, g_max: usize, max_fdeg: usize) -> Result<TargetReport> {
    let fs: Vec<_> = monic_up_to(fp.q(), max_fdeg).collect();
    let mut results = Vec::new();
    for g in 0..=g_max {
        let r: Vec<bool> = fs
            .par_iter()
            .map(|f| verify_lemma25(fp, f, g))
            .collect::<Result<_>>()?;
        results.extend(r);
    }
    Ok(tally(Target::Lemma25, results, json!({ "g_max": g_max, "max_fdeg": max_fdeg })))
}

fn appendix(t_max: usize) -> Result<TargetReport> {
    let mut results = Vec::new();
    let mut steps = Vec::new();
    for t in 0..=t_max {
        for parity in [Parity::Even, Parity::Odd] {
            results.push(appendix_identity(t, parity).is_zero());
            steps.push(inductive_step(t, parity));
        }
    }
    let printed_odd_bracket_ok = steps
        .iter()
        .filter(|s| s.parity == Parity::Odd)
        .all(|s| s.split_as_printed);
    Ok(tally(
        Target::Appendix,
        results,
        json!({
            "t_max": t_max,
            "inductive_steps": steps,
            "odd_bracket_as_printed_consistent": printed_odd_bracket_ok,
        }),
    ))
}
