//! Euler products grouped by irreducible degree, the constants of the moment
//! expansion, and the assembled prediction.
//!
//! Every factor below depends on P only through (d(P), |P|), so ∏_P F(P) is
//! evaluated as Σ_n π_q(n)·log F(n, q^n). Floating point throughout; this
//! side is irrational anyway.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::algebra::{irreducible_count, rational_text, QSqrt, QSqrtJson};
use crate::error::{domain, Error, Result};

/// Degree cutoff used when nothing else is requested.
pub const DEFAULT_CUTOFF: usize = 64;

/// The prime-count table backing every grouped product.
#[derive(Debug, Clone)]
pub struct EulerContext {
    q: u32,
    cutoff: usize,
    /// π_q(n) for n = 0..=cutoff (index 0 unused)
    pi: Vec<f64>,
    pi_exact: Vec<BigInt>,
}

impl EulerContext {
    pub fn new(q: u32, cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return domain("Euler cutoff must be at least 1");
        }
        if !crate::algebra::is_prime(q) {
            return Err(Error::Field {
                q: q as u64,
                reason: "q must be prime".into(),
            });
        }
        let mut pi_exact = vec![BigInt::zero()];
        pi_exact.extend((1..=cutoff).map(|n| irreducible_count(q, n)));
        let pi = pi_exact
            .iter()
            .map(|p| p.to_f64().unwrap_or(f64::INFINITY))
            .collect();
        Ok(Self {
            q,
            cutoff,
            pi,
            pi_exact,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn qf(&self) -> f64 {
        self.q as f64
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn pi(&self, n: usize) -> f64 {
        self.pi[n]
    }

    pub fn pi_exact(&self, n: usize) -> &BigInt {
        &self.pi_exact[n]
    }

    /// log ∏_{d(P) ≤ cutoff} (1 + δ(d(P))), with δ given as the excess over 1
    /// to keep precision when factors are close to 1. Returns (log|∏|, sign).
    pub fn grouped_log(&self, delta: impl Fn(usize) -> f64) -> Result<(f64, f64)> {
        let mut log = 0.0;
        let mut sign = 1.0;
        for n in 1..=self.cutoff {
            let d = delta(n);
            if !d.is_finite() {
                return Err(Error::Domain(format!("non-finite Euler factor at degree {n}")));
            }
            if d == -1.0 {
                return Ok((f64::NEG_INFINITY, 0.0));
            }
            if d < -1.0 {
                if self.pi_exact[n].is_odd() {
                    sign = -sign;
                }
                log += self.pi[n] * (-1.0 - d).ln();
            } else {
                log += self.pi[n] * d.ln_1p();
            }
        }
        Ok((log, sign))
    }

    pub fn grouped_product(&self, delta: impl Fn(usize) -> f64) -> Result<f64> {
        let (log, sign) = self.grouped_log(delta)?;
        Ok(sign * log.exp())
    }

    /// Σ_{d(P) ≤ cutoff} h(d(P)) = Σ_n π_q(n) h(n)
    pub fn grouped_sum(&self, h: impl Fn(usize) -> f64) -> f64 {
        (1..=self.cutoff).map(|n| self.pi[n] * h(n)).sum()
    }

    /// q^{n·e} for real e.
    fn qpow(&self, e: f64) -> f64 {
        self.qf().powf(e)
    }
}

/// ζ_A(s) = (1 − q^{1−s})^{−1}.
pub fn zeta_a(q: u32, s: f64) -> Result<f64> {
    if s == 1.0 {
        return domain("ζ_A has a pole at s = 1");
    }
    Ok(1.0 / (1.0 - (q as f64).powf(1.0 - s)))
}

/// ζ_A(s) for integer s ≠ 1, exactly.
pub fn zeta_a_exact(q: u32, s: i64) -> Result<BigRational> {
    if s == 1 {
        return domain("ζ_A has a pole at s = 1");
    }
    let qr = BigRational::from_integer(q.into());
    let e = 1 - s;
    let p = if e >= 0 {
        num_traits::pow(qr, e as usize)
    } else {
        num_traits::pow(qr, (-e) as usize).recip()
    };
    Ok((BigRational::one() - p).recip())
}

/// ζ_A(1/2) = (1 − √q)^{−1} = (1 + √q)/(1 − q), exactly.
pub fn zeta_a_half(q: u32) -> QSqrt {
    let r = BigRational::new(1.into(), (1 - q as i64).into());
    QSqrt::new(q, r.clone(), r)
}

/// P(s) together with (1/log q)·P′/P(s).
#[derive(Debug, Clone, Serialize)]
pub struct PValue {
    pub value: f64,
    pub log_value: f64,
    pub logderiv_over_logq: f64,
    /// size of the last included degree's contribution to log P
    pub last_term: f64,
    pub warning: Option<String>,
}

/// P(s) = ∏_P (1 − 1/(|P|^s (|P| + 1))).
pub fn euler_p(s: f64, ctx: &EulerContext) -> Result<PValue> {
    if s <= 0.0 {
        return domain("P(s) is only evaluated for s > 0");
    }
    let q = ctx.qf();
    let x = |n: usize| q.powf(-(n as f64) * s) / (q.powi(n as i32) + 1.0);
    let (log_value, _) = ctx.grouped_log(|n| -x(n))?;
    let logderiv_over_logq = ctx.grouped_sum(|n| {
        let xn = x(n);
        n as f64 * xn / (1.0 - xn)
    });
    let last_term = (ctx.pi(ctx.cutoff) * x(ctx.cutoff)).abs();
    let warning = (last_term > 1e-13).then(|| {
        format!(
            "cutoff {} leaves a last-degree contribution of {last_term:.2e}",
            ctx.cutoff
        )
    });
    Ok(PValue {
        value: log_value.exp(),
        log_value,
        logderiv_over_logq,
        last_term,
        warning,
    })
}

/// C(u) = ∏_P (1 − u^{d(P)}/(|P| + 1)), from the defining product (|u| < 1).
pub fn c_product(u: f64, ctx: &EulerContext) -> Result<f64> {
    if u.abs() >= 1.0 {
        return domain(format!("defining product for C(u) needs |u| < 1, got {u}"));
    }
    let q = ctx.qf();
    ctx.grouped_product(|n| -u.powi(n as i32) / (q.powi(n as i32) + 1.0))
}

/// C(u) = (1 − u) ∏_P (1 + u^{d}/((1 + |P|)(|P| − u^{d}))), valid for |u| < q.
pub fn c_continued(u: f64, ctx: &EulerContext) -> Result<f64> {
    let q = ctx.qf();
    if u.abs() >= q {
        return domain(format!("continuation of C(u) needs |u| < q, got {u}"));
    }
    let prod = ctx.grouped_product(|n| {
        let un = u.powi(n as i32);
        let x = q.powi(n as i32);
        un / ((1.0 + x) * (x - un))
    })?;
    Ok((1.0 - u) * prod)
}

/// C(u) by whichever representation is valid (the product where both are).
pub fn c_eval(u: f64, ctx: &EulerContext) -> Result<f64> {
    if u.abs() < 1.0 {
        c_product(u, ctx)
    } else {
        c_continued(u, ctx)
    }
}

/// Exact Taylor coefficients of C(u) at 0 up to u^N.
pub fn c_taylor(n_max: usize, q: u32) -> Vec<BigRational> {
    let mut series = vec![BigRational::zero(); n_max + 1];
    series[0] = BigRational::one();
    let qb = BigInt::from(q);
    for d in 1..=n_max {
        let pi = irreducible_count(q, d);
        // (1 − t)^{π(d)}, t = u^d/(q^d + 1)
        let t = BigRational::new(BigInt::one(), num_traits::pow(qb.clone(), d) + 1);
        let kmax = n_max / d;
        let mut factor = vec![BigRational::zero(); n_max + 1];
        let mut binom = BigInt::one();
        let mut tk = BigRational::one();
        for k in 0..=kmax {
            if k > 0 {
                binom = binom * (&pi - (k as i64 - 1)) / k;
                tk = &tk * &t;
            }
            let term = BigRational::from_integer(binom.clone()) * &tk;
            factor[k * d] = if k % 2 == 0 { term } else { -term };
        }
        series = mul_trunc(&series, &factor, n_max);
    }
    series
}

fn mul_trunc(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// The D-product at (q^{−4/3}, q^{−1/3}) and its scaled log-derivative.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DSpecial {
    /// ∏_P D_P(q^{−4/3}, q^{−1/3})
    pub product: f64,
    /// q^{−4/3} · (d/dz ∏D_P(z, qz)) / ∏D_P(z, qz) at z = q^{−4/3}, differentiating
    /// the D_P of the factorisation lemma
    pub logderiv: f64,
    /// the closed-form sum −Σ d(P)(|P|−1)(|P|^{1/3}+1)/((|P|^{1/3}−1)(|P|^{4/3}+|P|)²)
    /// as printed; it does not equal the derivative above (see README)
    pub logderiv_printed: f64,
}

pub fn d_special(ctx: &EulerContext) -> Result<DSpecial> {
    let q = ctx.qf();
    // s = |P|^{−1/3}; every closed form is divided through by its leading power of |P|
    let s = |n: usize| q.powf(-(n as f64) / 3.0);
    let product = ctx.grouped_product(|n| {
        let s = s(n);
        -(s.powi(4) + s.powi(6) + s.powi(7) + s.powi(8)) / (1.0 + s).powi(2)
    })?;
    // z·∂_z log D_P(z, qz) at z = q^{−4/3}, simplified by hand and checked
    // against finite differences in the tests
    let logderiv = -ctx.grouped_sum(|n| {
        let s = s(n);
        let num = 1.0 + s + 4.0 * s * s + 3.0 * s.powi(3);
        let den = (1.0 - s) * (1.0 + s) * (1.0 + 2.0 * s + s * s + s.powi(3) + s.powi(4) + s.powi(5));
        n as f64 * s.powi(4) * num / den
    });
    let logderiv_printed = -ctx.grouped_sum(|n| {
        let s = s(n);
        n as f64 * s.powi(5) * (1.0 + s + s * s) / (1.0 + s)
    });
    Ok(DSpecial {
        product,
        logderiv,
        logderiv_printed,
    })
}

/// D_P(z, w) − 1 as printed, for d(P) = n.
pub fn d_factor_delta(q: f64, n: usize, z: f64, w: f64) -> f64 {
    let ni = n as i32;
    let x = q.powi(ni);
    let zd = z.powi(ni);
    let wd = w.powi(ni);
    let num = -wd * wd - wd.powi(3) / x + wd / (zd * x * x) + (zd * wd * wd) * x + zd * wd * wd
        - (zd * zd * wd) * x * x
        + zd * wd.powi(3)
        - (zd * zd * wd * wd) * x * x;
    num / ((zd * x * x - 1.0) * (1.0 + wd))
}

/// B_P(z, w) − 1 as printed, for d(P) = n.
pub fn b_factor_delta(q: f64, n: usize, z: f64, w: f64) -> f64 {
    let ni = n as i32;
    let x = q.powi(ni);
    let zd = z.powi(ni);
    let wd = w.powi(ni);
    let num = wd - (zd * wd * wd) * x * x - (zd * zd * wd) * x * x + (zd * zd * wd.powi(3)) * x * x
        + (zd * wd * wd) * x
        - (zd * wd.powi(3)) * x;
    num / (zd * x * x - 1.0)
}

/// log ∏_P D_P(z, qz) from the general D_P formula (for the finite-difference oracle).
pub fn log_d_product_diagonal(z: f64, ctx: &EulerContext) -> Result<f64> {
    let q = ctx.qf();
    Ok(ctx.grouped_log(|n| d_factor_delta(q, n, z, q * z))?.0)
}

/// The constants feeding the secondary terms.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Constants {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub r0: f64,
    pub r1: f64,
    /// R0 with the printed log-derivative display substituted
    pub r0_printed: f64,
    pub d_product: f64,
    pub d_logderiv: f64,
    pub d_logderiv_printed: f64,
}

pub fn constants(ctx: &EulerContext) -> Result<Constants> {
    let q = ctx.qf();
    let z = |s: f64| zeta_a(ctx.q, s);
    let (z43, z53, z73, z2) = (z(4.0 / 3.0)?, z(5.0 / 3.0)?, z(7.0 / 3.0)?, z(2.0)?);
    let ds = d_special(ctx)?;
    let c3 = 1.0 - q - q.powf(7.0 / 6.0) + q.powf(-1.0 / 6.0);
    let c4 = 4.0 * c3 * z43 - c3 * z53 + 2.0 * (q - 1.0) * z73 / ctx.qpow(4.0 / 3.0)
        + 4.0 * (q - 1.0)
        + 2.0 * q.powf(1.0 / 6.0) * z73 * (1.0 + q);
    // R(x) = K [x C3/2 − C4 − 2 C3 · ld]
    let k = z53 * z73 / (9.0 * ctx.qpow(4.0 / 3.0) * z43) * ds.product;
    let r1 = k * c3 / 2.0;
    let r0 = k * (-c4 - 2.0 * c3 * ds.logderiv);
    let r0_printed = k * (-c4 - 2.0 * c3 * ds.logderiv_printed);
    let pref = z53 * z73 * z2 / z43 * ds.product;
    let c1 = pref * (q.powf(-1.0 / 6.0) - q.powf(-7.0 / 6.0) + q.powf(-4.0 / 3.0) - 1.0);
    let c2 = pref * (q.powf(1.0 / 3.0) - q.powf(-2.0 / 3.0) + q.powf(11.0 / 6.0) - q);
    Ok(Constants {
        c1,
        c2,
        c3,
        c4,
        r0,
        r1,
        r0_printed,
        d_product: ds.product,
        d_logderiv: ds.logderiv,
        d_logderiv_printed: ds.logderiv_printed,
    })
}

/// The four predicted terms and everything they are built from.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticBreakdown {
    pub q: u32,
    pub g: usize,
    pub cutoff_degree: usize,
    pub sign_toggle: i32,
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub t4: f64,
    pub total: f64,
    pub p1: f64,
    pub plogp: f64,
    pub zeta_a_half: QSqrtJson,
    pub zeta_a_2: String,
    /// exponent of q in T3 and T4, exact
    pub t3_exponent: String,
    pub t4_exponent: String,
    pub constants: Constants,
    pub warnings: Vec<String>,
}

/// g/6 + ⌊g/2⌋ and g/6 + ⌊(g−1)/2⌋.
pub fn secondary_exponents(g: usize) -> (Rational64, Rational64) {
    let g = g as i64;
    let sixth = Rational64::new(g, 6);
    (
        sixth + Rational64::from_integer(g.div_euclid(2)),
        sixth + Rational64::from_integer((g - 1).div_euclid(2)),
    )
}

fn rational_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn predict_moment(g: usize, ctx: &EulerContext, sign_toggle: i32) -> Result<AsymptoticBreakdown> {
    if sign_toggle != 1 && sign_toggle != -1 {
        return domain("sign_toggle must be ±1");
    }
    let q = ctx.qf();
    let p = euler_p(1.0, ctx)?;
    let z2 = zeta_a(ctx.q, 2.0)?;
    let zh = zeta_a_half(ctx.q);
    let consts = constants(ctx)?;
    let n = (2 * g + 2) as f64;
    let t1 = p.value / (2.0 * z2)
        * q.powf(n)
        * (n + 4.0 * p.logderiv_over_logq + sign_toggle as f64 * 2.0 * zh.to_f64());
    let t2 = q.powf(n / 3.0) * (consts.r1 * n + consts.r0);
    let (e3, e4) = secondary_exponents(g);
    let t3 = consts.c1 * q.powf(rational_f64(e3));
    let t4 = consts.c2 * q.powf(rational_f64(e4));
    Ok(AsymptoticBreakdown {
        q: ctx.q,
        g,
        cutoff_degree: ctx.cutoff,
        sign_toggle,
        t1,
        t2,
        t3,
        t4,
        total: t1 + t2 + t3 + t4,
        p1: p.value,
        plogp: p.logderiv_over_logq,
        zeta_a_half: QSqrtJson::from(&zh),
        zeta_a_2: rational_text(&zeta_a_exact(ctx.q, 2)?),
        t3_exponent: e3.to_string(),
        t4_exponent: e4.to_string(),
        constants: consts,
        warnings: p.warning.into_iter().collect(),
    })
}

/// The older main-term statement P(1)/(2ζ_A(2))·|D|·[log_q|D| + (4/log q)P′/P(1) + 2ζ_A(1/2)]
/// at |D| = q^{2g+2}, written with log_q|D| and the natural-log derivative.
pub fn jung_main_term(g: usize, ctx: &EulerContext) -> Result<f64> {
    let q = ctx.qf();
    let ln_q = q.ln();
    let p = euler_p(1.0, ctx)?;
    let p_prime_over_p = p.logderiv_over_logq * ln_q;
    let abs_d = q.powi(2 * g as i32 + 2);
    let log_q_d = abs_d.ln() / ln_q;
    let zh = zeta_a_half(ctx.q).to_f64();
    Ok(p.value / (2.0 * zeta_a(ctx.q, 2.0)?)
        * abs_d
        * (log_q_d + 4.0 / ln_q * p_prime_over_p + 2.0 * zh))
}
