use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Coefficient ring for [`TruncSeries`]. Implemented for exact rationals and f64.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + std::fmt::Debug
{
    fn from_bigint(n: &BigInt) -> Self;
    fn inverse(&self) -> Self;
}

impl Scalar for BigRational {
    fn from_bigint(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }
    fn inverse(&self) -> Self {
        self.recip()
    }
}

impl Scalar for f64 {
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::INFINITY)
    }
    fn inverse(&self) -> Self {
        1.0 / self
    }
}

/// Truncated series in w (degree ≤ n_w) whose coefficients are Laurent in z.
///
/// With `z_lo = Some(L)` the coefficient of w^k is only kept for z-exponents
/// ≥ L + k. When every term also satisfies e ≤ k (true for all factors used
/// here), a product loses nothing inside that window: a dropped term at
/// (k₁, e₁ < L + k₁) times a kept (k₂, e₂ ≤ k₂) lands below L + k₁ + k₂.
/// `z_lo = None` means no z truncation (coefficients are Laurent polynomials).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncSeries<T: Scalar> {
    n_w: u32,
    z_lo: Option<i64>,
    terms: BTreeMap<(u32, i64), T>,
}

impl<T: Scalar> TruncSeries<T> {
    pub fn zero(n_w: u32, z_lo: Option<i64>) -> Self {
        Self {
            n_w,
            z_lo,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n_w: u32, z_lo: Option<i64>) -> Self {
        Self::monomial(n_w, z_lo, 0, 0, T::one())
    }

    /// c · w^k z^e (dropped if outside the window).
    pub fn monomial(n_w: u32, z_lo: Option<i64>, k: u32, e: i64, c: T) -> Self {
        let mut s = Self::zero(n_w, z_lo);
        s.add_term(k, e, c);
        s
    }

    pub fn n_w(&self) -> u32 {
        self.n_w
    }

    pub fn z_lo(&self) -> Option<i64> {
        self.z_lo
    }

    /// Whether (k, e) lies inside the truncation window.
    pub fn in_window(&self, k: u32, e: i64) -> bool {
        k <= self.n_w && self.z_lo.is_none_or(|lo| e >= lo + k as i64)
    }

    pub fn add_term(&mut self, k: u32, e: i64, c: T) {
        if c.is_zero() || !self.in_window(k, e) {
            return;
        }
        let slot = self.terms.entry((k, e)).or_insert_with(T::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(k, e));
        }
    }

    pub fn coeff(&self, k: u32, e: i64) -> T {
        self.terms.get(&(k, e)).cloned().unwrap_or_else(T::zero)
    }

    /// Nonzero terms as ((w-degree, z-exponent), coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, i64), &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max over terms of e − k; the window argument needs this ≤ 0.
    pub fn slope_excess(&self) -> Option<i64> {
        self.terms.keys().map(|&(k, e)| e - k as i64).max()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.n_w, other.n_w, "mismatched w truncation");
        assert_eq!(self.z_lo, other.z_lo, "mismatched z window");
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero(self.n_w, self.z_lo);
        for (&(k, e), v) in &self.terms {
            out.add_term(k, e, v.clone() * c.clone());
        }
        out
    }

    /// Same series with a smaller w truncation.
    pub fn restrict(&self, n_w: u32) -> Self {
        let mut out = Self::zero(n_w.min(self.n_w), self.z_lo);
        for (&(k, e), v) in &self.terms {
            out.add_term(k, e, v.clone());
        }
        out
    }

    /// Same series under a narrower z window.
    pub fn rewindow(&self, z_lo: i64) -> Self {
        assert!(self.z_lo.is_none_or(|lo| lo <= z_lo), "can only narrow the window");
        let mut out = Self::zero(self.n_w, Some(z_lo));
        for (&(k, e), v) in &self.terms {
            out.add_term(k, e, v.clone());
        }
        out
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = Self::zero(self.n_w, self.z_lo);
        for (&(k1, e1), a) in &self.terms {
            for (&(k2, e2), b) in other.terms.range((0, i64::MIN)..=(self.n_w - k1, i64::MAX)) {
                out.add_term(k1 + k2, e1 + e2, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.n_w, self.z_lo);
        for _ in 0..n {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Σ_j t^j for a single monomial t = c w^k z^e. Needs k ≥ 1, or k = 0 with
    /// e < 0 and a z window (otherwise the sum does not terminate).
    pub fn geometric(n_w: u32, z_lo: Option<i64>, k: u32, e: i64, c: T) -> Result<Self> {
        if k == 0 && (e >= 0 || z_lo.is_none()) {
            return domain("geometric series needs a monomial that truncates");
        }
        let mut out = Self::one(n_w, z_lo);
        let mut cur = c.clone();
        let (mut kk, mut ee) = (k, e);
        let probe = Self::zero(n_w, z_lo);
        while probe.in_window(kk, ee) {
            out.add_term(kk, ee, cur.clone());
            cur = cur * c.clone();
            kk += k;
            ee += e;
        }
        Ok(out)
    }

    /// Inverse of a series whose w⁰ part is a single nonzero constant.
    pub fn invert_unit(&self) -> Result<Self> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() || self.terms.keys().any(|&(k, e)| k == 0 && e != 0) {
            return domain("series inversion needs a unit constant term");
        }
        let inv0 = c0.inverse();
        // 1/(c0(1 + t)) = c0⁻¹ Σ (−t)^j, t has w-degree ≥ 1
        let mut minus_t = self.scale(&(-inv0.clone()));
        minus_t.terms.remove(&(0, 0));
        let mut out = Self::one(self.n_w, self.z_lo);
        let mut power = Self::one(self.n_w, self.z_lo);
        for _ in 0..self.n_w {
            power = power.mul_ref(&minus_t);
            out = out + power.clone();
        }
        Ok(out.scale(&inv0))
    }

    /// (1 + t)^π by the binomial series, for t with w-degree ≥ `min_k` ≥ 1.
    pub fn one_plus_pow(t: &Self, pi: &BigInt, min_k: u32) -> Self {
        assert!(min_k >= 1);
        assert!(t.terms.keys().all(|&(k, _)| k >= min_k));
        let mut out = Self::one(t.n_w, t.z_lo);
        let mut power = Self::one(t.n_w, t.z_lo);
        let mut binom = BigInt::one();
        for j in 1..=(t.n_w / min_k) {
            binom = binom * (pi - BigInt::from(j - 1)) / BigInt::from(j);
            if binom.is_zero() {
                break;
            }
            power = power.mul_ref(t);
            out = out + power.scale(&T::from_bigint(&binom));
        }
        out
    }
}

impl<T: Scalar> Add for TruncSeries<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.check_compatible(&rhs);
        for ((k, e), v) in rhs.terms {
            self.add_term(k, e, v);
        }
        self
    }
}

impl<T: Scalar> Sub for TruncSeries<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for TruncSeries<T> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl<T: Scalar> Mul for TruncSeries<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_ref(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type S = TruncSeries<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn geometric_inverts_one_minus() {
        // (1 − qw)·Σ(qw)^k = 1
        let z = S::geometric(4, None, 1, 0, r(5)).unwrap();
        let one_minus = S::one(4, None) - S::monomial(4, None, 1, 0, r(5));
        assert_eq!(z * one_minus, S::one(4, None));
    }

    #[test]
    fn laurent_geometric_in_window() {
        // 1/(1 − 1/(3z)), window z ≥ −6
        let g = S::geometric(2, Some(-6), 0, -1, BigRational::new(1.into(), 3.into())).unwrap();
        let f = S::one(2, Some(-6)) - S::monomial(2, Some(-6), 0, -1, BigRational::new(1.into(), 3.into()));
        let prod = g * f;
        assert_eq!(prod, S::one(2, Some(-6)));
    }

    #[test]
    fn invert_unit_round_trip() {
        let a = S::monomial(3, None, 0, 0, r(2)) + S::monomial(3, None, 1, 1, r(3)) + S::monomial(3, None, 2, -1, r(-1));
        let inv = a.invert_unit().unwrap();
        assert_eq!(a * inv, S::one(3, None));
        let bad = S::monomial(3, None, 0, 1, r(1)) + S::one(3, None);
        assert!(bad.invert_unit().is_err());
    }

    #[test]
    fn binomial_power_matches_repeated_product() {
        let t = S::monomial(5, Some(-8), 1, -1, r(2)) + S::monomial(5, Some(-8), 2, 1, r(-3));
        let one_t = S::one(5, Some(-8)) + t.clone();
        assert_eq!(S::one_plus_pow(&t, &BigInt::from(4), 1), one_t.pow(4));
    }
}
