use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

/// Exact a + b·√q with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QSqrt {
    q: u32,
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt {
    pub fn new(q: u32, a: BigRational, b: BigRational) -> Self {
        Self { q, a, b }
    }

    pub fn zero(q: u32) -> Self {
        Self::new(q, BigRational::zero(), BigRational::zero())
    }

    pub fn one(q: u32) -> Self {
        Self::from_int(q, 1)
    }

    pub fn from_int(q: u32, n: i64) -> Self {
        Self::new(q, BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_rational(q: u32, a: BigRational) -> Self {
        Self::new(q, a, BigRational::zero())
    }

    pub fn sqrt_q(q: u32) -> Self {
        Self::new(q, BigRational::zero(), BigRational::one())
    }

    /// q^{k/2} for any integer k.
    pub fn q_half_pow(q: u32, k: i64) -> Self {
        let half = k.div_euclid(2);
        let base = BigRational::from_integer(BigInt::from(q));
        let p = if half >= 0 {
            num_traits::pow(base, half as usize)
        } else {
            num_traits::pow(base, (-half) as usize).recip()
        };
        if k.rem_euclid(2) == 0 {
            Self::new(q, p, BigRational::zero())
        } else {
            Self::new(q, BigRational::zero(), p)
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// a − b√q
    pub fn conj(&self) -> Self {
        Self::new(self.q, self.a.clone(), -self.b.clone())
    }

    /// a² − q b², the field norm down to Q.
    pub fn norm(&self) -> BigRational {
        let q = BigRational::from_integer(self.q.into());
        &self.a * &self.a - q * &self.b * &self.b
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(self.q, &self.a * r, &self.b * r)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.q as f64).sqrt()
    }
}

fn check(x: &QSqrt, y: &QSqrt) {
    debug_assert_eq!(x.q, y.q, "mixing Q(√q) for different q");
}

impl Add for &QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: &QSqrt) -> QSqrt {
        check(self, rhs);
        QSqrt::new(self.q, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for QSqrt {
    type Output = QSqrt;
    fn add(self, rhs: QSqrt) -> QSqrt {
        &self + &rhs
    }
}

impl AddAssign<&QSqrt> for QSqrt {
    fn add_assign(&mut self, rhs: &QSqrt) {
        check(self, rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Sub for &QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: &QSqrt) -> QSqrt {
        check(self, rhs);
        QSqrt::new(self.q, &self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Sub for QSqrt {
    type Output = QSqrt;
    fn sub(self, rhs: QSqrt) -> QSqrt {
        &self - &rhs
    }
}

impl Neg for QSqrt {
    type Output = QSqrt;
    fn neg(self) -> QSqrt {
        QSqrt::new(self.q, -self.a, -self.b)
    }
}

impl Mul for &QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: &QSqrt) -> QSqrt {
        check(self, rhs);
        let q = BigRational::from_integer(self.q.into());
        QSqrt::new(
            self.q,
            &self.a * &rhs.a + q * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Mul for QSqrt {
    type Output = QSqrt;
    fn mul(self, rhs: QSqrt) -> QSqrt {
        &self * &rhs
    }
}

impl fmt::Display for QSqrt {
    /// "20 − 4√5" style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}", sqrt_term(&self.b, self.q)),
            (false, false) => {
                let sign = if self.b.is_negative() { '−' } else { '+' };
                write!(f, "{} {sign} {}", self.a, sqrt_term(&self.b.abs(), self.q))
            }
        }
    }
}

fn sqrt_term(b: &BigRational, q: u32) -> String {
    if b.is_one() {
        format!("√{q}")
    } else if *b == -BigRational::one() {
        format!("−√{q}")
    } else if b.is_integer() {
        format!("{b}√{q}")
    } else {
        format!("({b})√{q}")
    }
}

/// JSON view: exact parts as "num/den" strings plus a float mirror.
#[derive(Debug, Clone, Serialize)]
pub struct QSqrtJson {
    pub a: String,
    pub b: String,
    pub text: String,
    pub float: f64,
}

impl From<&QSqrt> for QSqrtJson {
    fn from(x: &QSqrt) -> Self {
        Self {
            a: rational_text(&x.a),
            b: rational_text(&x.b),
            text: x.to_string(),
            float: x.to_f64(),
        }
    }
}

/// Always "num/den", even for integers, so consumers can parse uniformly.
pub fn rational_text(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = QSqrt::new(5, r(3, 2), r(-7, 3));
        let p = &x * &x.conj();
        assert!(p.b.is_zero());
        assert_eq!(p.a, x.norm());
    }

    #[test]
    fn half_powers() {
        assert_eq!(QSqrt::q_half_pow(5, 2), QSqrt::from_int(5, 5));
        assert_eq!(QSqrt::q_half_pow(5, -1), QSqrt::new(5, r(0, 1), r(1, 5)));
        let s = QSqrt::q_half_pow(5, 3);
        assert_eq!(&s * &QSqrt::q_half_pow(5, -3), QSqrt::one(5));
    }

    #[test]
    fn display() {
        let x = QSqrt::new(5, r(20, 1), r(-4, 1));
        assert_eq!(x.to_string(), "20 − 4√5");
        assert_eq!(QSqrt::new(5, r(1, 1), r(-1, 5)).to_string(), "1 − (1/5)√5");
        assert!((x.to_f64() - 11.055_728_090_000_84).abs() < 1e-12);
    }
}
