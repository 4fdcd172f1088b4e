use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A monomial x^a · ∏ c_i^{e_i}; exponent vector trimmed of trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: i64,
    pub c: Vec<u32>,
}

impl Monomial {
    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.c.len().max(other.c.len());
        let mut c: Vec<u32> = (0..n)
            .map(|i| self.c.get(i).copied().unwrap_or(0) + other.c.get(i).copied().unwrap_or(0))
            .collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Monomial { x: self.x + other.x, c }
    }
}

/// Sparse Laurent polynomial over Q in x (= √q) and the formal symbols c_n.
/// Terms with zero coefficient are never stored, so "is zero" is structural.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalExpr {
    terms: BTreeMap<Monomial, BigRational>,
}

impl FormalExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(r: BigRational) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial { x: 0, c: vec![] }, r);
        e
    }

    pub fn int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// x^a.
    pub fn x_pow(a: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(Monomial { x: a, c: vec![] }, BigRational::one());
        e
    }

    /// The symbol c_n.
    pub fn c(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[n] = 1;
        let mut e = Self::zero();
        e.add_term(Monomial { x: 0, c }, BigRational::one());
        e
    }

    fn add_term(&mut self, m: Monomial, r: BigRational) {
        if r.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot += r;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Numerical value at x = √q and the given c_n.
    pub fn eval(&self, q: f64, c: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(m, r)| {
                let mut v = r.to_f64().unwrap_or(f64::NAN) * q.sqrt().powi(m.x as i32);
                for (i, &e) in m.c.iter().enumerate() {
                    v *= c.get(i).copied().unwrap_or(0.0).powi(e as i32);
                }
                v
            })
            .sum()
    }
}

impl Add for FormalExpr {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, r) in rhs.terms {
            self.add_term(m, r);
        }
        self
    }
}

impl Neg for FormalExpr {
    type Output = Self;
    fn neg(mut self) -> Self {
        for r in self.terms.values_mut() {
            *r = -r.clone();
        }
        self
    }
}

impl Sub for FormalExpr {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for &FormalExpr {
    type Output = FormalExpr;
    fn mul(self, rhs: &FormalExpr) -> FormalExpr {
        let mut out = FormalExpr::zero();
        for (m1, r1) in &self.terms {
            for (m2, r2) in &rhs.terms {
                out.add_term(m1.mul(m2), r1 * r2);
            }
        }
        out
    }
}

impl Mul for FormalExpr {
    type Output = FormalExpr;
    fn mul(self, rhs: FormalExpr) -> FormalExpr {
        &self * &rhs
    }
}

impl std::iter::Sum for FormalExpr {
    fn sum<I: Iterator<Item = FormalExpr>>(iter: I) -> Self {
        iter.fold(FormalExpr::zero(), |a, b| a + b)
    }
}

impl fmt::Display for FormalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, r)) in self.terms.iter().enumerate() {
            let neg = r.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = r.abs();
            let mut parts = Vec::new();
            if !a.is_one() || (m.x == 0 && m.c.is_empty()) {
                parts.push(a.to_string());
            }
            if m.x != 0 {
                parts.push(format!("x^{}", m.x));
            }
            for (j, &e) in m.c.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(format!("c{j}")),
                    _ => parts.push(format!("c{j}^{e}")),
                }
            }
            write!(f, "{}", parts.join("·"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_is_structural() {
        let a = FormalExpr::x_pow(3) * FormalExpr::c(2) + FormalExpr::int(2);
        let b = a.clone() - a;
        assert!(b.is_zero());
        assert_eq!(b.to_string(), "0");
    }

    #[test]
    fn product_and_display() {
        let e = (FormalExpr::one() + FormalExpr::x_pow(1)) * (FormalExpr::one() - FormalExpr::x_pow(1));
        assert_eq!(e, FormalExpr::one() - FormalExpr::x_pow(2));
        let s = (FormalExpr::c(0) * FormalExpr::x_pow(-1)).to_string();
        assert_eq!(s, "x^-1·c0");
        assert!((e.eval(5.0, &[]) - (-4.0)).abs() < 1e-12);
    }
}
