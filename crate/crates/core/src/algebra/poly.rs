use std::cmp::Ordering;
use std::fmt;

use super::field::pow_mod;

/// Polynomial over F_q, coefficients ascending, no trailing zeros.
///
/// The prime `q` travels with the value so that free-standing arithmetic is
/// possible; mixing moduli is a logic error and panics in debug builds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn from_coeffs(q: u32, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { q, coeffs }
    }

    pub fn zero(q: u32) -> Self {
        Self { q, coeffs: vec![] }
    }

    pub fn one(q: u32) -> Self {
        Self::constant(q, 1)
    }

    pub fn constant(q: u32, c: u32) -> Self {
        Self::from_coeffs(q, vec![c])
    }

    /// c·x^n
    pub fn monomial(q: u32, c: u32, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Self::from_coeffs(q, coeffs)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// have already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// |f| = q^{d(f)} (as f64, since it is only used for weights).
    pub fn norm(&self) -> f64 {
        (self.q as f64).powi(self.deg() as i32)
    }

    fn inv(&self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.q));
        pow_mod(a, self.q - 2, self.q)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let q = self.q as u64;
        Poly::from_coeffs(
            self.q,
            self.coeffs
                .iter()
                .map(|&a| ((a as u64 * c as u64) % q) as u32)
                .collect(),
        )
    }

    /// (leading coefficient, monic associate). Zero maps to (0, 0).
    pub fn monic_parts(&self) -> (u32, Poly) {
        let lc = self.leading();
        if lc == 0 {
            return (0, self.clone());
        }
        if lc == 1 {
            return (1, self.clone());
        }
        (lc, self.scale(self.inv(lc)))
    }

    pub fn to_monic(&self) -> Poly {
        self.monic_parts().1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.q, other.q);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.q)
            .collect();
        Poly::from_coeffs(self.q, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.q, other.q);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| (self.coeff(i) + self.q - other.coeff(i)) % self.q)
            .collect();
        Poly::from_coeffs(self.q, coeffs)
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.q - 1)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.q, other.q);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.q);
        }
        let q = self.q as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % q;
            }
        }
        Poly::from_coeffs(self.q, acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        debug_assert_eq!(self.q, d.q);
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree() else {
            return (Poly::zero(self.q), Poly::zero(self.q));
        };
        if n < dd {
            return (Poly::zero(self.q), self.clone());
        }
        let q = self.q as u64;
        let inv_lc = self.inv(d.leading()) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let mut quot = vec![0u32; n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = rem[k + dd] * inv_lc % q;
            if c == 0 {
                continue;
            }
            quot[k] = c as u32;
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[k + j] = (rem[k + j] + q * q - c * b as u64) % q;
            }
        }
        rem.truncate(dd);
        (
            Poly::from_coeffs(self.q, quot),
            Poly::from_coeffs(self.q, rem.into_iter().map(|c| c as u32).collect()),
        )
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient, `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (qt, r) = self.div_rem(d);
        r.is_zero().then_some(qt)
    }

    pub fn divides(&self, f: &Poly) -> bool {
        f.rem(self).is_zero()
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.to_monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.q);
        }
        let q = self.q as u64;
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| ((c as u64 * ((i + 1) as u64 % q)) % q) as u32)
            .collect();
        Poly::from_coeffs(self.q, coeffs)
    }

    /// self^e mod m.
    pub fn pow_mod(&self, e: u128, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.q).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u32) -> u32 {
        let q = self.q as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % q) as u32
    }

    /// Comma-separated ascending coefficients, the inverse of `FieldParams::parse`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the ascending coefficient sequence.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.cmp(&other.coeffs).then(self.q.cmp(&other.q))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(5, c.to_vec())
    }

    #[test]
    fn division_roundtrip() {
        let a = p(&[3, 1, 4, 1, 2]);
        let b = p(&[2, 0, 3]);
        let (qt, r) = a.div_rem(&b);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(qt.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_is_monic() {
        let a = p(&[1, 1]).mul(&p(&[2, 0, 1]));
        let b = p(&[1, 1]).mul(&p(&[3, 1]));
        assert_eq!(a.scale(3).gcd(&b), p(&[1, 1]));
    }

    #[test]
    fn derivative_in_char_p() {
        assert!(p(&[1, 0, 0, 0, 0, 1]).derivative().is_zero());
        assert_eq!(p(&[0, 0, 1]).derivative(), p(&[0, 2]));
    }

    #[test]
    fn display_and_text() {
        let f = p(&[2, 0, 1]);
        assert_eq!(f.to_string(), "x^2 + 2");
        assert_eq!(f.to_text(), "2,0,1");
        assert_eq!(p(&[0, 3]).to_string(), "3x");
    }
}
