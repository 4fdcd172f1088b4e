use crate::error::{Error, Result};

use super::poly::Poly;

/// The prime field F_q, together with small lookup tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    q: u32,
    inverses: Vec<u32>,
    legendre: Vec<i8>,
}

impl FieldParams {
    /// Prime field with q ≡ 1 (mod 4), as required by every character computation.
    pub fn new(q: u32) -> Result<Self> {
        let fp = Self::prime_only(q)?;
        if q % 4 != 1 {
            return Err(Error::Field {
                q: q as u64,
                reason: "q must be 1 mod 4 so that quadratic reciprocity holds without a sign".into(),
            });
        }
        Ok(fp)
    }

    /// Prime field with no congruence restriction (polynomial arithmetic only).
    pub fn prime_only(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::Field {
                q: q as u64,
                reason: "q must be prime".into(),
            });
        }
        if q > 65_521 {
            return Err(Error::Field {
                q: q as u64,
                reason: "q too large for the lookup tables".into(),
            });
        }
        let mut inverses = vec![0u32; q as usize];
        for a in 1..q {
            inverses[a as usize] = pow_mod(a, q - 2, q);
        }
        let mut legendre = vec![0i8; q as usize];
        for a in 1..q {
            legendre[a as usize] = if pow_mod(a, (q - 1) / 2, q) == 1 { 1 } else { -1 };
        }
        Ok(Self {
            q,
            inverses,
            legendre,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn reciprocity_holds(&self) -> bool {
        self.q % 4 == 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0 && a < self.q);
        self.inverses[a as usize]
    }

    /// Legendre symbol (a | q) in {-1, 0, 1}.
    #[inline]
    pub fn legendre(&self, a: u32) -> i8 {
        self.legendre[(a % self.q) as usize]
    }

    /// Reduce a signed integer into [0, q).
    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    pub fn poly(&self, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(self.q, coeffs.iter().map(|&c| self.reduce(c)).collect())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.q)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.q)
    }

    pub fn x(&self) -> Poly {
        Poly::from_coeffs(self.q, vec![0, 1])
    }

    /// Parse the comma-separated ascending-coefficient text format, e.g. "2,0,1" = x² + 2.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let err = |reason: String| Error::Parse {
            input: text.to_string(),
            reason,
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(err("empty input".into()));
        }
        let mut coeffs = Vec::new();
        for part in trimmed.split(',') {
            let part = part.trim();
            let v: u64 = part
                .parse()
                .map_err(|_| err(format!("{part:?} is not a nonnegative integer")))?;
            if v >= self.q as u64 {
                return Err(err(format!("coefficient {v} is not reduced mod {}", self.q)));
            }
            coeffs.push(v as u32);
        }
        Ok(Poly::from_coeffs(self.q, coeffs))
    }
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, m: u32) -> u32 {
    let m = m as u64;
    let mut acc = 1u64 % m;
    let mut b = base as u64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u32
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_q() {
        assert!(FieldParams::new(4).is_err());
        assert!(FieldParams::new(7).is_err());
        assert!(FieldParams::prime_only(7).is_ok());
        assert!(FieldParams::new(13).is_ok());
    }

    #[test]
    fn legendre_mod_5() {
        let fp = FieldParams::new(5).unwrap();
        let vals: Vec<i8> = (0..5).map(|a| fp.legendre(a)).collect();
        assert_eq!(vals, vec![0, 1, -1, -1, 1]);
    }

    #[test]
    fn parse_text_format() {
        let fp = FieldParams::new(5).unwrap();
        let p = fp.parse("2,0,1").unwrap();
        assert_eq!(p.coeffs(), &[2, 0, 1]);
        assert!(fp.parse("2,5").is_err());
        assert!(fp.parse("a,1").is_err());
        assert!(fp.parse("").is_err());
        assert_eq!(fp.parse("1,0,0").unwrap().degree(), Some(0));
    }
}
