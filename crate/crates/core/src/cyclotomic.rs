//! Exact arithmetic in Z[ζ_q], the additive character e(·), Gauss sums, and
//! an exact check of Poisson summation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::{euler_phi, monic_polys, monic_up_to, FieldParams, Poly};
use crate::characters::{jacobi_raw, modulus_character_sum};
use crate::error::{domain, Result};

/// Element of Z[ζ_q] in the basis ζ, ζ², …, ζ^{q−1}; 1 = −(ζ + … + ζ^{q−1}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    q: u32,
    coords: Vec<BigInt>,
}

impl CycElem {
    pub fn zero(q: u32) -> Self {
        Self {
            q,
            coords: vec![BigInt::zero(); q as usize - 1],
        }
    }

    pub fn from_int(q: u32, n: impl Into<BigInt>) -> Self {
        let n = -n.into();
        Self {
            q,
            coords: vec![n; q as usize - 1],
        }
    }

    pub fn one(q: u32) -> Self {
        Self::from_int(q, 1)
    }

    /// ζ^k
    pub fn zeta_pow(q: u32, k: i64) -> Self {
        let k = k.rem_euclid(q as i64) as usize;
        if k == 0 {
            return Self::one(q);
        }
        let mut e = Self::zero(q);
        e.coords[k - 1] = BigInt::from(1);
        e
    }

    /// Σ_k h[k] ζ^k for an exponent histogram of length q.
    pub fn from_histogram(q: u32, h: &[i64]) -> Self {
        debug_assert_eq!(h.len(), q as usize);
        Self {
            q,
            coords: (1..q as usize).map(|a| BigInt::from(h[a] - h[0])).collect(),
        }
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Self {
            q: self.q,
            coords: self.coords.iter().map(|c| c * n).collect(),
        }
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        let first = self.coords.first()?.clone();
        self.coords.iter().all(|c| *c == first).then(|| -first)
    }

    /// Embedding with ζ ↦ e^{2πi/q}.
    pub fn to_complex(&self) -> Complex64 {
        let q = self.q as f64;
        self.coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let theta = std::f64::consts::TAU * (i + 1) as f64 / q;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }
}

impl Add for &CycElem {
    type Output = CycElem;
    fn add(self, rhs: &CycElem) -> CycElem {
        debug_assert_eq!(self.q, rhs.q);
        CycElem {
            q: self.q,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CycElem {
    type Output = CycElem;
    fn sub(self, rhs: &CycElem) -> CycElem {
        debug_assert_eq!(self.q, rhs.q);
        CycElem {
            q: self.q,
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem {
            q: self.q,
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CycElem {
    type Output = CycElem;
    fn mul(self, rhs: &CycElem) -> CycElem {
        debug_assert_eq!(self.q, rhs.q);
        let q = self.q as usize;
        let mut full = vec![BigInt::zero(); q];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    full[(i + j + 2) % q] += a * b;
                }
            }
        }
        let z = std::mem::take(&mut full[0]);
        CycElem {
            q: self.q,
            coords: full[1..].iter().map(|c| c - &z).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycElem {
            type Output = CycElem;
            fn $m(self, rhs: CycElem) -> CycElem {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}·ζ^{}", i + 1))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Coefficient of 1/t in the expansion of r/f at infinity, for r = AV mod f.
pub fn a1(fp: &FieldParams, a: &Poly, v: &Poly, f: &Poly) -> Result<u32> {
    let Some(d) = f.degree() else {
        return domain("e(AV/f) with f = 0");
    };
    if d == 0 {
        return Ok(0);
    }
    let r = a.mul(v).rem(f);
    Ok(fp.mul(r.coeff(d - 1), fp.inv(f.leading())))
}

/// e(AV/f) = ζ_q^{a_1}.
pub fn e_of(fp: &FieldParams, a: &Poly, v: &Poly, f: &Poly) -> Result<CycElem> {
    Ok(CycElem::zeta_pow(fp.q(), a1(fp, a, v, f)? as i64))
}

/// Quadratic Gauss sums for a fixed monic modulus f, sharing the table of χ_f.
pub struct GaussTable<'a> {
    fp: &'a FieldParams,
    f: Poly,
    chi: Vec<i8>,
}

impl<'a> GaussTable<'a> {
    pub fn new(fp: &'a FieldParams, f: &Poly) -> Result<Self> {
        if !f.is_monic() {
            return domain(format!("Gauss sum modulus {f} is not monic"));
        }
        let q = fp.q();
        let d = f.deg();
        let size = (q as usize).pow(d as u32);
        let mut a = vec![0u32; d];
        let mut chi = Vec::with_capacity(size);
        for _ in 0..size {
            chi.push(jacobi_raw(fp, &a, f.coeffs()));
            for c in a.iter_mut() {
                *c += 1;
                if *c < q {
                    break;
                }
                *c = 0;
            }
        }
        Ok(Self { fp, f: f.clone(), chi })
    }

    /// Histogram over k of Σ_{A: a_1(AV/f) = k} χ_f(A).
    pub fn histogram(&self, v: &Poly) -> Vec<i64> {
        let fp = self.fp;
        let q = fp.q();
        let d = self.f.deg();
        let mut h = vec![0i64; q as usize];
        if d == 0 {
            h[0] = self.chi[0] as i64;
            return h;
        }
        // A ↦ a_1(AV/f) is F_q-linear in the coefficients of A.
        let lin: Vec<u32> = (0..d)
            .map(|i| {
                let xi = Poly::monomial(q, 1, i);
                a1(fp, &xi, v, &self.f).expect("f nonzero")
            })
            .collect();
        let mut a = vec![0u32; d];
        let mut val = 0u32;
        for &c in &self.chi {
            h[val as usize] += c as i64;
            // odometer step, updating the linear form incrementally
            for (i, ai) in a.iter_mut().enumerate() {
                *ai += 1;
                val = fp.add(val, lin[i]);
                if *ai < q {
                    break;
                }
                *ai = 0;
                // wrapping q steps of lin[i] returns val to where it started
            }
        }
        h
    }

    pub fn gauss_sum(&self, v: &Poly) -> CycElem {
        CycElem::from_histogram(self.fp.q(), &self.histogram(v))
    }
}

/// G(V, χ_f) = Σ_{A mod f} χ_f(A) e(AV/f).
pub fn gauss_sum(fp: &FieldParams, v: &Poly, f: &Poly) -> Result<CycElem> {
    Ok(GaussTable::new(fp, f)?.gauss_sum(v))
}

/// Σ_a (a|q) ζ^a, which equals +√q when q ≡ 1 mod 4.
pub fn sqrt_q_elem(fp: &FieldParams) -> Result<CycElem> {
    if !fp.reciprocity_holds() {
        return domain("the quadratic Gauss sum is √q only for q ≡ 1 mod 4");
    }
    let q = fp.q();
    Ok(CycElem {
        q,
        coords: (1..q).map(|a| BigInt::from(fp.legendre(a))).collect(),
    })
}

/// Both sides of Poisson summation multiplied by |f|, as exact ring elements.
pub fn poisson_sides(fp: &FieldParams, f: &Poly, m: usize) -> Result<(CycElem, CycElem)> {
    let d = match f.degree() {
        Some(d) if d >= 1 && f.is_monic() => d,
        _ => return domain("Poisson summation needs monic f with d(f) ≥ 1"),
    };
    if m == 0 {
        return domain("Poisson summation needs m ≥ 1");
    }
    let q = fp.q();
    let norm = num_traits::pow(BigInt::from(q), d);
    let lhs_int = modulus_character_sum(fp, f.coeffs(), m);
    let lhs = CycElem::from_int(q, BigInt::from(lhs_int) * &norm);
    let table = GaussTable::new(fp, f)?;
    let qm = num_traits::pow(BigInt::from(q), m);
    let sum_exact = |deg: Option<usize>| -> CycElem {
        let mut acc = vec![0i64; q as usize];
        if let Some(deg) = deg {
            for v in monic_polys(q, deg) {
                for (a, b) in acc.iter_mut().zip(table.histogram(&v)) {
                    *a += b;
                }
            }
        }
        CycElem::from_histogram(q, &acc)
    };
    let top = (d > m).then(|| d - m - 1);
    let rhs = if d % 2 == 1 {
        let s = sum_exact(top);
        &(&s * &sqrt_q_elem(fp)?) * &CycElem::from_int(q, qm)
    } else {
        let mut below = vec![0i64; q as usize];
        if d >= m + 2 {
            for v in monic_up_to(q, d - m - 2) {
                for (a, b) in below.iter_mut().zip(table.histogram(&v)) {
                    *a += b;
                }
            }
        }
        let below = CycElem::from_histogram(q, &below).scale(&BigInt::from(q - 1));
        let g0 = table.gauss_sum(&Poly::zero(q));
        let inner = &(&g0 + &below) - &sum_exact(top);
        inner.scale(&qm)
    };
    Ok((lhs, rhs))
}

pub fn verify_poisson(fp: &FieldParams, f: &Poly, m: usize) -> Result<bool> {
    let (l, r) = poisson_sides(fp, f, m)?;
    Ok(l == r)
}

/// G(0, χ_f) = φ(f) if f is a square, else 0.
pub fn gauss_zero_expected(f: &Poly) -> Result<BigInt> {
    let fac = crate::algebra::factor(f)?;
    if fac.is_square() {
        euler_phi(f)
    } else {
        Ok(BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    #[test]
    fn e_examples() {
        let fp = fp();
        let one = fp.one();
        let x = fp.x();
        let x2 = fp.poly(&[0, 0, 1]);
        assert_eq!(e_of(&fp, &one, &one, &x).unwrap(), CycElem::zeta_pow(5, 1));
        assert_eq!(e_of(&fp, &one, &x, &x2).unwrap(), CycElem::zeta_pow(5, 1));
        assert_eq!(e_of(&fp, &one, &one, &x2).unwrap(), CycElem::one(5));
        assert!(e_of(&fp, &one, &one, &fp.zero()).is_err());
    }

    #[test]
    fn ring_identities() {
        let z = CycElem::zeta_pow(5, 2);
        let w = CycElem::zeta_pow(5, 4);
        assert_eq!(&z * &w, CycElem::zeta_pow(5, 1));
        assert_eq!(&z * &CycElem::zeta_pow(5, 3), CycElem::one(5));
        let one = CycElem::one(5);
        assert_eq!(&one * &one, one);
        assert_eq!(CycElem::from_int(5, 7).as_integer(), Some(7.into()));
    }

    #[test]
    fn sqrt_q() {
        let fp = fp();
        let s = sqrt_q_elem(&fp).unwrap();
        assert_eq!(&s * &s, CycElem::from_int(5, 5));
        assert_eq!(&(&s * &s) * &s, s.scale(&5.into()));
        let c = s.to_complex();
        assert!((c.re - 5f64.sqrt()).abs() < 1e-12 && c.im.abs() < 1e-12);
    }

    #[test]
    fn gauss_sum_at_zero() {
        let fp = fp();
        let x2 = fp.poly(&[0, 0, 1]);
        assert_eq!(gauss_sum(&fp, &fp.zero(), &x2).unwrap(), CycElem::from_int(5, 20));
        let x2p2 = fp.poly(&[2, 0, 1]);
        assert!(gauss_sum(&fp, &fp.zero(), &x2p2).unwrap().is_zero());
    }

    #[test]
    fn gauss_sum_magnitude_prime_modulus() {
        let fp = fp();
        let p = fp.poly(&[2, 0, 1]);
        let g = gauss_sum(&fp, &fp.poly(&[1, 3]), &p).unwrap().to_complex();
        assert!((g.norm_sqr() - 25.0).abs() < 1e-9);
    }

    #[test]
    fn table_matches_direct_definition() {
        let fp = fp();
        let f = fp.poly(&[1, 2, 0, 1]);
        let v = fp.poly(&[3, 1]);
        let mut acc = CycElem::zero(5);
        for idx in 0..125u64 {
            let a = Poly::from_coeffs(
                5,
                vec![(idx % 5) as u32, (idx / 5 % 5) as u32, (idx / 25) as u32],
            );
            let chi = jacobi_raw(&fp, a.coeffs(), f.coeffs());
            let e = e_of(&fp, &a, &v, &f).unwrap();
            acc = &acc + &e.scale(&chi.into());
        }
        assert_eq!(acc, gauss_sum(&fp, &v, &f).unwrap());
    }

    #[test]
    fn poisson_small() {
        let fp = fp();
        for f in monic_polys(5, 3) {
            for m in 1..3 {
                assert!(verify_poisson(&fp, &f, m).unwrap(), "f = {f}, m = {m}");
            }
        }
        for f in monic_polys(5, 2) {
            assert!(verify_poisson(&fp, &f, 1).unwrap(), "f = {f}");
        }
    }
}
