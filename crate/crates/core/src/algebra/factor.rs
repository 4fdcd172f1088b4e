use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::monic_polys;
use super::poly::Poly;
use crate::error::{domain, Result};

/// f = unit · ∏ P_i^{e_i}, factors sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self, q: u32) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(q, self.unit), |acc, (p, e)| acc.mul(&p.pow(*e)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Every exponent even (a square up to the unit).
    pub fn is_square(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e % 2 == 0)
    }

    /// The distinct irreducible factors.
    pub fn primes(&self) -> impl Iterator<Item = &Poly> {
        self.factors.iter().map(|(p, _)| p)
    }
}

const TRIAL_DIVISION_MAX_DEGREE: usize = 6;

pub fn factor(f: &Poly) -> Result<Factorization> {
    if f.is_zero() {
        return domain("cannot factor the zero polynomial");
    }
    let (unit, monic) = f.monic_parts();
    let mut factors = if monic.deg() <= TRIAL_DIVISION_MAX_DEGREE {
        trial_division(&monic)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(&monic));
        let mut out = Vec::new();
        for (sqf, e) in squarefree_decomposition(&monic) {
            for (g, d) in distinct_degree(&sqf) {
                for p in equal_degree(&g, d, &mut rng)? {
                    out.push((p, e));
                }
            }
        }
        out
    };
    factors.sort();
    Ok(Factorization { unit, factors })
}

fn seed_for(f: &Poly) -> u64 {
    f.coeffs()
        .iter()
        .fold(0xcbf2_9ce4_8422_2325u64, |h, &c| {
            (h ^ c as u64).wrapping_mul(0x0100_0000_01b3)
        })
}

/// Divide out monic divisors in increasing degree; composites never divide
/// because their prime factors are gone by the time they are tried.
fn trial_division(f: &Poly) -> Vec<(Poly, u32)> {
    let q = f.q();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut d = 1;
    while 2 * d <= rest.deg() {
        for p in monic_polys(q, d) {
            let mut e = 0;
            while let Some(qt) = rest.exact_div(&p) {
                rest = qt;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            if 2 * d > rest.deg() {
                break;
            }
        }
        d += 1;
    }
    if rest.deg() >= 1 {
        match out.iter_mut().find(|(p, _)| *p == rest) {
            Some((_, e)) => *e += 1,
            None => out.push((rest, 1)),
        }
    }
    out
}

/// (square-free part, multiplicity) pairs for a monic f, valid in characteristic p.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    let q = f.q();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_one() {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
    }
    if !c.is_one() {
        // c is a p-th power: take the p-th root coefficientwise (Frobenius is trivial on F_p).
        let p = q as usize;
        let root: Vec<u32> = c.coeffs().iter().step_by(p).copied().collect();
        let root = Poly::from_coeffs(q, root);
        for (g, e) in squarefree_decomposition(&root) {
            out.push((g, e * q));
        }
    }
    out
}

/// Split monic square-free f into (product of all degree-d factors, d).
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let q = f.q();
    let x = Poly::monomial(q, 1, 1);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(q as u128, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() >= 1 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of distinct degree-d irreducibles (q odd).
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let q = f.q();
    if f.deg() == d {
        return Ok(vec![f.clone()]);
    }
    let Some(qd) = (q as u128).checked_pow(d as u32) else {
        return domain(format!("factor degree {d} too large for q = {q}"));
    };
    let exp = (qd - 1) / 2;
    let one = Poly::one(q);
    loop {
        let a = Poly::from_coeffs(q, (0..f.deg()).map(|_| rng.gen_range(0..q)).collect());
        if a.is_constant() {
            continue;
        }
        let g = a.gcd(f);
        let g = if !g.is_one() {
            g
        } else {
            a.pow_mod(exp, f).sub(&one).gcd(f)
        };
        if !g.is_one() && g.deg() < f.deg() {
            let h = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&h, d, rng)?);
            return Ok(out);
        }
    }
}

pub fn is_squarefree(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return domain("square-free test of the zero polynomial");
    }
    if f.deg() == 0 {
        return Ok(true);
    }
    let df = f.derivative();
    if df.is_zero() {
        return Ok(factor(f)?.is_squarefree());
    }
    Ok(f.gcd(&df).is_one())
}

/// Rabin's test.
pub fn is_irreducible(f: &Poly) -> bool {
    let n = f.deg();
    if f.is_zero() || n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let q = f.q();
    let f = f.to_monic();
    let x = Poly::monomial(q, 1, 1);
    // frob[k] = x^{q^k} mod f
    let mut frob = vec![x.rem(&f)];
    for k in 1..=n {
        let next = frob[k - 1].pow_mod(q as u128, &f);
        frob.push(next);
    }
    if frob[n] != x.rem(&f) {
        return false;
    }
    prime_divisors(n)
        .into_iter()
        .all(|p| frob[n / p].sub(&x).gcd(&f).is_one())
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn mobius(n: usize) -> i32 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// π_q(n) = (1/n) Σ_{d|n} μ(d) q^{n/d}, exact.
pub fn irreducible_count(q: u32, n: usize) -> BigInt {
    assert!(n >= 1, "irreducible_count needs n >= 1");
    let qb = BigInt::from(q);
    let mut total = BigInt::zero();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mu = mobius(d);
        if mu != 0 {
            total += num_traits::pow(qb.clone(), n / d) * mu;
        }
    }
    total / n
}

/// π_q(n) as f64 (exact up to 2^53, then correctly rounded enough for weights).
pub fn irreducible_count_f64(q: u32, n: usize) -> f64 {
    irreducible_count(q, n).to_f64().unwrap_or(f64::INFINITY)
}

/// All monic irreducibles of degree 1..=n_max, by degree.
pub fn irreducibles_up_to(q: u32, n_max: usize) -> BTreeMap<usize, Vec<Poly>> {
    (1..=n_max)
        .map(|n| (n, monic_polys(q, n).filter(is_irreducible).collect()))
        .collect()
}

/// φ(f) = ∏ (|P|^e − |P|^{e−1}).
pub fn euler_phi(f: &Poly) -> Result<BigInt> {
    let fac = factor(f)?;
    let q = BigInt::from(f.q());
    let mut phi = BigInt::one();
    for (p, e) in &fac.factors {
        let np = num_traits::pow(q.clone(), p.deg());
        phi *= num_traits::pow(np.clone(), *e as usize - 1) * (np - 1);
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[u32]) -> Poly {
        Poly::from_coeffs(5, c.to_vec())
    }

    #[test]
    fn small_factorizations() {
        assert_eq!(factor(&p(&[2, 0, 1])).unwrap().factors, vec![(p(&[2, 0, 1]), 1)]);
        assert_eq!(factor(&p(&[0, 0, 1])).unwrap().factors, vec![(p(&[0, 1]), 2)]);
        assert_eq!(
            factor(&p(&[4, 0, 1])).unwrap().factors,
            vec![(p(&[1, 1]), 1), (p(&[4, 1]), 1)]
        );
        assert!(factor(&Poly::zero(5)).is_err());
    }

    #[test]
    fn large_degree_path_reconstructs() {
        // (x+1)^5 (x^2+2)^2 (x^3+x+1): degree 12, derivative has a p-th power part
        let f = p(&[1, 1]).pow(5).mul(&p(&[2, 0, 1]).pow(2)).mul(&p(&[1, 1, 0, 1]));
        let fac = factor(&f.scale(3)).unwrap();
        assert_eq!(fac.unit, 3);
        assert_eq!(fac.reconstruct(5), f.scale(3));
        assert!(fac.factors.iter().all(|(g, _)| is_irreducible(g)));
        assert_eq!(fac.factors.iter().map(|(_, e)| e).sum::<u32>(), 8);
    }

    #[test]
    fn squarefree_cases() {
        assert!(is_squarefree(&p(&[2, 0, 1])).unwrap());
        assert!(!is_squarefree(&p(&[0, 0, 1])).unwrap());
        assert!(!is_squarefree(&p(&[1, 1]).pow(2).mul(&p(&[2, 1]))).unwrap());
        // x^5 + 1 = (x+1)^5 has zero derivative
        assert!(!is_squarefree(&p(&[1, 0, 0, 0, 0, 1])).unwrap());
    }

    #[test]
    fn irreducible_counts() {
        assert_eq!(irreducible_count(5, 1), 5.into());
        assert_eq!(irreducible_count(5, 2), 10.into());
        assert_eq!(irreducible_count(5, 3), 40.into());
        let table = irreducibles_up_to(5, 3);
        assert_eq!(table[&2].len(), 10);
        assert_eq!(table[&3].len(), 40);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(&p(&[0, 1])).unwrap(), 4.into());
        assert_eq!(euler_phi(&p(&[0, 0, 1])).unwrap(), 20.into());
        assert_eq!(euler_phi(&p(&[2, 0, 1])).unwrap(), 24.into());
    }
}
