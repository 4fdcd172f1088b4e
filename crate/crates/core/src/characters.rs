//! Quadratic residue and Jacobi symbols over F_q[x], and the character χ_D.
//!
//! Symbol values are plain `i8` in {−1, 0, 1} so they multiply directly.

use crate::algebra::{factor, is_irreducible, is_squarefree, FieldParams, Poly};
use crate::error::{domain, Error, Result};

/// A symbol value in {−1, 0, +1}.
pub type SymbolValue = i8;

/// (f / P) for irreducible monic P, by Euler's criterion f^{(|P|−1)/2} mod P.
pub fn residue_symbol(f: &Poly, p: &Poly) -> Result<SymbolValue> {
    if !p.is_monic() || !is_irreducible(p) {
        return domain(format!("residue symbol modulus {p} is not monic irreducible"));
    }
    let q = p.q();
    let norm = (q as u128)
        .checked_pow(p.deg() as u32)
        .ok_or_else(|| Error::Domain(format!("|P| overflows for d(P) = {}", p.deg())))?;
    let r = f.pow_mod((norm - 1) / 2, p);
    Ok(if r.is_zero() {
        0
    } else if r.is_one() {
        1
    } else {
        debug_assert_eq!(r, Poly::constant(q, q - 1));
        -1
    })
}

/// Jacobi symbol (f / Q) through the factorisation of Q. Reference path only.
pub fn jacobi_slow(f: &Poly, modulus: &Poly) -> Result<SymbolValue> {
    check_modulus(modulus)?;
    if modulus.is_one() {
        return Ok(1);
    }
    let mut value = 1;
    for (p, e) in factor(modulus)?.factors {
        let s = residue_symbol(f, &p)?;
        if s == 0 {
            return Ok(0);
        }
        if e % 2 == 1 {
            value *= s;
        }
    }
    Ok(value)
}

/// Jacobi symbol (f / Q) by the reciprocity loop.
pub fn jacobi(fp: &FieldParams, f: &Poly, modulus: &Poly) -> Result<SymbolValue> {
    check_modulus(modulus)?;
    if !fp.reciprocity_holds() {
        return domain("the reciprocity loop needs q ≡ 1 mod 4");
    }
    Ok(jacobi_raw(fp, f.coeffs(), modulus.coeffs()))
}

fn check_modulus(modulus: &Poly) -> Result<()> {
    if !modulus.is_monic() {
        return domain(format!("Jacobi modulus {modulus} is not monic"));
    }
    Ok(())
}

/// χ_D(f) = (D / f), with D checked square-free and f monic.
pub fn chi(fp: &FieldParams, d: &Poly, f: &Poly) -> Result<SymbolValue> {
    if d.is_zero() || !is_squarefree(d)? {
        return domain(format!("χ_D needs square-free D, got {d}"));
    }
    if !d.is_monic() {
        return domain(format!("χ_D needs monic D, got {d}"));
    }
    jacobi(fp, d, f)
}

const INLINE: usize = 48;

/// Reciprocity-loop Jacobi symbol on raw coefficient slices. `b` must be
/// monic; `a` is arbitrary. Requires q ≡ 1 mod 4 (unchecked).
pub fn jacobi_raw(fp: &FieldParams, a: &[u32], b: &[u32]) -> SymbolValue {
    let cap = a.len().max(b.len());
    if cap <= INLINE {
        let mut x = [0u32; INLINE];
        let mut y = [0u32; INLINE];
        jacobi_core(fp, a, b, &mut x, &mut y)
    } else {
        let mut x = vec![0u32; cap];
        let mut y = vec![0u32; cap];
        jacobi_core(fp, a, b, &mut x, &mut y)
    }
}

fn jacobi_core(fp: &FieldParams, a: &[u32], b: &[u32], x: &mut [u32], y: &mut [u32]) -> i8 {
    debug_assert_eq!(b.last(), Some(&1));
    let mut nx = a.len();
    x[..nx].copy_from_slice(a);
    while nx > 0 && x[nx - 1] == 0 {
        nx -= 1;
    }
    let mut ny = b.len();
    y[..ny].copy_from_slice(b);
    let (mut x, mut y) = (x, y);
    let mut res: i8 = 1;
    loop {
        if ny == 1 {
            return res;
        }
        nx = rem_monic(fp, x, nx, y, ny);
        if nx == 0 {
            return 0;
        }
        let lc = x[nx - 1];
        if lc != 1 {
            let inv = fp.inv(lc);
            for c in x[..nx].iter_mut() {
                *c = fp.mul(*c, inv);
            }
            // constant c contributes Legendre(c)^{d(modulus)}
            if (ny - 1) % 2 == 1 {
                res *= fp.legendre(lc);
            }
        }
        if nx == 1 {
            return res;
        }
        std::mem::swap(&mut x, &mut y);
        std::mem::swap(&mut nx, &mut ny);
    }
}

/// x ← x mod y in place for monic y; returns the new length.
#[inline]
fn rem_monic(fp: &FieldParams, x: &mut [u32], mut nx: usize, y: &[u32], ny: usize) -> usize {
    while nx >= ny {
        let c = x[nx - 1];
        if c != 0 {
            let shift = nx - ny;
            for j in 0..ny - 1 {
                x[shift + j] = fp.sub(x[shift + j], fp.mul(c, y[j]));
            }
        }
        nx -= 1;
        while nx > 0 && x[nx - 1] == 0 {
            nx -= 1;
        }
    }
    nx
}

/// Σ_{f ∈ A⁺_n} χ_D(f), odometer over the lower coefficients of f.
pub fn character_sum_degree(fp: &FieldParams, d: &[u32], n: usize) -> i64 {
    let q = fp.q();
    let mut f = vec![0u32; n + 1];
    f[n] = 1;
    let mut total = 0i64;
    loop {
        total += jacobi_raw(fp, d, &f) as i64;
        // odometer, constant term fastest
        let mut i = 0;
        loop {
            if i == n {
                return total;
            }
            f[i] += 1;
            if f[i] < q {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Σ_{h ∈ A⁺_n} χ_f(h) = Σ (h / f).
pub fn modulus_character_sum(fp: &FieldParams, f: &[u32], n: usize) -> i64 {
    let q = fp.q();
    let mut h = vec![0u32; n + 1];
    h[n] = 1;
    let mut total = 0i64;
    loop {
        total += jacobi_raw(fp, &h, f) as i64;
        let mut i = 0;
        loop {
            if i == n {
                return total;
            }
            h[i] += 1;
            if h[i] < q {
                break;
            }
            h[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monic_polys;

    fn setup() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    #[test]
    fn residue_symbol_examples() {
        let fp = setup();
        let x = fp.x();
        let x1 = fp.poly(&[1, 1]);
        assert_eq!(residue_symbol(&x, &x1).unwrap(), 1);
        assert_eq!(residue_symbol(&x1, &x1).unwrap(), 0);
        assert_eq!(residue_symbol(&fp.poly(&[2]), &x).unwrap(), -1);
        assert!(residue_symbol(&x, &fp.poly(&[0, 0, 1])).is_err());
    }

    #[test]
    fn jacobi_examples() {
        let fp = setup();
        let x1 = fp.poly(&[1, 1]);
        assert_eq!(jacobi(&fp, &fp.x(), &x1).unwrap(), 1);
        assert_eq!(jacobi(&fp, &fp.poly(&[3, 2, 4]), &fp.one()).unwrap(), 1);
        assert!(jacobi(&fp, &fp.x(), &fp.poly(&[1, 2])).is_err());
    }

    #[test]
    fn chi_examples() {
        let fp = setup();
        let d = fp.poly(&[2, 0, 1]);
        assert_eq!(chi(&fp, &d, &fp.poly(&[1, 1])).unwrap(), -1);
        assert_eq!(chi(&fp, &d, &d).unwrap(), 0);
        let s: i64 = monic_polys(5, 1).map(|f| chi(&fp, &d, &f).unwrap() as i64).sum();
        assert_eq!(s, -1);
        assert!(chi(&fp, &fp.poly(&[0, 0, 1]), &fp.x()).is_err());
    }

    #[test]
    fn fast_path_matches_factorisation_exhaustively() {
        let fp = setup();
        let small: Vec<Poly> = (0..=3).flat_map(|n| monic_polys(5, n)).collect();
        for b in &small {
            for a in &small {
                let a = a.scale(2);
                assert_eq!(
                    jacobi(&fp, &a, b).unwrap(),
                    jacobi_slow(&a, b).unwrap(),
                    "({a} / {b})"
                );
            }
        }
    }

    #[test]
    fn constant_symbol_rule() {
        let fp = setup();
        let q = fp.poly(&[1, 0, 1, 1]);
        // Legendre(2|5) = −1, odd degree
        assert_eq!(jacobi(&fp, &fp.poly(&[2]), &q).unwrap(), -1);
        assert_eq!(jacobi(&fp, &fp.poly(&[2]), &fp.poly(&[2, 0, 1])).unwrap(), 1);
    }
}
