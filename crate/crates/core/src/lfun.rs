//! L(u, χ_D): coefficients by character sums and by point counting, the
//! completed L-function, the exact central value, and the approximate
//! functional equation.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::{
    ensemble, is_squarefree, monic_up_to, ExtField, FieldParams, Poly, QSqrt,
};
use crate::characters::{character_sum_degree, jacobi_raw, modulus_character_sum};
use crate::error::{domain, Error, Result};

/// Coefficients of L(u, χ_D) and of the completed L*(u, χ_D).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LData {
    pub d: Poly,
    /// c_n for 0 ≤ n < d(D)
    pub c: Vec<i64>,
    pub lambda: u32,
    pub delta: usize,
    /// a_0 … a_{2δ}
    pub a: Vec<i64>,
}

impl LData {
    /// Build from c_0 … c_{d(D)−1}, dividing out (1 − u) when d(D) is even.
    pub fn from_c(d: Poly, c: Vec<i64>) -> Result<Self> {
        let n = d.deg();
        let lambda = n.is_multiple_of(2) as u32;
        let delta = (n - 1 - lambda as usize) / 2;
        let a = if lambda == 1 {
            // a_i = c_0 + … + c_i; the full sum is L(1) and must vanish
            let mut a = Vec::with_capacity(c.len() - 1);
            let mut run = 0i64;
            for &cn in &c[..c.len() - 1] {
                run += cn;
                a.push(run);
            }
            if run + c[c.len() - 1] != 0 {
                return Err(Error::Inconsistent(format!(
                    "L(1, χ_D) = {} ≠ 0 for even-degree D = {d}",
                    run + c[c.len() - 1]
                )));
            }
            a
        } else {
            c.clone()
        };
        debug_assert_eq!(a.len(), 2 * delta + 1);
        Ok(Self { d, c, lambda, delta, a })
    }

    /// Build from a_0 … a_{2δ}, multiplying back by (1 − u)^λ.
    pub fn from_completed(d: Poly, a: Vec<i64>) -> Self {
        let n = d.deg();
        let lambda = n.is_multiple_of(2) as u32;
        let delta = (n - 1 - lambda as usize) / 2;
        let c = if lambda == 1 {
            let mut c = vec![0i64; a.len() + 1];
            for (i, &ai) in a.iter().enumerate() {
                c[i] += ai;
                c[i + 1] -= ai;
            }
            c
        } else {
            a.clone()
        };
        Self { d, c, lambda, delta, a }
    }

    pub fn q(&self) -> u32 {
        self.d.q()
    }

    /// a_{2δ−i} = q^{δ−i} a_i for all i.
    pub fn functional_equation_holds(&self) -> bool {
        let q = self.q() as i128;
        let two_delta = 2 * self.delta;
        (0..=two_delta).all(|i| {
            let lhs = self.a[two_delta - i] as i128;
            let e = self.delta as i64 - i as i64;
            if e >= 0 {
                lhs == q.pow(e as u32) * self.a[i] as i128
            } else {
                lhs * q.pow((-e) as u32) == self.a[i] as i128
            }
        })
    }

    pub fn central_value(&self) -> QSqrt {
        central_from_coeffs(self.q(), &self.c)
    }
}

fn check_d(d: &Poly) -> Result<()> {
    if !d.is_monic() || d.deg() == 0 || !is_squarefree(d)? {
        return domain(format!("D = {d} must be monic, square-free, of degree ≥ 1"));
    }
    Ok(())
}

/// c_0 … c_{n_max} of L(u, χ_D) by summing χ_D over monic polynomials.
pub(crate) fn charsum_coeffs(fp: &FieldParams, d: &[u32], n_max: usize) -> Vec<i64> {
    (0..=n_max).map(|n| character_sum_degree(fp, d, n)).collect()
}

/// L-data by direct character sums, also asserting c_{d(D)} = 0.
pub fn l_coeffs_charsum(fp: &FieldParams, d: &Poly) -> Result<LData> {
    check_d(d)?;
    let n = d.deg();
    let c = charsum_coeffs(fp, d.coeffs(), n - 1);
    let beyond = character_sum_degree(fp, d.coeffs(), n);
    if beyond != 0 {
        return Err(Error::Inconsistent(format!(
            "c_{n} = {beyond} ≠ 0 for D = {d}"
        )));
    }
    LData::from_c(d.clone(), c)
}

/// Extension fields F_{q^j}, j = 1..=j_max, shared by point-count calls.
#[derive(Debug, Clone)]
pub struct PointCounter {
    q: u32,
    fields: Vec<ExtField>,
}

impl PointCounter {
    pub fn new(q: u32, j_max: usize) -> Self {
        Self {
            q,
            fields: (1..=j_max).map(|j| ExtField::new(q, j)).collect(),
        }
    }

    /// Enough extensions for every D of degree ≤ n (δ + 1 power sums).
    pub fn for_degree(q: u32, n: usize) -> Self {
        Self::new(q, n.saturating_sub(1) / 2 + 1)
    }

    /// Σ_{α ∈ F_{q^j}} η_j(D(α))
    pub fn power_character_sum(&self, d: &Poly, j: usize) -> Result<i64> {
        let field = self
            .fields
            .get(j - 1)
            .ok_or_else(|| Error::Domain(format!("no F_{{q^{j}}} table prepared")))?;
        Ok(field.character_sum(d))
    }

    /// L-data from point counts over F_{q^j}, Newton's identities, and the
    /// functional equation for the upper half.
    pub fn l_coeffs(&self, d: &Poly) -> Result<LData> {
        check_d(d)?;
        if d.q() != self.q {
            return domain("point counter built for a different q");
        }
        let n = d.deg();
        let lambda = n.is_multiple_of(2) as i64;
        let delta = (n - 1 - lambda as usize) / 2;
        let q = self.q as i128;
        // one power sum beyond δ gives a consistency check against the symmetry
        let j_top = if delta >= 1 { delta + 1 } else { 0 };
        // Σ α_i^j = q^j + 1 − #C(F_{q^j}); affine points q^j + S_j, plus 1 + λ at infinity
        let mut p = vec![0i128; j_top + 1];
        for (j, pj) in p.iter_mut().enumerate().skip(1) {
            *pj = -(self.power_character_sum(d, j)? as i128) - lambda as i128;
        }
        // e_k = (1/k) Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i
        let mut e = vec![1i128];
        for k in 1..=j_top {
            let mut s = 0i128;
            for i in 1..=k {
                let term = e[k - i] * p[i];
                s += if i % 2 == 1 { term } else { -term };
            }
            if s % k as i128 != 0 {
                return Err(Error::Inconsistent(format!(
                    "Newton division not integral at k = {k} for D = {d}"
                )));
            }
            e.push(s / k as i128);
        }
        let newton: Vec<i128> = e
            .iter()
            .enumerate()
            .map(|(k, &ek)| if k % 2 == 0 { ek } else { -ek })
            .collect();
        let mut a = vec![0i128; 2 * delta + 1];
        for i in 0..=delta {
            a[i] = newton[i];
            a[2 * delta - i] = q.pow((delta - i) as u32) * newton[i];
        }
        if delta >= 1 && newton[delta + 1] != a[delta + 1] {
            return Err(Error::Inconsistent(format!(
                "point-count coefficient a_{} = {} disagrees with the functional equation ({}) for D = {d}",
                delta + 1,
                newton[delta + 1],
                a[delta + 1]
            )));
        }
        let a = a
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Error::Domain("coefficient overflow".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(LData::from_completed(d.clone(), a))
    }
}

pub fn l_coeffs_pointcount(d: &Poly) -> Result<LData> {
    PointCounter::for_degree(d.q(), d.deg()).l_coeffs(d)
}

/// Σ c_n q^{−n/2}
pub fn central_from_coeffs(q: u32, c: &[i64]) -> QSqrt {
    let mut acc = QSqrt::zero(q);
    for (n, &cn) in c.iter().enumerate() {
        if cn != 0 {
            let w = QSqrt::q_half_pow(q, -(n as i64));
            acc += &w.scale(&BigRational::from_integer(BigInt::from(cn)));
        }
    }
    acc
}

pub fn central_value(l: &LData) -> QSqrt {
    l.central_value()
}

/// Four-sum approximate functional equation evaluated from c_0 … c_g.
pub fn afe_from_coeffs(q: u32, g: usize, c: &[i64]) -> QSqrt {
    let int = |k: i64| BigRational::from_integer(BigInt::from(k));
    let head = |top: usize| -> (QSqrt, i64) {
        (central_from_coeffs(q, &c[..top]), c[..top].iter().sum())
    };
    let (w_g, s_g) = head(g + 1);
    let (w_gm1, s_gm1) = head(g);
    let mut out = w_g;
    out = &out - &QSqrt::q_half_pow(q, -(g as i64 + 1)).scale(&int(s_g));
    out = &out + &w_gm1;
    out = &out - &QSqrt::q_half_pow(q, -(g as i64)).scale(&int(s_gm1));
    out
}

/// L(1/2, χ_D) by the approximate functional equation, D ∈ H_{2g+2}.
pub fn afe_value(fp: &FieldParams, d: &Poly, g: usize) -> Result<QSqrt> {
    check_d(d)?;
    if d.deg() != 2 * g + 2 {
        return domain(format!("afe_value needs d(D) = 2g + 2 = {}, got {}", 2 * g + 2, d.deg()));
    }
    let c = charsum_coeffs(fp, d.coeffs(), g);
    Ok(afe_from_coeffs(fp.q(), g, &c))
}

/// Outcome of the Riemann-hypothesis check on the roots of L*.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RhReport {
    pub passed: bool,
    /// max over roots of | |u| − q^{−1/2} |
    pub max_deviation: f64,
    /// |∏ roots − q^{−δ}|
    pub product_error: f64,
}

pub fn rh_report(l: &LData, tol: f64) -> Result<RhReport> {
    let delta = l.delta;
    if delta == 0 {
        return Ok(RhReport {
            passed: true,
            max_deviation: 0.0,
            product_error: 0.0,
        });
    }
    let deg = 2 * delta;
    let lead = l.a[deg] as f64;
    // companion matrix of the monic polynomial Σ (a_i/a_{2δ}) u^i
    let mut m = DMatrix::<f64>::zeros(deg, deg);
    for i in 1..deg {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..deg {
        m[(i, deg - 1)] = -(l.a[i] as f64) / lead;
    }
    // Even L* (roots in ± pairs) can stall the double-shift QR; a real shift
    // of the whole matrix breaks the symmetry and is undone afterwards.
    let roots: Vec<num_complex::Complex64> = [0.0, 0.25, 0.5]
        .into_iter()
        .find_map(|s| {
            let shifted = &m + DMatrix::<f64>::identity(deg, deg) * s;
            Schur::try_new(shifted, 1e-14, 10_000).map(|t| t.complex_eigenvalues().iter().map(|z| z - s).collect())
        })
        .ok_or_else(|| Error::NoConvergence("Schur iteration for L* roots".into()))?;
    let target = (l.q() as f64).powf(-0.5);
    let max_deviation = roots
        .iter()
        .map(|r| (r.norm() - target).abs())
        .fold(0.0, f64::max);
    let product: num_complex::Complex64 = roots.iter().product();
    let product_error = (product - (l.q() as f64).powi(-(delta as i32))).norm();
    Ok(RhReport {
        passed: max_deviation <= tol && product_error <= tol,
        max_deviation,
        product_error,
    })
}

pub fn rh_check(l: &LData, tol: f64) -> Result<bool> {
    Ok(rh_report(l, tol)?.passed)
}

/// True iff every prime factor of C divides f.
fn divides_power_of(c: &Poly, f: &Poly) -> bool {
    let mut c = c.clone();
    while !c.is_one() {
        let g = c.gcd(f);
        if g.is_one() {
            return false;
        }
        c = c.exact_div(&g).expect("gcd divides");
    }
    true
}

/// Both sides of the character-sum identity Σ_{D∈H_{2g+2}} χ_D(f) = ….
pub fn lemma25_sides(fp: &FieldParams, f: &Poly, g: usize) -> Result<(i64, i64)> {
    if !f.is_monic() {
        return domain(format!("f = {f} must be monic"));
    }
    let q = fp.q();
    let lhs: i64 = ensemble(q, 2 * g + 2)
        .map(|d| jacobi_raw(fp, d.coeffs(), f.coeffs()) as i64)
        .sum();
    let cs: Vec<Poly> = monic_up_to(q, g + 1)
        .filter(|c| divides_power_of(c, f))
        .collect();
    let mut rhs = 0i64;
    for c in &cs {
        let dc = c.deg();
        if dc <= g + 1 {
            rhs += modulus_character_sum(fp, f.coeffs(), 2 * g + 2 - 2 * dc);
        }
        if dc <= g {
            rhs -= q as i64 * modulus_character_sum(fp, f.coeffs(), 2 * g - 2 * dc);
        }
    }
    Ok((lhs, rhs))
}

pub fn verify_lemma25(fp: &FieldParams, f: &Poly, g: usize) -> Result<bool> {
    let (l, r) = lemma25_sides(fp, f, g)?;
    Ok(l == r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monic_polys;

    fn fp() -> FieldParams {
        FieldParams::new(5).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn linear_d() {
        let fp = fp();
        let l = l_coeffs_charsum(&fp, &fp.x()).unwrap();
        assert_eq!(l.c, vec![1]);
        assert_eq!((l.lambda, l.delta), (0, 0));
        assert_eq!(l.central_value(), QSqrt::one(5));
    }

    #[test]
    fn quadratic_d() {
        let fp = fp();
        let d = fp.poly(&[2, 0, 1]);
        let l = l_coeffs_charsum(&fp, &d).unwrap();
        assert_eq!(l.c, vec![1, -1]);
        assert_eq!((l.lambda, l.delta), (1, 0));
        assert_eq!(l.a, vec![1]);
        assert_eq!(l.central_value(), QSqrt::new(5, r(1, 1), r(-1, 5)));
        assert_eq!(l_coeffs_pointcount(&d).unwrap(), l);
        assert_eq!(afe_value(&fp, &d, 0).unwrap(), l.central_value());
    }

    #[test]
    fn quartic_sample() {
        let fp = fp();
        let d = ensemble(5, 4).nth(137).unwrap();
        let l = l_coeffs_charsum(&fp, &d).unwrap();
        assert_eq!(l.c.len(), 4);
        assert_eq!(l.a[2], 5);
        assert!(l.functional_equation_holds());
        assert_eq!(l_coeffs_pointcount(&d).unwrap(), l);
        assert!(rh_check(&l, 1e-6).unwrap());
        assert_eq!(afe_value(&fp, &d, 1).unwrap(), l.central_value());
    }

    #[test]
    fn odd_degree_pointcount() {
        let fp = fp();
        for d in monic_polys(5, 3).filter(|d| is_squarefree(d).unwrap()).take(30) {
            assert_eq!(l_coeffs_pointcount(&d).unwrap(), l_coeffs_charsum(&fp, &d).unwrap());
        }
    }

    #[test]
    fn afe_rejects_wrong_degree() {
        let fp = fp();
        assert!(afe_value(&fp, &fp.poly(&[1, 0, 1, 1]), 0).is_err());
    }

    #[test]
    fn central_float_matches_horner() {
        let fp = fp();
        let d = fp.poly(&[3, 1, 4, 1, 0, 2, 1]);
        let l = l_coeffs_charsum(&fp, &d).unwrap();
        let u = 5f64.powf(-0.5);
        let horner = l.c.iter().rev().fold(0.0, |acc, &c| acc * u + c as f64);
        assert!((l.central_value().to_f64() - horner).abs() < 1e-12);
    }

    #[test]
    fn lemma25_examples() {
        let fp = fp();
        let (l, r) = lemma25_sides(&fp, &fp.one(), 1).unwrap();
        assert_eq!((l, r), (500, 500));
        assert!(verify_lemma25(&fp, &fp.poly(&[2, 0, 1]), 0).unwrap());
        assert!(verify_lemma25(&fp, &fp.poly(&[0, 0, 1]), 1).unwrap());
    }

    #[test]
    fn rh_on_even_l_star() {
        // roots in ± pairs, and a double pair for (1 + 5u²)²
        for text in ["1,0,0,0,0,0,1", "1,1,0,0,0,0,1", "3,0,0,0,0,0,1"] {
            let d = fp().parse(text).unwrap();
            let l = l_coeffs_pointcount(&d).unwrap();
            assert!(rh_report(&l, 1e-6).unwrap().passed, "{text}");
        }
    }

}
