use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use quadlab::algebra::{FieldParams, Poly, QSqrt};
use quadlab::characters::{jacobi, jacobi_slow};
use quadlab::series::TruncSeries;

fn poly(coeffs: Vec<u32>) -> Poly {
    let mut c: Vec<u32> = coeffs.into_iter().map(|x| x % 5).collect();
    c.push(1);
    Poly::from_coeffs(5, c)
}

fn arb_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u32..5, 0..=max_deg).prop_map(poly)
}

fn qs(a: (i64, i64), b: (i64, i64)) -> QSqrt {
    let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
    QSqrt::new(5, r(a), r(b))
}

fn arb_qsqrt() -> impl Strategy<Value = QSqrt> {
    ((-50i64..50, 1i64..20), (-50i64..50, 1i64..20)).prop_map(|(a, b)| qs(a, b))
}

fn arb_series() -> impl Strategy<Value = TruncSeries<BigRational>> {
    prop::collection::vec((0u32..4, -3i64..3, -9i64..9), 0..6).prop_map(|terms| {
        let mut s = TruncSeries::zero(3, Some(-6));
        for (k, e, c) in terms {
            s.add_term(k, e.min(k as i64), BigRational::from_integer(c.into()));
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_multiplicative_in_top(a in arb_poly(3), b in arb_poly(2), f in arb_poly(3)) {
        let fp = FieldParams::new(5).unwrap();
        let ab = a.mul(&b);
        prop_assert_eq!(jacobi(&fp, &ab, &f).unwrap(), jacobi(&fp, &a, &f).unwrap() * jacobi(&fp, &b, &f).unwrap());
        prop_assert_eq!(jacobi(&fp, &a, &f).unwrap(), jacobi_slow(&a, &f).unwrap());
    }

    #[test]
    fn qsqrt_field_laws(x in arb_qsqrt(), y in arb_qsqrt(), z in arb_qsqrt()) {
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!(x.clone() * x.conj(), QSqrt::from_rational(5, x.norm()));
        let f = (x.clone() * y.clone()).to_f64() - x.to_f64() * y.to_f64();
        prop_assert!(f.abs() < 1e-9 * (1.0 + (x.to_f64() * y.to_f64()).abs()));
    }

    #[test]
    fn series_ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&(b.clone() + c.clone())), a.mul_ref(&b) + a.mul_ref(&c));
    }
}
