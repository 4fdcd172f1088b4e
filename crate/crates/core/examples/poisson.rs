//! Quadratic Gauss sums as exact cyclotomic integers, and Poisson summation
//! checked as an identity in Z[ζ_q] for both parities of d(f).

use quadlab::algebra::{monic_polys, FieldParams};
use quadlab::cyclotomic::{gauss_sum, poisson_sides, sqrt_q_elem};

fn main() -> quadlab::Result<()> {
    let fp = FieldParams::new(5)?;
    println!("√5 in Z[ζ_5]: {}", sqrt_q_elem(&fp)?);
    let f = fp.parse("1,0,1,1")?;
    for v in ["1", "0,1", "2,0,1"] {
        let v = fp.parse(v)?;
        let g = gauss_sum(&fp, &v, &f)?;
        println!("G({v}, χ_f) for f = {f}: {g}   ≈ {:.6}", g.to_complex());
    }
    let (lhs, rhs) = poisson_sides(&fp, &f, 1)?;
    println!("Poisson, m = 1: |f|·LHS = {lhs}\n                |f|·RHS = {rhs}");

    let mut total = 0;
    let mut ok = 0;
    for d in 2..=4 {
        for f in monic_polys(5, d) {
            for m in 1..d {
                let (l, r) = poisson_sides(&fp, &f, m)?;
                total += 1;
                ok += (l == r) as usize;
            }
        }
    }
    println!("all monic f of degree 2..4, 1 ≤ m < d(f): {ok}/{total} exact");
    Ok(())
}
