//! Jacobi symbols by the reciprocity loop versus factorisation, and the
//! character-sum identity that turns Σ_D χ_D(f) into sums over h.

use quadlab::algebra::{monic_polys, monic_up_to, FieldParams};
use quadlab::characters::{chi, jacobi, jacobi_slow};
use quadlab::lfun::lemma25_sides;

fn main() -> quadlab::Result<()> {
    let fp = FieldParams::new(5)?;
    let d = fp.parse("2,0,1")?;
    print!("χ_D(f) for D = {d}, f monic linear:");
    for f in monic_polys(5, 1) {
        print!(" {}", chi(&fp, &d, &f)?);
    }
    println!();

    let mut agree = 0;
    let all: Vec<_> = monic_up_to(5, 3).collect();
    for a in &all {
        for b in &all {
            agree += (jacobi(&fp, a, b)? == jacobi_slow(a, b)?) as usize;
        }
    }
    println!("reciprocity loop = factorisation on {agree}/{} pairs", all.len() * all.len());

    for g in 0..=1 {
        let f = fp.parse("1,1,1")?;
        let (lhs, rhs) = lemma25_sides(&fp, &f, g)?;
        println!("g = {g}, f = {f}: Σ_D χ_D(f) = {lhs}, via h-sums = {rhs}");
    }
    Ok(())
}
