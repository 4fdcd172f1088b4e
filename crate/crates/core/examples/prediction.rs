//! The four-term prediction for the first moment, both signs of the ζ_A(1/2)
//! term, and the consistency of T1 with the older main-term statement.

use quadlab::euler::{jung_main_term, predict_moment, EulerContext};

fn main() -> quadlab::Result<()> {
    let ctx = EulerContext::new(5, 64)?;
    println!("{:>2} {:>5} {:>18} {:>12} {:>10} {:>10}", "g", "sign", "T1", "T2", "T3", "T4");
    for g in 0..=6 {
        for sign in [1, -1] {
            let b = predict_moment(g, &ctx, sign)?;
            println!("{g:>2} {sign:>5} {:>18.6} {:>12.6} {:>10.4} {:>10.4}", b.t1, b.t2, b.t3, b.t4);
        }
        let jung = jung_main_term(g, &ctx)?;
        let t1 = predict_moment(g, &ctx, 1)?.t1;
        println!("   T1 vs main term written with log_q|D|: relative gap {:.1e}", ((t1 - jung) / jung).abs());
    }
    Ok(())
}
