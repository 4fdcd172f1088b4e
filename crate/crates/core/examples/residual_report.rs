//! Exact moments against the prediction: the residual ladder after T1, T1+T2
//! and all four terms, for both signs of the ζ_A(1/2) term.
//!
//!     cargo run --release --example residual_report -- 3

use quadlab::euler::EulerContext;
use quadlab::moments::{default_workers, residual_report, summarize, Method};

fn main() -> quadlab::Result<()> {
    let g_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let ctx = EulerContext::new(5, 64)?;
    let mut reports = Vec::new();
    for g in 0..=g_max {
        let r = residual_report(g, &ctx, Method::default_for(g), default_workers(), 1e11)?;
        println!("g = {g}: exact {} ≈ {:.6}", r.exact.text, r.exact_float);
        for t in &r.residuals {
            println!(
                "   sign {:+}: after T1 {:>14.6}  after T1+T2 {:>14.6}  after all {:>14.6}",
                t.sign_toggle, t.after_t1, t.after_t1t2, t.after_all
            );
        }
        reports.push(r);
    }
    let s = summarize(reports);
    println!("sign winning at every g ≥ 1: {:?}", s.consistent_toggle);
    println!("|exact − T1|/T1 decreasing in g: {}", s.rel_after_t1_decreasing);
    Ok(())
}
