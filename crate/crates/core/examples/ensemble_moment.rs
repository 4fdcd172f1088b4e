//! The exact first moment over H_{2g+2} by all three routes.
//!
//!     cargo run --release --example ensemble_moment -- 2

use std::time::Instant;

use quadlab::moments::{default_workers, exact_moment, moment_cost, Method, DEFAULT_BUDGET};

fn main() -> quadlab::Result<()> {
    let g_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let workers = default_workers();
    for g in 0..=g_max {
        for method in Method::ALL {
            let t = Instant::now();
            let m = exact_moment(5, g, method, workers, DEFAULT_BUDGET)?;
            println!(
                "g = {g}  {method:<10}  |H| = {:>6}  Σ L(1/2) = {}  ≈ {:.6}  (cost {:.1e}, {:.2?})",
                m.ensemble_size,
                m.exact,
                m.exact.to_f64(),
                moment_cost(5, g, method),
                t.elapsed()
            );
        }
    }
    Ok(())
}
