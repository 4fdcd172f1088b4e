//! The generating-function identities behind the secondary terms, checked by
//! truncated series: the B-factorisation (floating, through Gauss sums), the
//! B-to-D rewriting (exact rationals), and the boundary identity for C(u).

use quadlab::algebra::FieldParams;
use quadlab::euler::EulerContext;
use quadlab::series::{a_f_series, verify_eq517, verify_lemma52, verify_lemma53};

fn main() -> quadlab::Result<()> {
    let fp = FieldParams::new(5)?;
    let f = fp.parse("0,0,1")?;
    let a = a_f_series(&fp, &f, 3)?;
    println!("A_f(z) for f = {f}: {:?} then periodic with K_f/√|f| = {:.6}", a.coeffs, a.periodic);

    let r = verify_lemma52(&fp, 3, 3)?;
    println!(
        "B-factorisation: {} ({} coefficients, {} skipped, max rel. error {:.1e})",
        r.passed, r.compared, r.skipped, r.max_rel_error
    );
    let r = verify_lemma53(5, 5)?;
    println!("B-to-D rewriting, exact through w^5: {} ({} terms)", r.passed, r.terms_compared);

    let ctx = EulerContext::new(5, 64)?;
    let r = verify_eq517(&[0.5, -0.4, 1.0, 3.0], &ctx)?;
    for p in &r.points {
        println!("u = {:>4}: product side {:.15}, C(u)/ζ_A(2) {:.15}", p.u, p.lhs, p.rhs);
    }
    Ok(())
}
