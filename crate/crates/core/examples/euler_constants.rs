//! Degree-grouped Euler products: P(1) and P'/P, C(u) from both of its
//! representations, the D-product at the special point, and the secondary
//! constants built from them.

use quadlab::euler::{c_continued, c_product, c_taylor, constants, d_special, euler_p, EulerContext};

fn main() -> quadlab::Result<()> {
    let ctx = EulerContext::new(5, 64)?;
    let p = euler_p(1.0, &ctx)?;
    println!("P(1) = {:.15}   P'/P(1)/log q = {:.15}", p.value, p.logderiv_over_logq);
    for u in [0.2, 0.5, 0.9] {
        println!(
            "C({u}) product {:.15}  continued {:.15}",
            c_product(u, &ctx)?,
            c_continued(u, &ctx)?
        );
    }
    println!("C(2.5) continued only: {:.15}", c_continued(2.5, &ctx)?);
    let taylor: Vec<String> = c_taylor(4, 5).iter().map(|c| c.to_string()).collect();
    println!("C(u) = {} + …", taylor.join(", "));
    let ds = d_special(&ctx)?;
    println!(
        "∏D_P(q^-4/3, q^-1/3) = {:.15}; scaled log-derivative {:.12} (printed closed form {:.12})",
        ds.product, ds.logderiv, ds.logderiv_printed
    );
    let c = constants(&ctx)?;
    println!("C1 = {:.12}  C2 = {:.12}  R1 = {:.12}  R0 = {:.12}", c.c1, c.c2, c.r1, c.r0);
    Ok(())
}
