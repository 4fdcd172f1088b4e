//! The residue-at-zero cancellation as formal polynomials in x = √q and the
//! Taylor symbols c_n, plus the inductive step exactly as it is displayed.

use quadlab::series::{appendix_identity, inductive_step, verify_parity_identities, FormalExpr, Parity};

fn main() {
    for t in 0..=6 {
        let even = appendix_identity(t, Parity::Even);
        let odd = appendix_identity(t, Parity::Odd);
        println!("t = {t}: even display → {even}, odd display → {odd}");
    }
    let step = inductive_step(2, Parity::Odd);
    println!(
        "odd step t = 2: splits with the printed bracket: {}; with the hypothesis bracket: {}",
        step.split_as_printed, step.split_corrected
    );
    println!("  printed bracket leaves {}", step.printed_bracket_residue);
    let failing = verify_parity_identities(20);
    println!("parity identities fail for g in {failing:?}");
    let demo = (FormalExpr::one() + FormalExpr::x_pow(1)) * FormalExpr::c(0);
    println!("a formal expression: {demo}");
}
