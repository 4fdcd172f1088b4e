//! One L-function end to end: coefficients by character sums and by point
//! counting, the completed polynomial, the exact central value, the AFE, RH.
//!
//!     cargo run --example lvalue -- 3,2,0,0,1,4,1

use quadlab::algebra::FieldParams;
use quadlab::lfun::{afe_value, l_coeffs_charsum, l_coeffs_pointcount, rh_report};

fn main() -> quadlab::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "3,2,0,0,1,4,1".into());
    let fp = FieldParams::new(5)?;
    let d = fp.parse(&text)?;
    let l = l_coeffs_charsum(&fp, &d)?;
    println!("D = {d}  (degree {}, genus {})", d.deg(), l.delta);
    println!("L(u)  coefficients c_n: {:?}", l.c);
    println!("L*(u) coefficients a_n: {:?}", l.a);
    println!("point count agrees:     {}", l_coeffs_pointcount(&d)? == l);
    println!("functional equation:    {}", l.functional_equation_holds());
    let central = l.central_value();
    println!("L(1/2, χ_D) = {central} ≈ {:.12}", central.to_f64());
    if d.deg() % 2 == 0 {
        let afe = afe_value(&fp, &d, d.deg() / 2 - 1)?;
        println!("approximate functional equation gives {afe} (equal: {})", afe == central);
    }
    let rh = rh_report(&l, 1e-9)?;
    println!("zeros on |u| = q^(-1/2): {} (max deviation {:.2e})", rh.passed, rh.max_deviation);
    Ok(())
}
