//! Laurent polynomial arithmetic and the ring maps used elsewhere.

use burnside::ring::{eval_root_of_unity, LaurentPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = LaurentPoly::parse("(1 - x)*(1 + y^-1) + 3*t", 2)?;
    let q = LaurentPoly::parse("x^-1 - t^-1", 2)?;
    println!("p       = {p}");
    println!("q       = {q}");
    println!("p*q     = {}", &p * &q);
    println!("p^2     = {}", p.pow(2));
    println!("eps(p)  = {}", p.augmentation());
    println!("p|t=1   = {}", p.set_t_one());
    for (j, c) in p.t_coefficients() {
        println!("[t^{j}] p = {c}");
    }
    let r = LaurentPoly::parse("x^5 - y^-3 + 2", 2)?;
    println!("{r} folded mod x^3-1, y^3-1: {}", r.fold_exponents(3));
    println!("{r} at x=z, y=z^2 in Z[z]/Phi_3: {}", eval_root_of_unity(&r, 3, 1, 2)?);
    Ok(())
}
