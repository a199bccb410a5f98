//! Brackets in W(Z³, D, φ) and a randomized Jacobi check.

use genwitt::suite::jacobi;
use genwitt::{Pairing, Scalar, WittElem};

fn main() -> genwitt::Result<()> {
    let s = |t: &str| Scalar::parse(t, 2);
    let p = Pairing::new(2, vec![vec![s("1")?, s("0")?], vec![s("0")?, s("1")?], vec![s("0")?, s("0+1s")?]])?;
    let x = WittElem::parse("t^(1,0,0)[1,0]", 2)?;
    let y = WittElem::parse("t^(0,0,1)[0,1] + t^(-1,0,0)[1,1]", 2)?;
    println!("[x, y] = {}", x.bracket(&y, &p));
    println!("[y, x] = {}", y.bracket(&x, &p));
    let row = jacobi(&p, 500, 1);
    println!("{}: {} instances, {} failures", row.name, row.instances, row.failures);
    Ok(())
}
