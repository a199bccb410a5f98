//! Arithmetic in Q(√2): parsing, products, inverses and norms.

use genwitt::Scalar;

fn main() -> genwitt::Result<()> {
    let x = Scalar::parse("1/2+3s", 2)?;
    let y = Scalar::parse("-1+1/3s", 2)?;
    println!("x = {x}, y = {y}");
    println!("x + y = {}", &x + &y);
    println!("x * y = {}", &x * &y);
    println!("x / y = {}", &x * &y.inv()?);
    println!("N(x) = {}", x.norm());
    println!("conj(x) = {}", x.conjugate());
    let s = Scalar::sqrt_of(2);
    println!("sqrt2 * sqrt2 = {}", &s * &s);
    match Scalar::from_int(0).inv() {
        Err(e) => println!("1/0: {e}"),
        Ok(v) => println!("1/0 = {v}?"),
    }
    Ok(())
}
