//! The map θ: G ⊗ D → gl_r̄ on basis tensors, and its compatibility with brackets.

use genwitt::lmod::{lbracket, make_frame, tensor, theta};
use genwitt::{DVector, GroupElem, Pairing, Scalar};

fn main() -> genwitt::Result<()> {
    let s = |t: &str| Scalar::parse(t, 2);
    let p = Pairing::new(2, vec![vec![s("1")?, s("0")?], vec![s("0")?, s("1")?], vec![s("0")?, s("0+1s")?]])?;
    let frame = make_frame(&p)?;
    println!("rbar = {}, picked a = {:?}", frame.rbar(), frame.a_pick());
    let basis: Vec<_> = (0..3)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (format!("e{}(x)d{}", i + 1, j + 1), tensor(&GroupElem::unit(3, i), &DVector::basis(2, j))))
        .collect();
    for (name, x) in &basis {
        println!("theta({name}) = {:?}", theta(x, &frame));
    }
    let mut bad = 0;
    for (_, x) in &basis {
        for (_, y) in &basis {
            if theta(&lbracket(&p, x, y), &frame) != theta(x, &frame).commutator(&theta(y, &frame)) {
                bad += 1;
            }
        }
    }
    println!("homomorphism failures: {bad}");
    Ok(())
}
