//! The shift τ, the rank-one map ψ, and a certificate that Γ(σ,1) ≇ Γ(σ,2).

use genwitt::lmod::wedge_module;
use genwitt::spanprobe::{check_intertwiner, iso_psi_rank1, iso_shift, separation, Window};
use genwitt::tensor::ModuleDesc;
use genwitt::{GroupElem, Pairing, Scalar};

fn main() -> genwitt::Result<()> {
    let w = Window::new(1, 1)?;
    let p = Pairing::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let sigma = vec![Scalar::from_frac(1, 2), Scalar::from_frac(1, 3), Scalar::from_frac(1, 5)];
    let desc = ModuleDesc::new(p.clone(), wedge_module(3, 1)?, sigma)?;
    let (tau, shifted) = iso_shift(&desc, &GroupElem(vec![2, -1, 0]))?;
    println!("tau target sigma = {:?}", shifted.sigma());
    let rep = check_intertwiner(&desc, &shifted, &tau, &w, 300, 1);
    println!("tau: {} instances, {} failures", rep.instances, rep.failures);

    let line = Pairing::from_ints(&[&[1]]);
    let triv = ModuleDesc::new(line, wedge_module(1, 0)?, vec![Scalar::from_frac(1, 2)])?;
    let (psi, target) = iso_psi_rank1(&triv)?;
    let rep = check_intertwiner(&triv, &target, &psi, &w, 300, 2);
    println!("psi: {} instances, {} failures", rep.instances, rep.failures);

    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        match separation(&desc, i, j, &w)? {
            Some(s) => println!("Gamma({i}) vs Gamma({j}): t^{}{} at t^{} has nullities {} and {}", s.a, s.d, s.b, s.nullity_i, s.nullity_j),
            None => println!("Gamma({i}) vs Gamma({j}): no certificate in the window"),
        }
    }
    Ok(())
}
