//! The chain π₀ → π₁ → π₂ on P = I₃ and the fiber dimensions of Γ(σ,k).

use genwitt::lmod::wedge_module;
use genwitt::tensor::ModuleDesc;
use genwitt::{GroupElem, Pairing, Scalar};

fn main() -> genwitt::Result<()> {
    let p = Pairing::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
    let sigma = vec![Scalar::from_frac(1, 2), Scalar::from_frac(1, 3), Scalar::from_frac(1, 5)];
    let descs: Vec<ModuleDesc> =
        (0..=3).map(|k| ModuleDesc::new(p.clone(), wedge_module(3, k)?, sigma.clone())).collect::<genwitt::Result<_>>()?;
    let b = GroupElem(vec![1, -1, 0]);
    println!("b + sigma = {:?}", descs[0].shifted_coords(&b));
    for k in 0..3 {
        println!("pi_{k} at b = {:?}", descs[k].pi_matrix(k, &b));
    }
    let comp = descs[1].pi_matrix(1, &b).mul(&descs[0].pi_matrix(0, &b));
    println!("pi_1 pi_0 zero: {}", comp.is_zero());
    for k in 1..=3 {
        let dims: Vec<usize> = GroupElem::box_points(3, 1).iter().map(|b| descs[k].gamma_k_fiber(k, b).map(|v| v.len())).collect::<genwitt::Result<_>>()?;
        println!("dim Gamma(sigma,{k}) over the 3^3 box: {:?}", dims.iter().collect::<std::collections::BTreeSet<_>>());
    }
    Ok(())
}
