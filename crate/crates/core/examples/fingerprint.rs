//! Support shapes of Γ(σ,k) and Ker π_k over a box, for σ inside and outside G.

use genwitt::lmod::wedge_module;
use genwitt::spanprobe::{fingerprint, GammaK, TildeGamma, Window};
use genwitt::tensor::ModuleDesc;
use genwitt::{Pairing, Scalar};

fn main() -> genwitt::Result<()> {
    let p = Pairing::from_ints(&[&[1, 0], &[0, 1]]);
    let w = Window::new(1, 1)?;
    for sigma in [vec![Scalar::from_int(1), Scalar::from_int(0)], vec![Scalar::from_frac(1, 3), Scalar::from_frac(1, 5)]] {
        println!("sigma = {sigma:?}");
        for k in 1..=2 {
            let d = ModuleDesc::new(p.clone(), wedge_module(2, k)?, sigma.clone())?;
            println!("  image pi_{}: {:?}", k - 1, fingerprint(&d, &GammaK { desc: &d, k }, &w).shape);
            println!("  ker pi_{k}:   {:?}", fingerprint(&d, &TildeGamma { desc: &d, k }, &w).shape);
        }
    }
    Ok(())
}
