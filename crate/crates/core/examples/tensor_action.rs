//! Γ(V,σ) for V = D̄* on the second worked example: the action on basis
//! vectors and the module residual.

use genwitt::config::ModuleSpec;
use genwitt::spanprobe::Window;
use genwitt::suite::{aw_compatibility, module_residual};
use genwitt::tensor::{ModuleDesc, TensorVec};
use genwitt::{GroupElem, Pairing, Scalar, WittElem};

fn main() -> genwitt::Result<()> {
    let s = |t: &str| Scalar::parse(t, 2);
    let p = Pairing::new(2, vec![vec![s("1")?, s("0")?], vec![s("0")?, s("1")?], vec![s("0")?, s("0+1s")?]])?;
    let v = ModuleSpec::Wedge(1).build(&p)?;
    let desc = ModuleDesc::new(p.clone(), v, vec![Scalar::from_frac(1, 3), Scalar::from_frac(1, 7)])?;
    let x = WittElem::parse("t^(1,0,1)[1,0]", 2)?;
    for i in 0..desc.dim_v() {
        let u = TensorVec::basis(GroupElem(vec![0, 1, 0]), i);
        println!("x · {u} = {}", desc.act_witt(&x, &u));
    }
    let w = Window::new(1, 1)?;
    for row in [module_residual(&desc, &w, 300, 3), aw_compatibility(&desc, &w, 300, 4)] {
        println!("{}: {} instances, {} failures", row.name, row.instances, row.failures);
    }
    Ok(())
}
