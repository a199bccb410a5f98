//! Simplicity verdicts for tensor modules over the second worked example.

use genwitt::config::ModuleSpec;
use genwitt::spanprobe::{simplicity_report, Verdict, Window, DEFAULT_CAP};
use genwitt::tensor::ModuleDesc;
use genwitt::{Pairing, Scalar};

fn main() -> genwitt::Result<()> {
    let s = |t: &str| Scalar::parse(t, 2);
    let p = Pairing::new(2, vec![vec![s("1")?, s("0")?], vec![s("0")?, s("1")?], vec![s("0")?, s("0+1s")?]])?;
    let w = Window::new(1, 1)?;
    let sigmas = [("0", vec![Scalar::from_int(0); 2]), ("generic", vec![Scalar::from_frac(1, 3), Scalar::from_frac(1, 7)])];
    let modules = [ModuleSpec::Wedge(0), ModuleSpec::Wedge(1), ModuleSpec::Wedge(2), ModuleSpec::Adjoint, ModuleSpec::Vc(Scalar::from_frac(1, 2))];
    for (label, sigma) in &sigmas {
        for spec in &modules {
            let desc = ModuleDesc::new(p.clone(), spec.build(&p)?, sigma.clone())?;
            let rep = simplicity_report(&desc, &w, 1, DEFAULT_CAP);
            let verdict = match &rep.verdict {
                Verdict::SimpleEvidence { closure_dims, .. } => format!("simple (closures {closure_dims:?})"),
                Verdict::ProperSubmodule { submodule, .. } => format!("proper submodule: {submodule}"),
                Verdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
            };
            println!("sigma={label:<8} V={:<10} {verdict}", spec.label());
        }
    }
    Ok(())
}
