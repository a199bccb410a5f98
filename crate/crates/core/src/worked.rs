//! Two worked examples as deterministic
//! reports. Example 1 lives on `Z^∞` and is truncated to a configured finite
//! rank; Example 2 is reproduced verbatim.

use num_traits::Zero;

use crate::config::{Config, ModuleSpec};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lattice::{DVector, GroupElem};
use crate::lmod::{k1_basis, k2_basis, k1_plus_k2_dim, tensor, theta, LKind};
use crate::linalg::Mat;
use crate::spanprobe::{simplicity_report, Verdict, Window, DEFAULT_CAP};
use crate::suite::{aw_compatibility, module_residual, CheckRow};
use crate::tensor::{ModuleDesc, TensorVec};

pub const EXAMPLE1: &str = include_str!("../configs/example1.json");
pub const EXAMPLE2: &str = include_str!("../configs/example2.json");

pub const NAMES: [&str; 2] = ["example1", "example2"];

/// A report: rows of tab-separated fields, plus whether every check passed.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
}

impl Report {
    fn new() -> Report {
        Report { rows: Vec::new(), passed: true }
    }

    fn line(&mut self, fields: &[&str]) {
        self.rows.push(fields.iter().map(|s| s.to_string()).collect());
    }

    fn check(&mut self, row: &CheckRow) {
        self.passed &= row.passed();
        self.line(&[&row.name, &format!("instances={}", row.instances), &format!("failures={}", row.failures)]);
    }

    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for r in &self.rows {
            s.push_str(&r.join("\t"));
            s.push('\n');
        }
        s
    }
}

pub fn run(name: &str) -> Result<Report> {
    match name {
        "example1" => example1(&Config::from_json(EXAMPLE1)?),
        "example2" => example2(&Config::from_json(EXAMPLE2)?),
        other => Err(Error::config("", format!("unknown example {other:?}; known: {}", NAMES.join(", ")))),
    }
}

fn join(xs: &[Scalar]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn verdict_name(v: &Verdict) -> (&'static str, String) {
    match v {
        Verdict::SimpleEvidence { closure_dims, .. } => {
            ("simple-evidence", format!("closure-dims={}", closure_dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")))
        }
        Verdict::ProperSubmodule { submodule, .. } => ("proper-submodule", format!("submodule={submodule}")),
        Verdict::Inconclusive { reason } => ("inconclusive", format!("reason={reason}")),
    }
}

fn simplicity_line(rep: &mut Report, label: &str, desc: &ModuleDesc, w: &Window, seed: u64) {
    let s = simplicity_report(desc, w, seed, DEFAULT_CAP);
    rep.passed &= s.agrees();
    let (v, detail) = verdict_name(&s.verdict);
    let predicted = if s.prediction.simple { "simple" } else { "not-simple" };
    rep.line(&[&format!("simplicity:{label}"), &format!("predicted={predicted}"), &format!("verdict={v}"), &detail]);
}

/// `t^a d_i · v_b = (a_i + b_i + σ(d_i)) v_{a+b}` on `Γ(V¹, σ)` with `P = I`.
fn example1(cfg: &Config) -> Result<Report> {
    let n = cfg.n;
    if cfg.r() != n || (0..n).any(|i| (0..n).any(|j| *cfg.pairing.entry(i, j) != Scalar::from_int(i64::from(i == j)))) {
        return Err(Error::config("/pairing/P", "example 1 needs P = I"));
    }
    let w = cfg.window()?;
    let desc = cfg.desc()?;
    let mut rep = Report::new();
    rep.line(&["datum", &format!("n={n}"), &format!("r={n}"), "P=I"]);
    rep.line(&["module", &cfg.module.label()]);
    rep.line(&["sigma", &join(&cfg.sigma)]);

    let mut formula = CheckRow::new("formula");
    for a in w.operators(n) {
        for b in w.fibers(n) {
            for i in 0..n {
                let got = desc.act_basis(&a, i, &TensorVec::basis(b.clone(), 0));
                let c = Scalar::from_int(a.0[i] + b.0[i]) + &cfg.sigma[i];
                let want = TensorVec::basis(a.add(&b), 0).scale(&c);
                formula.record(got == want, || format!("a={a} b={b} i={i}"));
            }
        }
    }
    rep.check(&formula);
    rep.check(&module_residual(&desc, &w, 200, cfg.seed));
    rep.check(&aw_compatibility(&desc, &w, 200, cfg.seed + 1));

    // the cases named after the formula: σ ∈ G with c ∈ {0, 1}, and σ ∉ G
    let in_g: Vec<Scalar> = (0..n).map(|i| Scalar::from_int([1, 0, -1][i % 3])).collect();
    let cases: [(&str, Vec<Scalar>, Scalar); 4] = [
        ("sigma-generic,c=1", cfg.sigma.clone(), Scalar::from_int(1)),
        ("sigma-generic,c=0", cfg.sigma.clone(), Scalar::zero()),
        ("sigma-in-G,c=0", in_g.clone(), Scalar::zero()),
        ("sigma-in-G,c=1", in_g, Scalar::from_int(1)),
    ];
    for (label, sigma, c) in cases {
        let d = ModuleDesc::new(cfg.pairing.clone(), ModuleSpec::Vc(c).build(&cfg.pairing)?, sigma)?;
        simplicity_line(&mut rep, label, &d, &w, cfg.seed);
    }
    rep.line(&["status", if rep.passed { "pass" } else { "fail" }]);
    Ok(rep)
}

fn render_mat(m: &Mat) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| format!("[{}]", join(m.row(i)))).collect();
    format!("[{}]", rows.join(","))
}

/// `G = Z³`, `D = span{d₁, d₂+√2d₃}`, `φ(e_i, d_j) = δ_ij`.
fn example2(cfg: &Config) -> Result<Report> {
    let p = &cfg.pairing;
    if p.n() != 3 || p.r() != 2 {
        return Err(Error::config("/pairing/P", "example 2 has n = 3, r = 2"));
    }
    let w = cfg.window()?;
    let desc = cfg.desc()?;
    let frame = desc.frame();
    let rbar = desc.rbar();
    let mut rep = Report::new();
    rep.line(&["datum", "n=3", "r=2", &format!("m={}", cfg.m)]);
    rep.line(&["nondegenerate", &p.is_nondegenerate().to_string()]);
    rep.line(&["rbar", &rbar.to_string()]);
    let (k1, k2) = (k1_basis(p).len(), k2_basis(p).len());
    rep.line(&["dim-K1", &k1.to_string()]);
    rep.line(&["dim-K2", &k2.to_string()]);
    let sum = k1_plus_k2_dim(p);
    let identity = p.n() * p.r() == sum + rbar * rbar;
    rep.passed &= identity;
    rep.line(&["rank-identity", &format!("{}={}+{}", p.n() * p.r(), sum, rbar * rbar), &identity.to_string()]);
    for i in 0..p.n() {
        for j in 0..p.r() {
            let x = tensor(&GroupElem::unit(p.n(), i), &DVector::basis(p.r(), j));
            rep.line(&[&format!("theta:e{}(x)d{}", i + 1, j + 1), &render_mat(&theta(&x, frame))]);
        }
    }

    // t^α d₁ · t^γ⊗v = t^{α+γ}⊗(γ₁+σ₁ + α₁E₁₁ + (α₂+√2α₃)E₂₁)v
    // t^α d₂' · t^γ⊗v = t^{α+γ}⊗(γ₂+√2γ₃+σ₂ + α₁E₁₂ + (α₂+√2α₃)E₂₂)v
    let s2 = Scalar::sqrt_of(2);
    for spec in [ModuleSpec::Wedge(0), ModuleSpec::Wedge(1), ModuleSpec::Wedge(2), ModuleSpec::Adjoint] {
        let d = desc.with_module(spec.build(p)?)?;
        let LKind::Gl(ms) = d.module().kind() else {
            return Err(Error::pre("expected a gl-module"));
        };
        let e = |i: usize, j: usize| &ms[i * rbar + j];
        let mut row = CheckRow::new(&format!("formula:{}", spec.label()));
        for alpha in w.operators(3) {
            let (a1, a23) = (Scalar::from_int(alpha.0[0]), Scalar::from_int(alpha.0[1]) + &s2 * &Scalar::from_int(alpha.0[2]));
            for gamma in w.fibers(3) {
                let g1 = Scalar::from_int(gamma.0[0]);
                let g23 = Scalar::from_int(gamma.0[1]) + &s2 * &Scalar::from_int(gamma.0[2]);
                for idx in 0..d.dim_v() {
                    let v = TensorVec::basis(gamma.clone(), idx);
                    let shifted = v.a_act(&alpha);
                    let want1 = shifted
                        .scale(&(&g1 + &cfg.sigma[0]))
                        .add(&shifted.map_fibers(&e(0, 0).scale(&a1)))
                        .add(&shifted.map_fibers(&e(1, 0).scale(&a23)));
                    let want2 = shifted
                        .scale(&(&g23 + &cfg.sigma[1]))
                        .add(&shifted.map_fibers(&e(0, 1).scale(&a1)))
                        .add(&shifted.map_fibers(&e(1, 1).scale(&a23)));
                    row.record(d.act_basis(&alpha, 0, &v) == want1, || format!("alpha={alpha} v={v} d1"));
                    row.record(d.act_basis(&alpha, 1, &v) == want2, || format!("alpha={alpha} v={v} d2"));
                }
            }
        }
        rep.check(&row);
    }
    rep.check(&module_residual(&desc, &w, 200, cfg.seed));
    rep.check(&aw_compatibility(&desc, &w, 200, cfg.seed + 1));
    for spec in [ModuleSpec::Wedge(0), ModuleSpec::Wedge(1), ModuleSpec::Wedge(2), ModuleSpec::Vc(Scalar::from_frac(1, 2))] {
        let d = desc.with_module(spec.build(p)?)?;
        simplicity_line(&mut rep, &spec.label(), &d, &w, cfg.seed);
    }
    rep.line(&["status", if rep.passed { "pass" } else { "fail" }]);
    Ok(rep)
}
