//! Span closure, invariance certificates, simplicity reports and
//! isomorphism probes for tensor modules.
//!
//! Everything is fiberwise: the action maps the fiber at `b` into the fiber
//! at `a + b`, so a span is stored as one reduced echelon basis per lattice
//! point. Vectors may land outside the box; they are kept, just not expanded.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lattice::{DVector, GroupElem};
use crate::linalg::{rank_of, Mat};
use crate::lmod::{recognize_wedge, wedge_module};
use crate::tensor::{ModuleDesc, TensorVec};

pub const DEFAULT_CAP: usize = 5000;

/// Fibers in `[-box, box]ⁿ`, operators `t^a d_j` with `a ∈ [-op, op]ⁿ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub box_radius: i64,
    pub op_radius: i64,
}

impl Window {
    pub fn new(box_radius: i64, op_radius: i64) -> Result<Window> {
        if box_radius < 1 || op_radius < 1 {
            return Err(Error::Range("window radii must be at least 1".into()));
        }
        Ok(Window { box_radius, op_radius })
    }

    pub fn fibers(&self, n: usize) -> Vec<GroupElem> {
        GroupElem::box_points(n, self.box_radius)
    }

    pub fn operators(&self, n: usize) -> Vec<GroupElem> {
        GroupElem::box_points(n, self.op_radius)
    }

    pub fn in_box(&self, b: &GroupElem) -> bool {
        b.max_norm() <= self.box_radius
    }
}

#[derive(Clone, Debug, Default)]
struct Echelon {
    // sorted by pivot, pivot entry 1, fully reduced
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x *= &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }
}

/// A subspace of `Γ(V,σ)` spanned by finitely many homogeneous vectors.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim_v: usize,
    fibers: BTreeMap<GroupElem, Echelon>,
    count: usize,
}

impl SpanBasis {
    pub fn new(dim_v: usize) -> SpanBasis {
        SpanBasis { dim_v, fibers: BTreeMap::new(), count: 0 }
    }

    pub fn dim(&self) -> usize {
        self.count
    }

    pub fn fiber_dim(&self, b: &GroupElem) -> usize {
        self.fibers.get(b).map_or(0, |e| e.rows.len())
    }

    /// Inserts each homogeneous component; returns the components that were new.
    pub fn insert(&mut self, v: &TensorVec) -> Vec<TensorVec> {
        let mut added = Vec::new();
        for (b, comp) in v.split_fibers() {
            let coords = comp.fiber_coords(&b, self.dim_v);
            if self.fibers.entry(b.clone()).or_default().insert(coords) {
                self.count += 1;
                added.push(comp);
            }
        }
        added
    }

    pub fn contains(&self, v: &TensorVec) -> bool {
        v.split_fibers().into_iter().all(|(b, comp)| {
            let coords = comp.fiber_coords(&b, self.dim_v);
            match self.fibers.get(&b) {
                Some(e) => e.reduce(coords).iter().all(|x| x.is_zero()),
                None => false,
            }
        })
    }

    /// The echelon basis, ordered by `(b, pivot)`.
    pub fn vectors(&self) -> Vec<TensorVec> {
        self.fibers.iter().flat_map(|(b, e)| e.rows.iter().map(move |(_, row)| TensorVec::from_coords(b, row))).collect()
    }

    pub fn fiber_dims(&self) -> Vec<(GroupElem, usize)> {
        self.fibers.iter().map(|(b, e)| (b.clone(), e.rows.len())).filter(|(_, d)| *d > 0).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub span: SpanBasis,
    /// `false` when the dimension cap stopped the iteration.
    pub complete: bool,
}

impl Closure {
    /// Every box fiber reached with full dimension `dim V`.
    pub fn fills_box(&self, desc: &ModuleDesc, w: &Window) -> bool {
        w.fibers(desc.pairing().n()).iter().all(|b| self.span.fiber_dim(b) == desc.dim_v())
    }
}

/// Least span containing `seeds` and closed under `t^a d_j` for `a` in the
/// operator box, applied to vectors whose fiber lies in the fiber box.
pub fn closure(desc: &ModuleDesc, seeds: &[TensorVec], w: &Window, cap: usize) -> Closure {
    let n = desc.pairing().n();
    let r = desc.pairing().r();
    let ops = w.operators(n);
    let mut span = SpanBasis::new(desc.dim_v());
    let mut frontier: Vec<TensorVec> = Vec::new();
    for s in seeds {
        frontier.extend(span.insert(s));
    }
    while !frontier.is_empty() {
        let expand: Vec<TensorVec> = frontier.drain(..).filter(|v| v.support().iter().all(|b| w.in_box(b))).collect();
        let images: Vec<Vec<TensorVec>> = expand
            .par_iter()
            .map(|v| {
                let mut out = Vec::with_capacity(ops.len() * r);
                for a in &ops {
                    for j in 0..r {
                        let img = desc.act_basis(a, j, v);
                        if !img.is_zero() {
                            out.push(img);
                        }
                    }
                }
                out
            })
            .collect();
        for img in images.into_iter().flatten() {
            if span.contains(&img) {
                continue;
            }
            frontier.extend(span.insert(&img));
            if span.dim() > cap {
                return Closure { span, complete: false };
            }
        }
    }
    Closure { span, complete: true }
}

/// A subspace of `Γ(V,σ)` known fiber by fiber at every lattice point.
pub trait FiberSubspace: Sync {
    fn dim_v(&self) -> usize;

    /// A basis of the fiber at `b`, as coordinate vectors of length `dim V`.
    fn basis_at(&self, b: &GroupElem) -> Vec<Vec<Scalar>>;

    fn name(&self) -> String;

    fn contains(&self, v: &TensorVec) -> bool {
        v.split_fibers().into_iter().all(|(b, comp)| {
            let mut rows = self.basis_at(&b);
            let base = rows.len();
            rows.push(comp.fiber_coords(&b, self.dim_v()));
            rank_of(&rows) == base
        })
    }
}

/// The whole module.
pub struct Whole(pub usize);

impl FiberSubspace for Whole {
    fn dim_v(&self) -> usize {
        self.0
    }
    fn basis_at(&self, _: &GroupElem) -> Vec<Vec<Scalar>> {
        unit_rows(self.0)
    }
    fn name(&self) -> String {
        "whole".into()
    }
    fn contains(&self, _: &TensorVec) -> bool {
        true
    }
}

fn unit_rows(dim: usize) -> Vec<Vec<Scalar>> {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect()).collect()
}

/// `Γ̃(σ,k) = Ker π_k` inside `Γ(∧^k D̄*, σ)`.
pub struct TildeGamma<'a> {
    pub desc: &'a ModuleDesc,
    pub k: usize,
}

impl FiberSubspace for TildeGamma<'_> {
    fn dim_v(&self) -> usize {
        self.desc.dim_v()
    }
    fn basis_at(&self, b: &GroupElem) -> Vec<Vec<Scalar>> {
        let vs = self.desc.tilde_gamma_k_fiber(self.k, b).expect("valid Koszul degree");
        vs.iter().map(|v| v.fiber_coords(b, self.dim_v())).collect()
    }
    fn name(&self) -> String {
        format!("ker pi_{}", self.k)
    }
    fn contains(&self, v: &TensorVec) -> bool {
        if self.k == self.desc.rbar() {
            return true;
        }
        self.desc.pi(v).map(|x| x.is_zero()).unwrap_or(false)
    }
}

/// `Γ(σ,k) = Im π_{k−1}` inside `Γ(∧^k D̄*, σ)`.
pub struct GammaK<'a> {
    pub desc: &'a ModuleDesc,
    pub k: usize,
}

impl FiberSubspace for GammaK<'_> {
    fn dim_v(&self) -> usize {
        self.desc.dim_v()
    }
    fn basis_at(&self, b: &GroupElem) -> Vec<Vec<Scalar>> {
        let vs = self.desc.gamma_k_fiber(self.k, b).expect("valid Koszul degree");
        vs.iter().map(|v| v.fiber_coords(b, self.dim_v())).collect()
    }
    fn name(&self) -> String {
        format!("image pi_{}", self.k - 1)
    }
}

/// `t^{b₀} ⊗ V`, a single full fiber.
pub struct SingleFiber {
    pub at: GroupElem,
    pub dim: usize,
}

impl FiberSubspace for SingleFiber {
    fn dim_v(&self) -> usize {
        self.dim
    }
    fn basis_at(&self, b: &GroupElem) -> Vec<Vec<Scalar>> {
        if *b == self.at {
            unit_rows(self.dim)
        } else {
            Vec::new()
        }
    }
    fn name(&self) -> String {
        format!("fiber at {}", self.at)
    }
}

/// Every fiber except the one at `b₀`.
pub struct Punctured {
    pub missing: GroupElem,
    pub dim: usize,
}

impl FiberSubspace for Punctured {
    fn dim_v(&self) -> usize {
        self.dim
    }
    fn basis_at(&self, b: &GroupElem) -> Vec<Vec<Scalar>> {
        if *b == self.missing {
            Vec::new()
        } else {
            unit_rows(self.dim)
        }
    }
    fn name(&self) -> String {
        format!("all fibers except {}", self.missing)
    }
}

/// Finitely many fibers given explicitly; zero elsewhere.
pub struct Explicit {
    pub dim: usize,
    pub fibers: BTreeMap<GroupElem, Vec<Vec<Scalar>>>,
}

impl FiberSubspace for Explicit {
    fn dim_v(&self) -> usize {
        self.dim
    }
    fn basis_at(&self, b: &GroupElem) -> Vec<Vec<Scalar>> {
        self.fibers.get(b).cloned().unwrap_or_default()
    }
    fn name(&self) -> String {
        "explicit".into()
    }
}

/// An operator `t^a d_j` and a subspace vector whose image escapes.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub a: String,
    pub j: usize,
    pub v: String,
    pub image: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Invariance {
    pub invariant: bool,
    pub checked: usize,
    pub violation: Option<Violation>,
}

/// Checks `t^a d_j · v ∈ U` for every basis vector `v` of `U` at a box fiber
/// and every operator in the window. Membership is tested wherever the image lands.
pub fn is_invariant(desc: &ModuleDesc, sub: &dyn FiberSubspace, w: &Window) -> Invariance {
    let n = desc.pairing().n();
    let r = desc.pairing().r();
    let ops = w.operators(n);
    let results: Vec<(usize, Option<Violation>)> = w
        .fibers(n)
        .par_iter()
        .map(|b| {
            let mut checked = 0;
            for coords in sub.basis_at(b) {
                let v = TensorVec::from_coords(b, &coords);
                for a in &ops {
                    for j in 0..r {
                        checked += 1;
                        let img = desc.act_basis(a, j, &v);
                        if !sub.contains(&img) {
                            let violation = Violation { a: a.to_string(), j, v: v.to_string(), image: img.to_string() };
                            return (checked, Some(violation));
                        }
                    }
                }
            }
            (checked, None)
        })
        .collect();
    let checked = results.iter().map(|(c, _)| c).sum();
    let violation = results.into_iter().find_map(|(_, v)| v);
    Invariance { invariant: violation.is_none(), checked, violation }
}

/// What the simplicity criterion for tensor modules predicts.
#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub rbar: usize,
    pub wedge: Option<usize>,
    pub sigma_kills_ker2: bool,
    pub sigma_in_g: Option<String>,
    pub simple: bool,
    pub reason: String,
}

pub fn predict(desc: &ModuleDesc) -> Prediction {
    let rbar = desc.rbar();
    let wedge = recognize_wedge(desc.module(), desc.pairing(), desc.frame());
    let kills = desc.sigma_kills_ker2();
    let in_g = desc.sigma_in_g();
    let (simple, reason) = match wedge {
        Some(l) if l >= 1 && l < rbar && kills => (false, format!("V is wedge^{l} with 0<{l}<{rbar} and sigma kills Ker2")),
        Some(l) if (l == 0 || l == rbar) && in_g.is_some() => (false, format!("V is wedge^{l} and sigma lies in G")),
        Some(_) if !kills => (true, "sigma does not kill Ker2".into()),
        Some(l) => (true, format!("V is wedge^{l} and sigma is not in G")),
        None => (true, "V is not a wedge power".into()),
    };
    Prediction { rbar, wedge, sigma_kills_ker2: kills, sigma_in_g: in_g.map(|b| b.to_string()), simple, reason }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    SimpleEvidence {
        seeds: Vec<String>,
        closure_dims: Vec<usize>,
    },
    ProperSubmodule {
        submodule: String,
        certificate: Invariance,
        /// A box fiber where the submodule is nonzero, and one where it is not everything.
        nonzero_at: String,
        proper_at: String,
    },
    Inconclusive {
        reason: String,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityReport {
    pub seed: u64,
    pub window: Window,
    pub prediction: Prediction,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl SimplicityReport {
    /// Whether the computed verdict agrees with the prediction.
    pub fn agrees(&self) -> bool {
        matches!(
            (&self.verdict, self.prediction.simple),
            (Verdict::SimpleEvidence { .. }, true) | (Verdict::ProperSubmodule { .. }, false)
        )
    }
}

/// The invariant subspace the criterion predicts, if any.
fn predicted_submodule<'a>(desc: &'a ModuleDesc, p: &Prediction) -> Option<Box<dyn FiberSubspace + 'a>> {
    let l = p.wedge?;
    let dim = desc.dim_v();
    if p.simple {
        return None;
    }
    let minus_sigma = desc.sigma_in_g().map(|b| b.neg());
    if l >= 1 && l < p.rbar {
        Some(Box::new(TildeGamma { desc, k: l }))
    } else if l == 0 {
        Some(Box::new(SingleFiber { at: minus_sigma?, dim }))
    } else {
        Some(Box::new(Punctured { missing: minus_sigma?, dim }))
    }
}

/// Random nonzero vector in a random box fiber.
pub fn random_seed(desc: &ModuleDesc, w: &Window, rng: &mut ChaCha8Rng) -> TensorVec {
    let n = desc.pairing().n();
    let b = GroupElem((0..n).map(|_| rng.gen_range(-w.box_radius..=w.box_radius)).collect());
    loop {
        let coords: Vec<Scalar> = (0..desc.dim_v()).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect();
        if coords.iter().any(|c| !c.is_zero()) {
            return TensorVec::from_coords(&b, &coords);
        }
    }
}

pub fn simplicity_report(desc: &ModuleDesc, w: &Window, seed: u64, cap: usize) -> SimplicityReport {
    let prediction = predict(desc);
    let verdict = match predicted_submodule(desc, &prediction) {
        Some(sub) => submodule_verdict(desc, sub.as_ref(), w),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seeds: Vec<TensorVec> = (0..3).map(|_| random_seed(desc, w, &mut rng)).collect();
            let mut dims = Vec::new();
            let mut filled = true;
            let mut complete = true;
            for s in &seeds {
                let c = closure(desc, std::slice::from_ref(s), w, cap);
                complete &= c.complete;
                filled &= c.fills_box(desc, w);
                dims.push(c.span.dim());
            }
            if filled {
                Verdict::SimpleEvidence { seeds: seeds.iter().map(|s| s.to_string()).collect(), closure_dims: dims }
            } else if !complete {
                Verdict::Inconclusive { reason: format!("dimension cap {cap} reached") }
            } else {
                Verdict::Inconclusive { reason: "closure did not fill the box".into() }
            }
        }
    };
    SimplicityReport { seed, window: *w, prediction, verdict }
}

fn submodule_verdict(desc: &ModuleDesc, sub: &dyn FiberSubspace, w: &Window) -> Verdict {
    let certificate = is_invariant(desc, sub, w);
    if !certificate.invariant {
        return Verdict::Inconclusive { reason: format!("{} is not invariant", sub.name()) };
    }
    let fibers = w.fibers(desc.pairing().n());
    let dims: Vec<(GroupElem, usize)> = fibers.iter().map(|b| (b.clone(), sub.basis_at(b).len())).collect();
    let nonzero = dims.iter().find(|(_, d)| *d > 0);
    let proper = dims.iter().find(|(_, d)| *d < desc.dim_v());
    match (nonzero, proper) {
        (Some(nz), Some(pr)) => Verdict::ProperSubmodule {
            submodule: sub.name(),
            certificate,
            nonzero_at: nz.0.to_string(),
            proper_at: pr.0.to_string(),
        },
        _ => Verdict::Inconclusive { reason: format!("{} is zero or everything on the box", sub.name()) },
    }
}

/// A linear map between tensor modules.
pub trait ModuleMap: Sync {
    fn apply(&self, v: &TensorVec) -> TensorVec;
}

/// `τ: t^b⊗v ↦ t^{b−a}⊗v`, from `Γ(V,σ)` to `Γ(V, σ + φ(a,·))`.
pub struct Shift {
    pub a: GroupElem,
}

impl ModuleMap for Shift {
    fn apply(&self, v: &TensorVec) -> TensorVec {
        v.a_act(&self.a.neg())
    }
}

pub fn iso_shift(desc: &ModuleDesc, a: &GroupElem) -> Result<(Shift, ModuleDesc)> {
    let p = desc.pairing();
    let sigma: Vec<Scalar> = (0..p.r()).map(|j| &desc.sigma()[j] + &p.pair_basis(a, j)).collect();
    Ok((Shift { a: a.clone() }, desc.with_sigma(sigma)?))
}

/// `ψ: t^b⊗v ↦ (σ+b)(d̄) t^b⊗v'` from `Γ(∧⁰,σ)` to `Γ(∧¹,σ)` when `r̄ = 1`.
pub struct Psi {
    desc: ModuleDesc,
}

impl ModuleMap for Psi {
    fn apply(&self, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::zero();
        for ((b, i), c) in v.terms() {
            let s = &self.desc.shifted_coords(b)[0];
            out.add_term(b.clone(), *i, &(s * c));
        }
        out
    }
}

pub fn iso_psi_rank1(desc: &ModuleDesc) -> Result<(Psi, ModuleDesc)> {
    if desc.rbar() != 1 {
        return Err(Error::pre(format!("ψ needs r̄ = 1, got {}", desc.rbar())));
    }
    if desc.sigma_in_g().is_some() {
        return Err(Error::pre("ψ needs σ ∉ G"));
    }
    if !desc.sigma_kills_ker2() {
        return Err(Error::pre("ψ needs σ(Ker₂φ) = 0"));
    }
    if recognize_wedge(desc.module(), desc.pairing(), desc.frame()) != Some(0) {
        return Err(Error::pre("ψ starts from the trivial module"));
    }
    let target = desc.with_module(wedge_module(1, 1)?)?;
    Ok((Psi { desc: desc.clone() }, target))
}

#[derive(Clone, Debug, Serialize)]
pub struct IntertwinerReport {
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Tests `f(x·v) = x·f(v)` on random `x = t^a d` and random `v`.
pub fn check_intertwiner(
    src: &ModuleDesc,
    dst: &ModuleDesc,
    f: &dyn ModuleMap,
    w: &Window,
    instances: usize,
    seed: u64,
) -> IntertwinerReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = src.pairing().n();
    let r = src.pairing().r();
    let mut failures = 0;
    let mut first_failure = None;
    for _ in 0..instances {
        let v = random_seed(src, w, &mut rng).add(&random_seed(src, w, &mut rng));
        let a = GroupElem((0..n).map(|_| rng.gen_range(-w.op_radius..=w.op_radius)).collect());
        let d = DVector((0..r).map(|_| Scalar::from_int(rng.gen_range(-2..=2))).collect());
        let lhs = f.apply(&src.act(&a, &d, &v));
        let rhs = dst.act(&a, &d, &f.apply(&v));
        if lhs != rhs {
            failures += 1;
            first_failure.get_or_insert_with(|| format!("a={a} d={d} v={v}"));
        }
    }
    IntertwinerReport { instances, failures, first_failure }
}

/// Per-fiber dimensions of a subspace over the box and the shape of its support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub dim_v: usize,
    pub fibers: Vec<(String, usize)>,
    pub shape: SupportShape,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SupportShape {
    /// Every fiber has dimension `dim`.
    Full { dim: usize },
    /// Every fiber but one has dimension `dim`.
    Punctured { missing: String, dim: usize },
    Zero,
    Irregular,
}

pub fn fingerprint(desc: &ModuleDesc, sub: &dyn FiberSubspace, w: &Window) -> Fingerprint {
    let fibers: Vec<(GroupElem, usize)> =
        w.fibers(desc.pairing().n()).par_iter().map(|b| (b.clone(), sub.basis_at(b).len())).collect();
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, d) in &fibers {
        *counts.entry(*d).or_default() += 1;
    }
    let shape = match counts.len() {
        1 if counts.contains_key(&0) => SupportShape::Zero,
        1 => SupportShape::Full { dim: *counts.keys().next().unwrap() },
        2 if counts.get(&0) == Some(&1) => {
            let missing = fibers.iter().find(|(_, d)| *d == 0).unwrap().0.to_string();
            SupportShape::Punctured { missing, dim: *counts.keys().last().unwrap() }
        }
        _ => SupportShape::Irregular,
    };
    Fingerprint { dim_v: desc.dim_v(), fibers: fibers.into_iter().map(|(b, d)| (b.to_string(), d)).collect(), shape }
}

/// An operator `t^a d` with `(b+σ)(d) = 0` whose kernels on the fibers of
/// `Γ(σ,i)` and `Γ(σ,j)` at `t^b` have different dimensions.
#[derive(Clone, Debug, Serialize)]
pub struct Separation {
    pub i: usize,
    pub j: usize,
    pub b: String,
    pub a: String,
    pub d: String,
    pub nullity_i: usize,
    pub nullity_j: usize,
    /// A vector of the larger kernel.
    pub killed: String,
}

/// Searches the window for a certificate that `Γ(σ,i) ≇ Γ(σ,j)`.
/// `base` is any tensor module on the datum; only `σ` and the frame are used.
pub fn separation(base: &ModuleDesc, i: usize, j: usize, w: &Window) -> Result<Option<Separation>> {
    let rbar = base.rbar();
    if i == j || i == 0 || j == 0 || i > rbar || j > rbar {
        return Err(Error::Range(format!("need distinct degrees in 1..={rbar}")));
    }
    let di = base.with_module(wedge_module(rbar, i)?)?;
    let dj = base.with_module(wedge_module(rbar, j)?)?;
    let n = base.pairing().n();
    let r = base.pairing().r();
    for b in w.fibers(n) {
        let c = base.shifted_coords(&b);
        if c.iter().all(|x| x.is_zero()) {
            continue;
        }
        let kernel = Mat::from_rows(vec![c]).nullspace();
        let ds: Vec<DVector> = kernel
            .iter()
            .map(|y| {
                let mut d = DVector::zero(r);
                for (l, yl) in y.iter().enumerate() {
                    d.add_scaled(yl, &base.frame().dbar_basis()[l]);
                }
                d
            })
            .collect();
        let gi = di.gamma_k_fiber(i, &b)?;
        let gj = dj.gamma_k_fiber(j, &b)?;
        for a in w.operators(n) {
            for d in &ds {
                let (ni, ki) = nullity(&di, &gi, &a, d, &b);
                let (nj, kj) = nullity(&dj, &gj, &a, d, &b);
                if ni != nj {
                    let killed = if ni > nj { ki } else { kj };
                    return Ok(Some(Separation {
                        i,
                        j,
                        b: b.to_string(),
                        a: a.to_string(),
                        d: d.to_string(),
                        nullity_i: ni,
                        nullity_j: nj,
                        killed: killed.map(|v| v.to_string()).unwrap_or_default(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn nullity(desc: &ModuleDesc, basis: &[TensorVec], a: &GroupElem, d: &DVector, b: &GroupElem) -> (usize, Option<TensorVec>) {
    let target = a.add(b);
    let cols: Vec<Vec<Scalar>> = basis.iter().map(|v| desc.act(a, d, v).fiber_coords(&target, desc.dim_v())).collect();
    if cols.is_empty() {
        return (0, None);
    }
    let m = Mat::from_fn(desc.dim_v(), cols.len(), |r, c| cols[c][r].clone());
    let ker = m.nullspace();
    let witness = ker.first().map(|y| {
        let mut v = TensorVec::zero();
        for (c, yc) in y.iter().enumerate() {
            v.add_assign_scaled(yc, &basis[c]);
        }
        v
    });
    (ker.len(), witness)
}
