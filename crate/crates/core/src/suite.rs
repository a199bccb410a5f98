//! Randomized identity checks for one datum: the Lie axioms, the module
//! axioms of `Γ(V,σ)`, compatibility with the `A`-action, the Koszul chain
//! and the dimension count for `R/(K₁+K₂)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::field::Scalar;
use crate::lattice::{DVector, GroupElem, Pairing};
use crate::lmod::{k1_plus_k2_dim, wedge_module};
use crate::spanprobe::{random_seed, Window};
use crate::tensor::{ModuleDesc, TensorVec};
use crate::witt::{AElem, WittElem};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckRow {
    pub fn new(name: &str) -> CheckRow {
        CheckRow { name: name.into(), instances: 0, failures: 0, first_failure: None }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn random_point(rng: &mut ChaCha8Rng, n: usize, radius: i64) -> GroupElem {
    GroupElem((0..n).map(|_| rng.gen_range(-radius..=radius)).collect())
}

pub fn random_dvector(rng: &mut ChaCha8Rng, r: usize) -> DVector {
    DVector((0..r).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect())
}

/// A random element with up to `terms` monomials.
pub fn random_witt(rng: &mut ChaCha8Rng, p: &Pairing, radius: i64, terms: usize) -> WittElem {
    let mut x = WittElem::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        x.add_term(random_point(rng, p.n(), radius), &random_dvector(rng, p.r()));
    }
    x
}

pub fn jacobi(p: &Pairing, instances: usize, seed: u64) -> CheckRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut row = CheckRow::new("jacobi+antisymmetry");
    for _ in 0..instances {
        let x = random_witt(&mut rng, p, 2, 2);
        let y = random_witt(&mut rng, p, 2, 2);
        let z = random_witt(&mut rng, p, 2, 2);
        let jac = x.bracket(&y.bracket(&z, p), p).add(&y.bracket(&z.bracket(&x, p), p)).add(&z.bracket(&x.bracket(&y, p), p));
        let anti = x.bracket(&y, p).add(&y.bracket(&x, p));
        row.record(jac.is_zero() && anti.is_zero(), || format!("x={x} y={y} z={z}"));
    }
    row
}

/// `x·(y·v) − y·(x·v) = [x,y]·v`.
pub fn module_residual(desc: &ModuleDesc, w: &Window, instances: usize, seed: u64) -> CheckRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = desc.pairing();
    let mut row = CheckRow::new("module-residual");
    for _ in 0..instances {
        let x = random_witt(&mut rng, p, w.op_radius, 2);
        let y = random_witt(&mut rng, p, w.op_radius, 2);
        let v = random_seed(desc, w, &mut rng).add(&random_seed(desc, w, &mut rng));
        let lhs = desc.act_witt(&x, &desc.act_witt(&y, &v)).sub(&desc.act_witt(&y, &desc.act_witt(&x, &v)));
        let rhs = desc.act_witt(&x.bracket(&y, p), &v);
        row.record(lhs == rhs, || format!("x={x} y={y} v={v}"));
    }
    row
}

/// `x·(t^{a'}·v) − t^{a'}·(x·v) = [x, t^{a'}]·v`.
pub fn aw_compatibility(desc: &ModuleDesc, w: &Window, instances: usize, seed: u64) -> CheckRow {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = desc.pairing();
    let mut row = CheckRow::new("aw-compatibility");
    for _ in 0..instances {
        let x = random_witt(&mut rng, p, w.op_radius, 2);
        let a = random_point(&mut rng, p.n(), w.op_radius);
        let v = random_seed(desc, w, &mut rng);
        let lhs = desc.act_witt(&x, &v.a_act(&a)).sub(&desc.act_witt(&x, &v).a_act(&a));
        let mut rhs = TensorVec::zero();
        for (b, c) in x.bracket_a(&AElem::monomial(a.clone()), p).terms() {
            rhs.add_assign_scaled(c, &v.a_act(b));
        }
        row.record(lhs == rhs, || format!("x={x} a={a} v={v}"));
    }
    row
}

/// `π_{k+1}∘π_k = 0` and `π_k(x·v) = x·π_k(v)` for every `k`.
pub fn koszul(desc: &ModuleDesc, w: &Window, instances: usize, seed: u64) -> Option<CheckRow> {
    if !desc.sigma_kills_ker2() || desc.rbar() == 0 {
        return None;
    }
    let rbar = desc.rbar();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = desc.pairing();
    let mut row = CheckRow::new("koszul");
    let descs: Vec<ModuleDesc> =
        (0..=rbar).map(|k| desc.with_module(wedge_module(rbar, k).expect("wedge")).expect("desc")).collect();
    for t in 0..instances {
        let k = t % rbar;
        let v = random_seed(&descs[k], w, &mut rng).add(&random_seed(&descs[k], w, &mut rng));
        let once = descs[k].pi(&v).expect("wedge");
        let twice = if k + 1 < rbar { descs[k + 1].pi(&once).expect("wedge") } else { TensorVec::zero() };
        let x = random_witt(&mut rng, p, w.op_radius, 2);
        let lhs = descs[k].pi(&descs[k].act_witt(&x, &v)).expect("wedge");
        let rhs = descs[k + 1].act_witt(&x, &once);
        row.record(twice.is_zero() && lhs == rhs, || format!("k={k} x={x} v={v}"));
    }
    Some(row)
}

pub fn rank_identity(p: &Pairing, rbar: usize) -> CheckRow {
    let mut row = CheckRow::new("rank-identity");
    let k = k1_plus_k2_dim(p);
    row.record(p.n() * p.r() == k + rbar * rbar, || {
        format!("n*r = {} but dim(K1+K2) + rbar^2 = {k} + {}", p.n() * p.r(), rbar * rbar)
    });
    row
}

/// The whole suite at the given instance count.
pub fn run_suite(desc: &ModuleDesc, w: &Window, instances: usize, seed: u64) -> Vec<CheckRow> {
    let p = desc.pairing();
    let mut rows = vec![
        jacobi(p, instances, seed),
        module_residual(desc, w, instances, seed.wrapping_add(1)),
        aw_compatibility(desc, w, instances, seed.wrapping_add(2)),
    ];
    rows.extend(koszul(desc, w, instances, seed.wrapping_add(3)));
    rows.push(rank_identity(p, desc.rbar()));
    rows
}
