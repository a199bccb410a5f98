//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails or exceeds its time bound.
//!
//! `cargo test --test acceptance -- 3 9` runs only criteria 3 and 9.

mod oracle;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use genwitt::config::{Config, ModuleSpec};
use genwitt::hwt::{growth_probe, hc_table, offsets, stabilized_rank, GrowthCase, HwtSpec, LoweringExpr, TensorTop, Verma};
use genwitt::lmod::{k1_basis, k1_plus_k2_dim, k2_basis, make_frame, tensor, theta, vc_module, wedge_module, LModule};
use genwitt::spanprobe::{
    closure, iso_psi_rank1, iso_shift, random_seed, separation, simplicity_report, ModuleMap, Verdict, Window, DEFAULT_CAP,
};
use genwitt::suite::random_witt;
use genwitt::tensor::{ModuleDesc, TensorVec};
use genwitt::worked;
use genwitt::{DVector, GroupElem, Pairing, Scalar, WittElem};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    id: u32,
    name: &'static str,
    bound: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let wanted: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria = [
        Criterion { id: 1, name: "lie-algebra", bound: Duration::from_secs(10), run: lie_algebra },
        Criterion { id: 2, name: "module-axioms", bound: Duration::from_secs(30), run: module_axioms },
        Criterion { id: 3, name: "koszul-chain", bound: Duration::from_secs(60), run: koszul_chain },
        Criterion { id: 4, name: "fiber-dimensions", bound: Duration::from_secs(60), run: fiber_dimensions },
        Criterion { id: 5, name: "simplicity-truth-table", bound: Duration::from_secs(600), run: truth_table },
        Criterion { id: 6, name: "isomorphisms", bound: Duration::from_secs(60), run: isomorphisms },
        Criterion { id: 7, name: "rank-identity", bound: Duration::from_secs(5), run: rank_identity },
        Criterion { id: 8, name: "virasoro-verma", bound: Duration::from_secs(300), run: virasoro },
        Criterion { id: 9, name: "hc-table", bound: Duration::from_secs(900), run: hc_desk_check },
        Criterion { id: 10, name: "growth-probe", bound: Duration::from_secs(60), run: growth },
        Criterion { id: 11, name: "golden-examples", bound: Duration::from_secs(30), run: golden },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in criteria.iter().filter(|c| wanted.is_empty() || wanted.contains(&c.id)) {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if took <= c.bound => (true, d),
            Ok(d) => (false, format!("{d}; exceeded time bound")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {:<24} {} ({detail}; {:.1}s, bound {}s)",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            c.bound.as_secs()
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn sc(t: &str, m: u64) -> Scalar {
    Scalar::parse(t, m).unwrap()
}

fn frac(p: i64, q: i64) -> Scalar {
    Scalar::from_frac(p, q)
}

fn pairing(m: u64, rows: &[&[&str]]) -> Pairing {
    Pairing::new(m, rows.iter().map(|r| r.iter().map(|t| sc(t, m)).collect()).collect()).unwrap()
}

fn example2() -> Pairing {
    pairing(2, &[&["1", "0"], &["0", "1"], &["0", "0+1s"]])
}

fn identity(n: usize) -> Pairing {
    Pairing::from_ints(&(0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect::<Vec<_>>()).collect::<Vec<_>>().iter().map(|r| r.as_slice()).collect::<Vec<_>>())
}

/// `P = [[1,0,0],[0,1,0]]`: `r̄ = 2` with a one-dimensional `Ker₂`.
fn select2() -> Pairing {
    Pairing::from_ints(&[&[1, 0, 0], &[0, 1, 0]])
}

/// `P = [I₃ | 0]`: `r̄ = 3` with a one-dimensional `Ker₂`.
fn select3() -> Pairing {
    Pairing::from_ints(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]])
}

fn rows_of(p: &Pairing) -> Vec<Vec<Scalar>> {
    (0..p.n()).map(|i| (0..p.r()).map(|j| p.entry(i, j).clone()).collect()).collect()
}

fn random_pairings(seed: u64, count: usize) -> Vec<Pairing> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let (n, r) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let m = [0u64, 2, 3][rng.gen_range(0..3)];
        let rows: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let a = Scalar::from_int(rng.gen_range(-2..=2));
                        if m == 0 {
                            a
                        } else {
                            a + Scalar::from_int(rng.gen_range(-1..=1)) * Scalar::sqrt_of(m)
                        }
                    })
                    .collect()
            })
            .collect();
        out.push(Pairing::new(m, rows).unwrap());
    }
    out
}

fn dense(x: &WittElem) -> oracle::Dense {
    x.terms().filter(|(_, d)| !d.is_zero()).map(|(a, d)| (a.clone(), d.0.clone())).collect()
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize, dim: usize, radius: i64) -> TensorVec {
    let mut v = TensorVec::zero();
    for _ in 0..2 {
        let b = GroupElem((0..n).map(|_| rng.gen_range(-radius..=radius)).collect());
        for i in 0..dim {
            v.add_term(b.clone(), i, &Scalar::from_int(rng.gen_range(-3..=3)));
        }
    }
    v
}

fn lie_algebra() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut pairings = vec![example2()];
    pairings.extend(random_pairings(7, 5));
    let mut triples = 0;
    for p in &pairings {
        let rows = rows_of(p);
        for _ in 0..100 {
            let x = random_witt(&mut rng, p, 2, 2);
            let y = random_witt(&mut rng, p, 2, 2);
            let z = random_witt(&mut rng, p, 2, 2);
            let xy = x.bracket(&y, p);
            ensure!(dense(&xy) == oracle::bracket(&rows, &dense(&x), &dense(&y)), "bracket disagrees with reference at x={x} y={y}");
            let jac = x.bracket(&y.bracket(&z, p), p).add(&y.bracket(&z.bracket(&x, p), p)).add(&z.bracket(&xy, p));
            ensure!(jac.is_zero(), "Jacobi fails at x={x} y={y} z={z}");
            ensure!(xy.add(&y.bracket(&x, p)).is_zero(), "antisymmetry fails at x={x} y={y}");
            triples += 1;
        }
    }
    Ok(format!("{triples} triples over {} pairings", pairings.len()))
}

fn module_axioms() -> Outcome {
    let p = example2();
    let rows = rows_of(&p);
    let sigma = vec![frac(1, 3), frac(1, 7)];
    let frame = make_frame(&p).unwrap();
    let direct: Vec<_> = (0..p.n())
        .flat_map(|i| (0..p.r()).map(move |j| (i, j)))
        .map(|(i, j)| theta(&tensor(&GroupElem::unit(p.n(), i), &DVector::basis(p.r(), j)), &frame))
        .collect();
    let kinds: Vec<(&str, LModule)> = vec![
        ("gl:wedge1", wedge_module(2, 1).unwrap()),
        ("gl:adjoint", ModuleSpec::Adjoint.build(&p).unwrap()),
        ("scalar:vc(1/2)", vc_module(frac(1, 2))),
        ("direct:theta", LModule::direct(&p, direct).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut counts = Vec::new();
    for (label, v) in kinds {
        let desc = ModuleDesc::new(p.clone(), v, sigma.clone()).unwrap();
        for _ in 0..500 {
            let x = random_witt(&mut rng, &p, 1, 2);
            let y = random_witt(&mut rng, &p, 1, 2);
            let v = random_vector(&mut rng, p.n(), desc.dim_v(), 2);
            let lhs = desc.act_witt(&x, &desc.act_witt(&y, &v)).sub(&desc.act_witt(&y, &desc.act_witt(&x, &v)));
            ensure!(lhs == desc.act_witt(&x.bracket(&y, &p), &v), "{label}: residual nonzero at x={x} y={y} v={v}");
        }
        // [t^b d, t^a] = φ(a, d) t^{a+b}
        for _ in 0..300 {
            let x = random_witt(&mut rng, &p, 1, 2);
            let a = GroupElem((0..p.n()).map(|_| rng.gen_range(-1..=1)).collect());
            let v = random_vector(&mut rng, p.n(), desc.dim_v(), 2);
            let lhs = desc.act_witt(&x, &v.a_act(&a)).sub(&desc.act_witt(&x, &v).a_act(&a));
            let mut rhs = TensorVec::zero();
            for (b, d) in x.terms() {
                rhs.add_assign_scaled(&oracle::pair(&rows, &a, d), &v.a_act(&a.add(b)));
            }
            ensure!(lhs == rhs, "{label}: A-compatibility fails at x={x} a={a} v={v}");
        }
        counts.push(label);
    }
    Ok(format!("500 residual and 300 A-compatibility instances for each of {}", counts.join(", ")))
}

fn koszul_chain() -> Outcome {
    let mut datums: Vec<(String, Pairing, Vec<Scalar>)> = (2..=4)
        .map(|n| (format!("P=I{n}"), identity(n), [frac(1, 2), frac(1, 3), frac(1, 5), frac(1, 7)][..n].to_vec()))
        .collect();
    datums.push(("example2".into(), example2(), vec![frac(1, 3), frac(1, 7)]));
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut checked = 0usize;
    for (name, p, sigma) in datums {
        let rbar = p.rank();
        let descs: Vec<ModuleDesc> =
            (0..=rbar).map(|k| ModuleDesc::new(p.clone(), wedge_module(rbar, k).unwrap(), sigma.clone()).unwrap()).collect();
        for b in GroupElem::box_points(p.n(), 2) {
            let c = descs[0].shifted_coords(&b);
            for k in 0..rbar {
                let cols = oracle::wedge_columns(&c, k);
                let lib = descs[k].pi_matrix(k, &b);
                let x = random_witt(&mut rng, &p, 1, 2);
                for (i, col) in cols.iter().enumerate() {
                    ensure!(lib.col(i) == *col, "{name}: π_{k} column {i} at b={b} disagrees with the exterior product");
                    let v = TensorVec::basis(b.clone(), i);
                    let once = descs[k].pi(&v).unwrap();
                    ensure!(once == TensorVec::from_coords(&b, col), "{name}: π_{k} on t^{b}⊗a_{i} disagrees with its matrix");
                    if k + 2 <= rbar {
                        ensure!(descs[k + 1].pi(&once).unwrap().is_zero(), "{name}: π∘π ≠ 0 at b={b} k={k} i={i}");
                    }
                    let lhs = descs[k].pi(&descs[k].act_witt(&x, &v)).unwrap();
                    ensure!(lhs == descs[k + 1].act_witt(&x, &once), "{name}: π_{k} does not intertwine x={x} at b={b} i={i}");
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} basis vectors over full 5^n boxes for rbar 2, 3, 4 and example 2"))
}

fn fiber_dimensions() -> Outcome {
    let mut cases = 0usize;
    let generic = [frac(1, 2), frac(1, 3), frac(1, 5), frac(1, 7)];
    let in_g = [1i64, 0, -1, 2];
    let mut datums: Vec<(Pairing, Vec<Scalar>, Option<GroupElem>)> = Vec::new();
    for n in 1..=4 {
        datums.push((identity(n), generic[..n].to_vec(), None));
        let s: Vec<i64> = in_g[..n].to_vec();
        datums.push((identity(n), s.iter().map(|&x| Scalar::from_int(x)).collect(), Some(GroupElem(s).neg())));
    }
    datums.push((example2(), vec![frac(1, 3), frac(1, 7)], None));
    datums.push((example2(), vec![Scalar::from_int(1), Scalar::from_int(0)], Some(GroupElem(vec![-1, 0, 0]))));
    for (p, sigma, minus_sigma) in datums {
        let rbar = p.rank();
        for k in 1..=rbar {
            let desc = ModuleDesc::new(p.clone(), wedge_module(rbar, k).unwrap(), sigma.clone()).unwrap();
            for b in GroupElem::box_points(p.n(), 2) {
                let dim = desc.gamma_k_fiber(k, &b).unwrap().len();
                let want = if Some(&b) == minus_sigma.as_ref() { 0 } else { oracle::binomial(rbar - 1, k - 1) };
                ensure!(dim == want, "rbar={rbar} k={k} b={b}: dim {dim}, expected {want}");
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} fibers, rbar 1..4, generic sigma and sigma in G"))
}

struct SigmaCase {
    label: &'static str,
    sigma: Vec<Scalar>,
    kills_ker2: bool,
    /// `b` with `φ(b,·) = −σ`, when `σ ∈ G`.
    minus_sigma: Option<GroupElem>,
}

fn truth_table() -> Outcome {
    let zero = |r: usize| vec![Scalar::from_int(0); r];
    let mut datums: Vec<(&str, Pairing, Vec<SigmaCase>)> = Vec::new();
    datums.push((
        "example2",
        example2(),
        vec![
            SigmaCase { label: "0", sigma: zero(2), kills_ker2: true, minus_sigma: Some(GroupElem::zero(3)) },
            SigmaCase { label: "generic", sigma: vec![frac(1, 3), frac(1, 7)], kills_ker2: true, minus_sigma: None },
        ],
    ));
    datums.push((
        "select2",
        select2(),
        vec![
            SigmaCase { label: "0", sigma: zero(3), kills_ker2: true, minus_sigma: Some(GroupElem::zero(2)) },
            SigmaCase { label: "generic", sigma: vec![frac(1, 3), frac(1, 7), Scalar::from_int(0)], kills_ker2: true, minus_sigma: None },
            SigmaCase { label: "ker2-nonzero", sigma: vec![frac(1, 3), frac(1, 7), Scalar::from_int(1)], kills_ker2: false, minus_sigma: None },
        ],
    ));
    datums.push((
        "select3",
        select3(),
        vec![
            SigmaCase { label: "0", sigma: zero(4), kills_ker2: true, minus_sigma: Some(GroupElem::zero(3)) },
            SigmaCase {
                label: "generic",
                sigma: vec![frac(1, 3), frac(1, 5), frac(1, 7), Scalar::from_int(0)],
                kills_ker2: true,
                minus_sigma: None,
            },
            SigmaCase {
                label: "ker2-nonzero",
                sigma: vec![frac(1, 3), frac(1, 5), frac(1, 7), Scalar::from_int(1)],
                kills_ker2: false,
                minus_sigma: None,
            },
        ],
    ));
    let w = Window::new(1, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let (mut simple, mut proper) = (0, 0);
    let mut per_datum = Vec::new();
    for (name, p, sigmas) in datums {
        let rbar = p.rank();
        let mut modules: Vec<(String, LModule, Option<usize>)> =
            (0..=rbar).map(|l| (format!("wedge{l}"), wedge_module(rbar, l).unwrap(), Some(l))).collect();
        modules.push(("vc(1/2)".into(), vc_module(frac(1, 2)), None));
        modules.push(("adjoint".into(), ModuleSpec::Adjoint.build(&p).unwrap(), None));
        let mut count = 0;
        for sc in &sigmas {
            for (label, v, wedge) in &modules {
                let case = format!("{name} sigma={} V={label}", sc.label);
                let desc = ModuleDesc::new(p.clone(), v.clone(), sc.sigma.clone()).unwrap();
                let expected = oracle::expected_simple(*wedge, rbar, sc.kills_ker2, sc.minus_sigma.is_some());
                let report = simplicity_report(&desc, &w, 17, DEFAULT_CAP);
                if expected {
                    ensure!(matches!(report.verdict, Verdict::SimpleEvidence { .. }), "{case}: expected simple, tool says {:?}", report.verdict);
                    for _ in 0..3 {
                        let seed = random_seed(&desc, &w, &mut rng);
                        let cl = closure(&desc, std::slice::from_ref(&seed), &w, DEFAULT_CAP);
                        for b in GroupElem::box_points(p.n(), 1) {
                            ensure!(cl.span.fiber_dim(&b) == desc.dim_v(), "{case}: closure of {seed} misses fiber {b}");
                        }
                    }
                    simple += 1;
                } else {
                    let Verdict::ProperSubmodule { certificate, .. } = &report.verdict else {
                        return Err(format!("{case}: expected a proper submodule, tool says {:?}", report.verdict));
                    };
                    ensure!(certificate.invariant, "{case}: certificate not invariant");
                    check_submodule(&case, &desc, wedge.unwrap(), rbar, sc.minus_sigma.as_ref())?;
                    proper += 1;
                }
                count += 1;
            }
        }
        per_datum.push(format!("{name}:{count}"));
    }
    Ok(format!("{} cases ({}), {simple} simple by 3-seed closure, {proper} proper with certificates", simple + proper, per_datum.join(" ")))
}

/// Re-derives invariance of the expected submodule on the box with the reference exterior product.
fn check_submodule(case: &str, desc: &ModuleDesc, l: usize, rbar: usize, minus_sigma: Option<&GroupElem>) -> Result<(), String> {
    let p = desc.pairing();
    let dim = desc.dim_v();
    let ops: Vec<(GroupElem, usize)> =
        GroupElem::box_points(p.n(), 1).into_iter().flat_map(|a| (0..p.r()).map(move |j| (a.clone(), j))).collect();
    let (mut nonzero, mut partial) = (false, false);
    for b in GroupElem::box_points(p.n(), 1) {
        let basis: Vec<Vec<Scalar>> = if 0 < l && l < rbar {
            oracle::kernel(&oracle::wedge_columns(&desc.shifted_coords(&b), l))
        } else if l == 0 {
            if Some(&b) == minus_sigma { (0..dim).map(|i| unit(dim, i)).collect() } else { Vec::new() }
        } else if Some(&b) == minus_sigma {
            Vec::new()
        } else {
            (0..dim).map(|i| unit(dim, i)).collect()
        };
        nonzero |= !basis.is_empty();
        partial |= basis.len() < dim;
        for u in &basis {
            let u = TensorVec::from_coords(&b, u);
            for (a, j) in &ops {
                let img = desc.act_basis(a, *j, &u);
                let target = b.add(a);
                ensure!(img.support().iter().all(|s| *s == target), "{case}: image leaves fiber {target}");
                let coords = img.fiber_coords(&target, dim);
                let inside = if 0 < l && l < rbar {
                    oracle::wedge_with(&desc.shifted_coords(&target), l, &coords).iter().all(|x| x.is_zero())
                } else if l == 0 {
                    Some(&target) == minus_sigma || img.is_zero()
                } else {
                    Some(&target) != minus_sigma || img.is_zero()
                };
                ensure!(inside, "{case}: t^{a}d{} maps {u} outside the submodule", j + 1);
            }
        }
    }
    ensure!(nonzero && partial, "{case}: submodule is zero or everything on the box");
    Ok(())
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    (0..n).map(|j| Scalar::from_int(i64::from(i == j))).collect()
}

fn isomorphisms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let p = example2();
    let rows = rows_of(&p);
    let sigma = vec![frac(1, 3), frac(1, 7)];
    let mut tau = 0;
    for v in [wedge_module(2, 1).unwrap(), ModuleSpec::Adjoint.build(&p).unwrap(), vc_module(frac(1, 2))] {
        let desc = ModuleDesc::new(p.clone(), v, sigma.clone()).unwrap();
        for _ in 0..120 {
            let a = GroupElem((0..3).map(|_| rng.gen_range(-2..=2)).collect());
            let (shift, dst) = iso_shift(&desc, &a).unwrap();
            for j in 0..2 {
                let want = &sigma[j] + &oracle::pair(&rows, &a, &DVector::basis(2, j));
                ensure!(dst.sigma()[j] == want, "τ target has the wrong σ for a={a}");
            }
            let x = random_witt(&mut rng, &p, 1, 2);
            let v = random_vector(&mut rng, 3, desc.dim_v(), 2);
            ensure!(shift.apply(&v) == v.a_act(&a.neg()), "τ is not t^b ↦ t^(b−a) at a={a}");
            ensure!(shift.apply(&desc.act_witt(&x, &v)) == dst.act_witt(&x, &shift.apply(&v)), "τ fails to intertwine a={a} x={x}");
            tau += 1;
        }
    }
    let mut psi = 0;
    let rank1 = [(pairing(2, &[&["1"], &["0+1s"]]), frac(1, 3)), (pairing(0, &[&["1"]]), frac(1, 2))];
    for (p, s) in rank1 {
        let rows = rows_of(&p);
        let desc = ModuleDesc::new(p.clone(), wedge_module(1, 0).unwrap(), vec![s.clone()]).unwrap();
        let (map, dst) = iso_psi_rank1(&desc).unwrap();
        let d = DVector::basis(1, 0);
        for _ in 0..160 {
            let b = GroupElem((0..p.n()).map(|_| rng.gen_range(-2..=2)).collect());
            let coeff = &oracle::pair(&rows, &b, &d) + &s;
            ensure!(!coeff.is_zero(), "ψ degenerates at b={b}");
            let u = TensorVec::basis(b.clone(), 0);
            ensure!(map.apply(&u) == u.scale(&coeff), "ψ is not (b+σ)(d) at b={b}");
            let x = random_witt(&mut rng, &p, 2, 2);
            let v = random_vector(&mut rng, p.n(), 1, 2);
            ensure!(map.apply(&desc.act_witt(&x, &v)) == dst.act_witt(&x, &map.apply(&v)), "ψ fails to intertwine x={x} v={v}");
            psi += 1;
        }
    }
    let w = Window::new(1, 1).unwrap();
    let mut certs = 0;
    let bases = [
        (example2(), vec![frac(1, 3), frac(1, 7)]),
        (identity(3), vec![frac(1, 2), frac(1, 3), frac(1, 5)]),
    ];
    for (p, sigma) in bases {
        let rbar = p.rank();
        let base = ModuleDesc::new(p.clone(), wedge_module(rbar, 0).unwrap(), sigma.clone()).unwrap();
        for i in 1..=rbar {
            for j in i + 1..=rbar {
                let cert = separation(&base, i, j, &w).unwrap().ok_or_else(|| format!("no certificate for Γ({i}) vs Γ({j})"))?;
                verify_separation(&base, &cert)?;
                certs += 1;
            }
        }
    }
    Ok(format!("{tau} τ instances, {psi} ψ instances, {certs} separation certificates re-verified"))
}

fn verify_separation(base: &ModuleDesc, cert: &genwitt::spanprobe::Separation) -> Result<(), String> {
    let p = base.pairing();
    let m = p.radicand();
    let b = GroupElem::parse(&cert.b).map_err(|e| e.to_string())?;
    let a = GroupElem::parse(&cert.a).map_err(|e| e.to_string())?;
    let d = DVector(
        cert.d.trim_matches(|c| c == '[' || c == ']').split(',').map(|t| Scalar::parse(t.trim(), m)).collect::<Result<_, _>>().map_err(|e| e.to_string())?,
    );
    let rows = rows_of(p);
    let mut value = oracle::pair(&rows, &b, &d);
    for (s, x) in base.sigma().iter().zip(&d.0) {
        value = &value + &(s * x);
    }
    ensure!(value.is_zero(), "certificate operator does not satisfy (b+σ)(d) = 0");
    let rbar = base.rbar();
    let c = base.shifted_coords(&b);
    let mut nullities = Vec::new();
    for k in [cert.i, cert.j] {
        let desc = base.with_module(wedge_module(rbar, k).unwrap()).unwrap();
        let cols = oracle::wedge_columns(&c, k - 1);
        let basis: Vec<&Vec<Scalar>> = oracle::independent(&cols).into_iter().map(|i| &cols[i]).collect();
        let target = b.add(&a);
        let images: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|u| desc.act(&a, &d, &TensorVec::from_coords(&b, u)).fiber_coords(&target, desc.dim_v()))
            .collect();
        nullities.push(basis.len() - oracle::rank(&images));
    }
    ensure!(
        nullities == [cert.nullity_i, cert.nullity_j] && nullities[0] != nullities[1],
        "certificate nullities {:?} do not match recomputed {nullities:?}",
        (cert.nullity_i, cert.nullity_j)
    );
    Ok(())
}

fn rank_identity() -> Outcome {
    let p2 = example2();
    ensure!(
        k1_basis(&p2).len() == 2 && k2_basis(&p2).is_empty() && p2.rank() == 2 && p2.n() * p2.r() == 6,
        "example 2: dim K1 = {}, dim K2 = {}, rbar = {}",
        k1_basis(&p2).len(),
        k2_basis(&p2).len(),
        p2.rank()
    );
    let mut corpus = vec![p2, select2(), select3(), pairing(2, &[&["1"], &["0+1s"]]), pairing(2, &[&["1"]])];
    corpus.extend((1..=5).map(identity));
    corpus.extend(random_pairings(7, 5));
    corpus.extend(random_pairings(77, 10));
    for p in &corpus {
        let (n, r) = (p.n(), p.r());
        let rho = oracle::rank(&rows_of(p));
        ensure!(p.rank() == rho, "rank {} vs reference {rho}", p.rank());
        ensure!(k1_basis(p).len() == (n - rho) * r, "dim K1 = {} for P = {:?}", k1_basis(p).len(), p.matrix());
        ensure!(k2_basis(p).len() == n * (r - rho), "dim K2 = {} for P = {:?}", k2_basis(p).len(), p.matrix());
        let sum = k1_plus_k2_dim(p);
        ensure!(n * r == sum + rho * rho, "n·r = {} but dim(K1+K2) + rbar² = {sum} + {}", n * r, rho * rho);
    }
    Ok(format!("{} pairings including example 2 (6 = 2 + 0 + 4)", corpus.len()))
}

fn hwt_spec(json: &str) -> HwtSpec {
    let cfg = Config::from_json(json).unwrap();
    HwtSpec::new(cfg.pairing.clone(), cfg.splitting().unwrap(), Box::new(TensorTop::new(cfg.desc().unwrap()))).unwrap()
}

fn random_lowering(verma: &mut Verma, spec: &HwtSpec, rng: &mut ChaCha8Rng) -> LoweringExpr {
    let n = spec.pairing().n();
    let mut e = LoweringExpr::top((GroupElem::zero(n), 0));
    for _ in 0..rng.gen_range(0..=3) {
        let gens = spec.lowering_gens(rng.gen_range(1..=2), 1);
        let g = gens[rng.gen_range(0..gens.len())].clone();
        e = verma.act_gen_expr(&g, &e);
    }
    e
}

fn virasoro() -> Outcome {
    let spec = hwt_spec(include_str!("../configs/virasoro.json"));
    let zero = GroupElem::zero(1);
    let mut ranks = Vec::new();
    for k in 1..=5 {
        let cell = stabilized_rank(&spec, k, &zero, 1, 3);
        let want = oracle::partitions(k as usize);
        ensure!(cell.stable, "k={k} not stable: {:?}", cell.ranks);
        ensure!(cell.ranks.iter().all(|(_, r)| *r == want), "k={k}: ranks {:?}, expected p({k}) = {want}", cell.ranks);
        ranks.push(cell.rank().to_string());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut instances = 0;
    for (json, count, radius) in [(include_str!("../configs/virasoro.json"), 300, 2), (include_str!("../configs/hc_rank2.json"), 100, 1)] {
        let spec = hwt_spec(json);
        let mut verma = Verma::new(&spec);
        for _ in 0..count {
            let e = random_lowering(&mut verma, &spec, &mut rng);
            let x = random_witt(&mut rng, spec.pairing(), radius, 2);
            let y = random_witt(&mut rng, spec.pairing(), radius, 2);
            let xy = verma.act_witt(&y, &e);
            let xy = verma.act_witt(&x, &xy);
            let yx = verma.act_witt(&x, &e);
            let yx = verma.act_witt(&y, &yx);
            let br = verma.act_witt(&x.bracket(&y, spec.pairing()), &e);
            ensure!(xy.sub(&yx) == br, "Verma residual nonzero at x={x} y={y}");
            instances += 1;
        }
    }
    Ok(format!("ranks {} for k = 1..5; {instances} residual instances", ranks.join(",")))
}

fn hc_desk_check() -> Outcome {
    let cfg = Config::from_json(include_str!("../configs/hc_rank2.json")).unwrap();
    ensure!(cfg.n == 2 && cfg.r() == 2, "datum must have n = r = 2");
    let spec = hwt_spec(include_str!("../configs/hc_rank2.json"));
    let offs = offsets(spec.split(), 2);
    let table = hc_table(&spec, 3, &offs, 1, 3);
    let mut by_k: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for cell in &table {
        ensure!(cell.stable && cell.ranks.len() == 3, "k={} offset={} not stable: {:?}", cell.k, cell.offset, cell.ranks);
        if cell.k == 0 {
            ensure!(cell.rank() == 1, "top weight space at {} has rank {}", cell.offset, cell.rank());
        }
        by_k.entry(cell.k).or_default().push(cell.rank());
    }
    let summary: Vec<String> =
        by_k.iter().map(|(k, rs)| format!("k={k}:{}..{}", rs.iter().min().unwrap(), rs.iter().max().unwrap())).collect();
    Ok(format!("{} cells over {} offsets, all stable at windows 1..3 ({})", table.len(), offs.len(), summary.join(" ")))
}

fn growth() -> Outcome {
    let mut rows = 0;
    for s in 1..=4 {
        // one: σ(d') with σ₁ = 1/2 and d' = d₁; other: c − 1 with c = 1/2
        for (case, diag) in [(GrowthCase::One, "1/2"), (GrowthCase::Other, "-1/2")] {
            let rep = growth_probe(s, case).map_err(|e| e.to_string())?;
            ensure!(rep.rank == s, "s={s} {case:?}: rank {}", rep.rank);
            for (i, row) in rep.matrix.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j { diag } else { "0" };
                    ensure!(x == want, "s={s} {case:?}: entry ({i},{j}) is {x}, expected {want}");
                }
            }
            rows += 1;
        }
    }
    Ok(format!("{rows} probes, rank s with diagonal 1/2 and -1/2"))
}

fn golden() -> Outcome {
    let mut lines = 0;
    for (name, want) in [("example1", include_str!("../golden/example1.tsv")), ("example2", include_str!("../golden/example2.tsv"))] {
        let rep = worked::run(name).map_err(|e| e.to_string())?;
        ensure!(rep.passed, "{name}: report does not pass");
        for row in &rep.rows {
            if row[0].starts_with("formula") || row[0].starts_with("module-residual") || row[0].starts_with("aw-") {
                ensure!(row.iter().any(|f| f == "failures=0"), "{name}: {} has failures", row[0]);
            }
        }
        let got = rep.to_tsv();
        ensure!(got == want, "{name}: report differs from the golden file");
        lines += rep.rows.len();
    }
    Ok(format!("examples 1 and 2 byte-identical ({lines} lines)"))
}
