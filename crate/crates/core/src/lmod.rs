//! The coefficient algebra `R = G ⊗ D` (as `n × r` matrices), its ideals
//! `K₁`, `K₂`, the map `θ: R → gl_r̄`, and finite-dimensional `L`-modules.
//!
//! A basis tensor `e_p ⊗ d_q` is the matrix unit `E_pq`; the product
//! `(a⊗d)·(a'⊗d') = φ(a',d) a⊗d'` becomes `X·Pᵀ·Y`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lattice::{scan_order, DVector, GroupElem, Pairing};
use crate::linalg::{rank_of, Mat};

pub type RElem = Mat;

/// `e_p ⊗ d_q`.
pub fn basis_tensor(p: &Pairing, i: usize, j: usize) -> RElem {
    Mat::unit(p.n(), p.r(), i, j)
}

/// `a ⊗ d` as a matrix.
pub fn tensor(a: &GroupElem, d: &DVector) -> RElem {
    Mat::from_fn(a.len(), d.len(), |i, j| &Scalar::from_int(a.0[i]) * &d.0[j])
}

pub fn rmul(p: &Pairing, x: &RElem, y: &RElem) -> RElem {
    x.mul(&p.matrix().transpose()).mul(y)
}

pub fn lbracket(p: &Pairing, x: &RElem, y: &RElem) -> RElem {
    rmul(p, x, y).sub(&rmul(p, y, x))
}

/// Basis of `K₁ = {X : PᵀX = 0}`.
pub fn k1_basis(p: &Pairing) -> Vec<RElem> {
    let left = p.matrix().left_nullspace();
    let mut out = Vec::new();
    for u in &left {
        for j in 0..p.r() {
            out.push(Mat::from_fn(p.n(), p.r(), |i, q| if q == j { u[i].clone() } else { Scalar::zero() }));
        }
    }
    out
}

/// Basis of `K₂ = G ⊗ Ker₂φ`.
pub fn k2_basis(p: &Pairing) -> Vec<RElem> {
    let mut out = Vec::new();
    for i in 0..p.n() {
        for k in p.ker2() {
            out.push(Mat::from_fn(p.n(), p.r(), |row, q| if row == i { k.0[q].clone() } else { Scalar::zero() }));
        }
    }
    out
}

fn flatten(x: &Mat) -> Vec<Scalar> {
    x.to_rows().into_iter().flatten().collect()
}

/// `dim(K₁ + K₂)`.
pub fn k1_plus_k2_dim(p: &Pairing) -> usize {
    let rows: Vec<Vec<Scalar>> = k1_basis(p).iter().chain(k2_basis(p).iter()).map(flatten).collect();
    rank_of(&rows)
}

/// Lattice points `a_1..a_r̄` and a basis `d̄_1..d̄_r̄` of `D̄` with
/// `φ(a_i, d̄_j) = δ_ij`, realizing `R/(K₁+K₂) ≅ gl_r̄`.
#[derive(Clone, Debug)]
pub struct GlFrame {
    rbar: usize,
    a: Vec<GroupElem>,
    dbar: Vec<DVector>,
    // θ(X) = left · X · right
    left: Mat,
    right: Mat,
}

impl GlFrame {
    pub fn rbar(&self) -> usize {
        self.rbar
    }

    pub fn a_pick(&self) -> &[GroupElem] {
        &self.a
    }

    pub fn dbar_basis(&self) -> &[DVector] {
        &self.dbar
    }

    /// `D̄`-coordinates of `d` after projecting along `Ker₂φ`: `φ(a_j, d)`.
    pub fn project(&self, p: &Pairing, d: &DVector) -> Vec<Scalar> {
        self.a.iter().map(|a| p.pair(a, d)).collect()
    }

    /// Coordinates of the functional `φ(b,·) + σ` on `D̄` in the dual basis.
    pub fn functional_coords(&self, p: &Pairing, b: &GroupElem, sigma: &[Scalar]) -> Vec<Scalar> {
        self.dbar.iter().map(|d| p.pair(b, d) + crate::lattice::dot(sigma, &d.0)).collect()
    }
}

pub fn make_frame(p: &Pairing) -> Result<GlFrame> {
    if p.ker1().rank() != 0 {
        return Err(Error::pre("Ker₁φ is nonzero"));
    }
    Ok(build_frame(p))
}

pub(crate) fn build_frame(p: &Pairing) -> GlFrame {
    let rbar = p.rank();
    let cols = p.dbar_columns();
    let mut a: Vec<GroupElem> = Vec::new();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut radius = 1;
    while a.len() < rbar {
        for g in scan_order(p.n(), radius) {
            if a.len() == rbar {
                break;
            }
            if g.max_norm() < radius || a.contains(&g) {
                continue;
            }
            let row: Vec<Scalar> = cols.iter().map(|&j| p.pair_basis(&g, j)).collect();
            rows.push(row);
            if rank_of(&rows) == rows.len() {
                a.push(g);
            } else {
                rows.pop();
            }
        }
        radius += 1;
    }
    frame_from_picks(p, a)
}

/// The frame dual to the given `a_i`, which must pair independently against `D̄`.
pub(crate) fn frame_from_picks(p: &Pairing, a: Vec<GroupElem>) -> GlFrame {
    let rbar = p.rank();
    let cols = p.dbar_columns();
    let rows: Vec<Vec<Scalar>> = a.iter().map(|g| cols.iter().map(|&j| p.pair_basis(g, j)).collect()).collect();
    let m = Mat::from_rows(rows);
    let minv = m.inverse().expect("frame matrix is invertible");
    let dbar: Vec<DVector> = (0..rbar)
        .map(|j| {
            let mut v = DVector::zero(p.r());
            for (k, &c) in cols.iter().enumerate() {
                v.0[c] = minv[(k, j)].clone();
            }
            v
        })
        .collect();
    let pt = p.matrix().transpose();
    let dbar_mat = Mat::from_fn(p.r(), rbar, |i, j| dbar[j].0[i].clone());
    let a_mat = Mat::from_fn(rbar, p.n(), |i, j| Scalar::from_int(a[i].0[j]));
    let left = dbar_mat.transpose().mul(&pt);
    let right = pt.mul(&a_mat.transpose());
    GlFrame { rbar, a, dbar, left, right }
}

/// `θ(X) ∈ gl_r̄`; on `a ⊗ d` this is `k·lᵀ` with `k_i = φ(a, d̄_i)`, `l_j = φ(a_j, d)`.
pub fn theta(x: &RElem, frame: &GlFrame) -> Mat {
    frame.left.mul(x).mul(&frame.right)
}

/// Sorted `k`-subsets of `{0..n}` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq)]
pub enum LKind {
    /// `ρ(E_ij)` stored at index `i·r̄ + j`.
    Gl(Vec<Mat>),
    /// `ρ(e_p ⊗ d_q)` stored at index `p·r + q`.
    Direct(Vec<Mat>),
    /// `V^c`: `a⊗d` acts by `c·φ(a,d)`.
    Scalar(Scalar),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LModule {
    dim: usize,
    kind: LKind,
    labels: Vec<String>,
    wedge: Option<usize>,
}

impl LModule {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &LKind {
        &self.kind
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `Some(k)` when built by [`wedge_module`].
    pub fn wedge_degree(&self) -> Option<usize> {
        self.wedge
    }

    /// A `gl_r̄`-module from user matrices, checked against the commutation relations.
    pub fn gl(rbar: usize, matrices: Vec<Mat>) -> Result<LModule> {
        if matrices.len() != rbar * rbar {
            return Err(Error::Shape(format!("expected {} matrices, got {}", rbar * rbar, matrices.len())));
        }
        let dim = check_square(&matrices)?;
        for i in 0..rbar {
            for j in 0..rbar {
                for k in 0..rbar {
                    for l in 0..rbar {
                        let lhs = matrices[i * rbar + j].commutator(&matrices[k * rbar + l]);
                        let mut rhs = Mat::zeros(dim, dim);
                        if j == k {
                            rhs = rhs.add(&matrices[i * rbar + l]);
                        }
                        if l == i {
                            rhs = rhs.sub(&matrices[k * rbar + j]);
                        }
                        if lhs != rhs {
                            return Err(Error::pre(format!("[ρ(E{i}{j}), ρ(E{k}{l})] breaks gl relations")));
                        }
                    }
                }
            }
        }
        let labels = (0..dim).map(|i| format!("v{i}")).collect();
        Ok(LModule { dim, kind: LKind::Gl(matrices), labels, wedge: None })
    }

    /// An `L`-module given on the basis `e_p ⊗ d_q`, checked against the bracket of `L`.
    pub fn direct(p: &Pairing, matrices: Vec<Mat>) -> Result<LModule> {
        let (n, r) = (p.n(), p.r());
        if matrices.len() != n * r {
            return Err(Error::Shape(format!("expected {} matrices, got {}", n * r, matrices.len())));
        }
        let dim = check_square(&matrices)?;
        let module = LModule { dim, kind: LKind::Direct(matrices), labels: (0..dim).map(|i| format!("v{i}")).collect(), wedge: None };
        for x in 0..n * r {
            for y in 0..n * r {
                let bx = basis_tensor(p, x / r, x % r);
                let by = basis_tensor(p, y / r, y % r);
                let lhs = module.direct_act(&lbracket(p, &bx, &by));
                let (mx, my) = (module.direct_act(&bx), module.direct_act(&by));
                if lhs != mx.commutator(&my) {
                    return Err(Error::pre(format!("ρ is not a representation on basis pair ({x}, {y})")));
                }
            }
        }
        Ok(module)
    }

    fn direct_act(&self, x: &RElem) -> Mat {
        let LKind::Direct(ms) = &self.kind else { unreachable!() };
        let r = x.cols();
        let mut out = Mat::zeros(self.dim, self.dim);
        for p in 0..x.rows() {
            for q in 0..r {
                if !x[(p, q)].is_zero() {
                    out.add_scaled(&x[(p, q)], &ms[p * r + q]);
                }
            }
        }
        out
    }
}

fn check_square(ms: &[Mat]) -> Result<usize> {
    let dim = ms.first().map(|m| m.rows()).unwrap_or(0);
    if ms.iter().any(|m| m.rows() != dim || m.cols() != dim) {
        return Err(Error::Shape("representation matrices must be square of one size".into()));
    }
    Ok(dim)
}

/// `∧^k D̄*` with basis `a_S` for sorted `k`-subsets `S`; `E_ij` acts as the
/// derivation extending `a_l ↦ δ_jl a_i`.
pub fn wedge_module(rbar: usize, k: usize) -> Result<LModule> {
    if k > rbar {
        return Err(Error::Range(format!("wedge degree {k} exceeds {rbar}")));
    }
    let basis = subsets(rbar, k);
    let dim = basis.len();
    let mut ms = Vec::with_capacity(rbar * rbar);
    for i in 0..rbar {
        for j in 0..rbar {
            let mut m = Mat::zeros(dim, dim);
            for (col, s) in basis.iter().enumerate() {
                if !s.contains(&j) {
                    continue;
                }
                if i == j {
                    m[(col, col)] = Scalar::one();
                    continue;
                }
                if s.contains(&i) {
                    continue;
                }
                let mut t: Vec<usize> = s.iter().map(|&x| if x == j { i } else { x }).collect();
                let (lo, hi) = (i.min(j), i.max(j));
                let between = s.iter().filter(|&&x| x > lo && x < hi).count();
                t.sort_unstable();
                let row = basis.binary_search(&t).expect("subset in basis");
                m[(row, col)] = Scalar::from_int(if between % 2 == 0 { 1 } else { -1 });
            }
            ms.push(m);
        }
    }
    let labels = basis.iter().map(|s| wedge_label(s)).collect();
    Ok(LModule { dim, kind: LKind::Gl(ms), labels, wedge: Some(k) })
}

fn wedge_label(s: &[usize]) -> String {
    if s.is_empty() {
        return "1".into();
    }
    s.iter().map(|i| format!("a{}", i + 1)).collect::<Vec<_>>().join("^")
}

pub fn vc_module(c: Scalar) -> LModule {
    LModule { dim: 1, kind: LKind::Scalar(c), labels: vec!["v".into()], wedge: None }
}

/// The adjoint module of `sl_r̄`, basis `E_ij (i≠j)` then `H_i = E_ii − E_{i+1,i+1}`.
pub fn sl_adjoint(rbar: usize) -> Result<LModule> {
    if rbar < 2 {
        return Err(Error::Range("sl adjoint needs r̄ ≥ 2".into()));
    }
    let mut basis: Vec<Mat> = Vec::new();
    let mut labels = Vec::new();
    for i in 0..rbar {
        for j in 0..rbar {
            if i != j {
                basis.push(Mat::unit(rbar, rbar, i, j));
                labels.push(format!("E{}{}", i + 1, j + 1));
            }
        }
    }
    for i in 0..rbar - 1 {
        basis.push(Mat::unit(rbar, rbar, i, i).sub(&Mat::unit(rbar, rbar, i + 1, i + 1)));
        labels.push(format!("H{}", i + 1));
    }
    let dim = basis.len();
    let coords = |y: &Mat| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(dim);
        for i in 0..rbar {
            for j in 0..rbar {
                if i != j {
                    out.push(y[(i, j)].clone());
                }
            }
        }
        let mut acc = Scalar::zero();
        for i in 0..rbar - 1 {
            acc += &y[(i, i)];
            out.push(acc.clone());
        }
        out
    };
    let mut ms = Vec::with_capacity(rbar * rbar);
    for i in 0..rbar {
        for j in 0..rbar {
            let e = Mat::unit(rbar, rbar, i, j);
            let cols: Vec<Vec<Scalar>> = basis.iter().map(|b| coords(&e.commutator(b))).collect();
            ms.push(Mat::from_fn(dim, dim, |r, c| cols[c][r].clone()));
        }
    }
    Ok(LModule { dim, kind: LKind::Gl(ms), labels, wedge: None })
}

/// `ρ(X)` for `X ∈ R`. Modules of gl type act through `θ`.
pub fn act_l(v: &LModule, x: &RElem, p: &Pairing, frame: Option<&GlFrame>) -> Result<Mat> {
    match &v.kind {
        LKind::Scalar(c) => {
            let mut tr = Scalar::zero();
            for i in 0..x.rows() {
                for j in 0..x.cols() {
                    if !x[(i, j)].is_zero() {
                        tr += &x[(i, j)] * p.entry(i, j);
                    }
                }
            }
            Ok(Mat::identity(1).scale(&(c * &tr)))
        }
        LKind::Direct(_) => Ok(v.direct_act(x)),
        LKind::Gl(ms) => {
            let frame = frame.ok_or_else(|| Error::pre("gl-type module needs a frame"))?;
            let rbar = frame.rbar();
            if ms.len() != rbar * rbar {
                return Err(Error::Shape(format!("module is for gl_{}, frame has r̄={rbar}", (ms.len() as f64).sqrt() as usize)));
            }
            let t = theta(x, frame);
            let mut out = Mat::zeros(v.dim, v.dim);
            for i in 0..rbar {
                for j in 0..rbar {
                    if !t[(i, j)].is_zero() {
                        out.add_scaled(&t[(i, j)], &ms[i * rbar + j]);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// `ρ(e_p ⊗ d_q)` for every basis tensor, indexed `p·r + q`.
pub fn basis_action(v: &LModule, p: &Pairing, frame: Option<&GlFrame>) -> Result<Vec<Mat>> {
    let mut out = Vec::with_capacity(p.n() * p.r());
    for i in 0..p.n() {
        for j in 0..p.r() {
            out.push(act_l(v, &basis_tensor(p, i, j), p, frame)?);
        }
    }
    Ok(out)
}

/// Detects `V ≅ ∧^l D̄*`: `K₁+K₂` acts by zero, each `ρ(a_i⊗d̄_i)` is an
/// idempotent, they commute, and `Σ ρ(a_i⊗d̄_i)` has trace `l·dim V` with
/// `dim V = C(r̄, l)`.
pub fn recognize_wedge(v: &LModule, p: &Pairing, frame: &GlFrame) -> Option<usize> {
    let rbar = frame.rbar();
    for x in k1_basis(p).iter().chain(k2_basis(p).iter()) {
        if !act_l(v, x, p, Some(frame)).ok()?.is_zero() {
            return None;
        }
    }
    let hs: Vec<Mat> = (0..rbar)
        .map(|i| act_l(v, &tensor(&frame.a[i], &frame.dbar[i]), p, Some(frame)))
        .collect::<Result<_>>()
        .ok()?;
    for (i, h) in hs.iter().enumerate() {
        if h.mul(h) != *h {
            return None;
        }
        if hs[..i].iter().any(|g| !g.commutator(h).is_zero()) {
            return None;
        }
    }
    let mut total = Mat::zeros(v.dim, v.dim);
    for h in &hs {
        total = total.add(h);
    }
    let tr = total.trace().to_integer()?;
    let dim = v.dim as i64;
    let tr: i64 = tr.try_into().ok()?;
    if dim == 0 || tr % dim != 0 {
        return None;
    }
    let l = (tr / dim) as usize;
    (l <= rbar && binomial(rbar, l) == v.dim).then_some(l)
}
