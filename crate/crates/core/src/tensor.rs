//! Tensor modules `Γ(V,σ) = A ⊗ V` with
//! `t^a d·(t^b⊗v) = t^{a+b}⊗(φ(b,d) + σ(d) + ρ(a⊗d))v`,
//! the chain maps `π_k` and the submodules `Γ(σ,k)`, `Γ̃(σ,k)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lattice::{dot, DVector, GroupElem, Pairing};
use crate::linalg::Mat;
use crate::lmod::{basis_action, binomial, build_frame, subsets, GlFrame, LKind, LModule};
use crate::witt::WittElem;

/// Everything needed to act on `Γ(V,σ)`.
#[derive(Clone, Debug)]
pub struct ModuleDesc {
    pairing: Pairing,
    frame: GlFrame,
    v: LModule,
    sigma: Vec<Scalar>,
    rho: Vec<Mat>,
    kills_ker2: bool,
}

impl ModuleDesc {
    pub fn new(pairing: Pairing, v: LModule, sigma: Vec<Scalar>) -> Result<ModuleDesc> {
        if sigma.len() != pairing.r() {
            return Err(Error::Shape(format!("σ has {} entries, D has dimension {}", sigma.len(), pairing.r())));
        }
        // θ only needs the frame; Ker₁φ = 0 matters for the classification, not the action.
        let frame = build_frame(&pairing);
        let rho = basis_action(&v, &pairing, Some(&frame))?;
        let kills_ker2 = pairing.kills_ker2(&sigma);
        Ok(ModuleDesc { pairing, frame, v, sigma, rho, kills_ker2 })
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn frame(&self) -> &GlFrame {
        &self.frame
    }

    pub fn module(&self) -> &LModule {
        &self.v
    }

    pub fn sigma(&self) -> &[Scalar] {
        &self.sigma
    }

    pub fn dim_v(&self) -> usize {
        self.v.dim()
    }

    pub fn rbar(&self) -> usize {
        self.frame.rbar()
    }

    /// Whether `σ(Ker₂φ) = 0`.
    pub fn sigma_kills_ker2(&self) -> bool {
        self.kills_ker2
    }

    /// Some `b` with `φ(b,·) = σ`, if `σ ∈ G`.
    pub fn sigma_in_g(&self) -> Option<GroupElem> {
        self.pairing.lattice_preimage(&self.sigma)
    }

    /// Same datum and `σ`, another `V`.
    pub fn with_module(&self, v: LModule) -> Result<ModuleDesc> {
        let rho = basis_action(&v, &self.pairing, Some(&self.frame))?;
        Ok(ModuleDesc { v, rho, ..self.clone() })
    }

    /// Same datum and `V`, another `σ`.
    pub fn with_sigma(&self, sigma: Vec<Scalar>) -> Result<ModuleDesc> {
        ModuleDesc::new(self.pairing.clone(), self.v.clone(), sigma)
    }

    /// `ρ(a ⊗ d)`.
    pub fn rho(&self, a: &GroupElem, d: &DVector) -> Mat {
        let r = self.pairing.r();
        let dim = self.v.dim();
        let mut out = Mat::zeros(dim, dim);
        if let LKind::Scalar(c) = self.v.kind() {
            out[(0, 0)] = c * &self.pairing.pair(a, d);
            return out;
        }
        for (p, &ap) in a.0.iter().enumerate() {
            if ap == 0 {
                continue;
            }
            let ap = Scalar::from_int(ap);
            for (q, dq) in d.0.iter().enumerate() {
                if !dq.is_zero() {
                    out.add_scaled(&(&ap * dq), &self.rho[p * r + q]);
                }
            }
        }
        out
    }

    /// The `D`-weight `λ(d_j) = σ(d_j) + φ(b, d_j)` of the fiber at `t^b`.
    pub fn weight_of(&self, b: &GroupElem) -> Vec<Scalar> {
        (0..self.pairing.r()).map(|j| &self.sigma[j] + &self.pairing.pair_basis(b, j)).collect()
    }

    /// `t^a d · v`.
    pub fn act(&self, a: &GroupElem, d: &DVector, v: &TensorVec) -> TensorVec {
        let m = self.rho(a, d);
        let sd = dot(&self.sigma, &d.0);
        let mut out = TensorVec::zero();
        for ((b, i), c) in &v.terms {
            let target = a.add(b);
            let s = &self.pairing.pair(b, d) + &sd;
            if !s.is_zero() {
                out.add_term(target.clone(), *i, &(&s * c));
            }
            for k in 0..m.rows() {
                if !m[(k, *i)].is_zero() {
                    out.add_term(target.clone(), k, &(&m[(k, *i)] * c));
                }
            }
        }
        out
    }

    pub fn act_basis(&self, a: &GroupElem, j: usize, v: &TensorVec) -> TensorVec {
        self.act(a, &DVector::basis(self.pairing.r(), j), v)
    }

    pub fn act_witt(&self, x: &WittElem, v: &TensorVec) -> TensorVec {
        let mut out = TensorVec::zero();
        for (a, d) in x.terms() {
            out = out.add(&self.act(a, d, v));
        }
        out
    }

    /// Basis `t^b ⊗ v_i` of the fiber at `b`.
    pub fn fiber_basis(&self, b: &GroupElem) -> Vec<TensorVec> {
        (0..self.v.dim()).map(|i| TensorVec::basis(b.clone(), i)).collect()
    }

    /// Coordinates of `φ(b,·) + σ` restricted to `D̄`, in the basis dual to `d̄`.
    pub fn shifted_coords(&self, b: &GroupElem) -> Vec<Scalar> {
        self.frame.functional_coords(&self.pairing, b, &self.sigma)
    }

    /// `π_k`, for `V = ∧^k D̄*`: wedges `b + σ` onto every term.
    pub fn pi(&self, v: &TensorVec) -> Result<TensorVec> {
        let k = self.v.wedge_degree().ok_or_else(|| Error::pre("π needs a wedge-power module"))?;
        if !self.kills_ker2 {
            return Err(Error::pre("π needs σ(Ker₂φ) = 0"));
        }
        Ok(wedge_shift(&self.pairing, &self.frame, &self.sigma, k, v))
    }

    /// Matrix of `π_k` on the fiber at `b`, rows indexed by `(k+1)`-subsets.
    pub fn pi_matrix(&self, k: usize, b: &GroupElem) -> Mat {
        pi_fiber_matrix(&self.shifted_coords(b), self.rbar(), k)
    }

    /// Basis of `Γ(σ,k)` at `t^b`, the image of `π_{k−1}`, in reduced echelon form.
    pub fn gamma_k_fiber(&self, k: usize, b: &GroupElem) -> Result<Vec<TensorVec>> {
        self.check_koszul(k, 1)?;
        let m = self.pi_matrix(k - 1, b);
        let (e, piv) = m.transpose().rref();
        Ok((0..piv.len()).map(|row| TensorVec::from_coords(b, e.row(row))).collect())
    }

    /// Basis of `Γ̃(σ,k)` at `t^b`, the kernel of `π_k`.
    pub fn tilde_gamma_k_fiber(&self, k: usize, b: &GroupElem) -> Result<Vec<TensorVec>> {
        self.check_koszul(k, 0)?;
        if k == self.rbar() {
            return Ok((0..binomial(k, k)).map(|i| TensorVec::basis(b.clone(), i)).collect());
        }
        let m = self.pi_matrix(k, b);
        Ok(m.nullspace().iter().map(|v| TensorVec::from_coords(b, v)).collect())
    }

    fn check_koszul(&self, k: usize, lo: usize) -> Result<()> {
        if k < lo || k > self.rbar() {
            return Err(Error::Range(format!("k = {k} outside {lo}..={}", self.rbar())));
        }
        if !self.kills_ker2 {
            return Err(Error::pre("Γ(σ,k) needs σ(Ker₂φ) = 0"));
        }
        Ok(())
    }
}

pub(crate) fn wedge_shift(p: &Pairing, frame: &GlFrame, sigma: &[Scalar], k: usize, v: &TensorVec) -> TensorVec {
    let rbar = frame.rbar();
    let src = subsets(rbar, k);
    let dst = subsets(rbar, k + 1);
    let mut out = TensorVec::zero();
    let mut cache: BTreeMap<GroupElem, Vec<Scalar>> = BTreeMap::new();
    for ((b, idx), x) in &v.terms {
        let coords = cache.entry(b.clone()).or_insert_with(|| frame.functional_coords(p, b, sigma));
        let s = &src[*idx];
        for (i, ci) in coords.iter().enumerate() {
            if ci.is_zero() || s.contains(&i) {
                continue;
            }
            let before = s.iter().filter(|&&x| x < i).count();
            let mut t = s.clone();
            t.insert(before, i);
            let row = dst.binary_search(&t).expect("subset in basis");
            let c = ci * x;
            out.add_term(b.clone(), row, &if before % 2 == 0 { c } else { -c });
        }
    }
    out
}

fn pi_fiber_matrix(coords: &[Scalar], rbar: usize, k: usize) -> Mat {
    let src = subsets(rbar, k);
    let dst = subsets(rbar, k + 1);
    let mut m = Mat::zeros(dst.len(), src.len());
    for (col, s) in src.iter().enumerate() {
        for (i, ci) in coords.iter().enumerate() {
            if ci.is_zero() || s.contains(&i) {
                continue;
            }
            let before = s.iter().filter(|&&x| x < i).count();
            let mut t = s.clone();
            t.insert(before, i);
            let row = dst.binary_search(&t).expect("subset in basis");
            m[(row, col)] = if before % 2 == 0 { ci.clone() } else { -ci };
        }
    }
    m
}

/// A finitely supported vector `Σ c t^b ⊗ v_i`, keyed by `(b, i)`.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct TensorVec {
    terms: BTreeMap<(GroupElem, usize), Scalar>,
}

impl TensorVec {
    pub fn zero() -> Self {
        TensorVec::default()
    }

    pub fn basis(b: GroupElem, i: usize) -> Self {
        let mut v = TensorVec::zero();
        v.add_term(b, i, &Scalar::from_int(1));
        v
    }

    pub fn from_coords(b: &GroupElem, coords: &[Scalar]) -> Self {
        let mut v = TensorVec::zero();
        for (i, c) in coords.iter().enumerate() {
            v.add_term(b.clone(), i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GroupElem, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn get(&self, b: &GroupElem, i: usize) -> Scalar {
        self.terms.get(&(b.clone(), i)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Smallest key, used as the echelon pivot.
    pub fn leading(&self) -> Option<(&(GroupElem, usize), &Scalar)> {
        self.terms.iter().next()
    }

    /// Lattice points carrying a nonzero term.
    pub fn support(&self) -> Vec<GroupElem> {
        let mut out: Vec<GroupElem> = self.terms.keys().map(|(b, _)| b.clone()).collect();
        out.dedup();
        out
    }

    /// Coordinates in the fiber at `b`.
    pub fn fiber_coords(&self, b: &GroupElem, dim: usize) -> Vec<Scalar> {
        (0..dim).map(|i| self.get(b, i)).collect()
    }

    /// Splits into its homogeneous components.
    pub fn split_fibers(&self) -> Vec<(GroupElem, TensorVec)> {
        let mut out: BTreeMap<GroupElem, TensorVec> = BTreeMap::new();
        for ((b, i), c) in &self.terms {
            out.entry(b.clone()).or_default().terms.insert((b.clone(), *i), c.clone());
        }
        out.into_iter().collect()
    }

    pub fn add_term(&mut self, b: GroupElem, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (b, i);
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add(&self, o: &TensorVec) -> TensorVec {
        let mut out = self.clone();
        out.add_assign_scaled(&Scalar::from_int(1), o);
        out
    }

    pub fn sub(&self, o: &TensorVec) -> TensorVec {
        let mut out = self.clone();
        out.add_assign_scaled(&Scalar::from_int(-1), o);
        out
    }

    pub fn add_assign_scaled(&mut self, c: &Scalar, o: &TensorVec) {
        if c.is_zero() {
            return;
        }
        for ((b, i), x) in &o.terms {
            self.add_term(b.clone(), *i, &(c * x));
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorVec {
        if c.is_zero() {
            return TensorVec::zero();
        }
        TensorVec { terms: self.terms.iter().map(|(k, x)| (k.clone(), c * x)).collect() }
    }

    /// `t^a · v`.
    pub fn a_act(&self, a: &GroupElem) -> TensorVec {
        TensorVec { terms: self.terms.iter().map(|((b, i), x)| ((a.add(b), *i), x.clone())).collect() }
    }

    /// Applies a linear map `V → V'` in every fiber.
    pub fn map_fibers(&self, m: &Mat) -> TensorVec {
        let mut out = TensorVec::zero();
        for ((b, i), x) in &self.terms {
            for k in 0..m.rows() {
                if !m[(k, *i)].is_zero() {
                    out.add_term(b.clone(), k, &(&m[(k, *i)] * x));
                }
            }
        }
        out
    }
}

impl fmt::Display for TensorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((b, i), c)| format!("({c})t^{b}*v{i}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for TensorVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
