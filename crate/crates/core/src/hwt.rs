//! Generalized Verma modules `M(X, G₀, a₀) = U(W) ⊗_{U(W⁰⊕W⁺)} X` and
//! pairing-rank lower bounds for the weight multiplicities of their simple
//! quotients `L(X, G₀, a₀)`.
//!
//! Vectors are sums of normal-ordered monomials `y₁·y₂·…·y_s·x` with
//! lowering generators `y₁ ≤ … ≤ y_s` and `x` a basis vector of `X`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lattice::{DVector, GroupElem, Pairing, Splitting};
use crate::linalg::{primes_for, sparse_rank_mod, Mat};
use crate::lmod::vc_module;
use crate::tensor::{ModuleDesc, TensorVec};
use crate::witt::WittElem;

/// `t^a d_j`, ordered by `(deg a, a, j)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub deg: i64,
    pub a: GroupElem,
    pub j: usize,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t^{}d{}", self.a, self.j + 1)
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A basis vector of `X`: the fiber at `g ∈ G₀` and an index in it.
pub type XKey = (GroupElem, usize);

/// A bounded `W⁰`-module `X`, known fiber by fiber.
pub trait TopModule: Send + Sync {
    fn fiber_dim(&self, g: &GroupElem) -> usize;

    /// `t^a d_j · x` for `a ∈ G₀`.
    fn act(&self, a: &GroupElem, j: usize, x: &XKey) -> Vec<(XKey, Scalar)>;

    fn describe(&self) -> String;
}

type QuotientOracle = Arc<dyn Fn(&GroupElem) -> Vec<Vec<Scalar>> + Send + Sync>;

/// `C[G₀] ⊗ V` inside a tensor module `Γ(V,σ)` over the whole lattice,
/// optionally divided by a `W⁰`-invariant subspace given fiberwise.
pub struct TensorTop {
    desc: ModuleDesc,
    quotient: Option<QuotientOracle>,
    cache: Mutex<HashMap<GroupElem, Arc<(Vec<(usize, Vec<Scalar>)>, Vec<usize>)>>>,
}

impl TensorTop {
    pub fn new(desc: ModuleDesc) -> TensorTop {
        TensorTop { desc, quotient: None, cache: Mutex::new(HashMap::new()) }
    }

    /// Divides by the subspace whose fiber at `g` is spanned by `oracle(g)`.
    pub fn with_quotient(desc: ModuleDesc, oracle: QuotientOracle) -> TensorTop {
        TensorTop { desc, quotient: Some(oracle), cache: Mutex::new(HashMap::new()) }
    }

    pub fn desc(&self) -> &ModuleDesc {
        &self.desc
    }

    /// Reduced echelon rows of the quotient fiber and the free coordinates.
    fn fiber(&self, g: &GroupElem) -> Arc<(Vec<(usize, Vec<Scalar>)>, Vec<usize>)> {
        if let Some(f) = self.cache.lock().unwrap().get(g) {
            return f.clone();
        }
        let dim = self.desc.dim_v();
        let rows = match &self.quotient {
            Some(q) => q(g),
            None => Vec::new(),
        };
        let (pivots, free) = if rows.is_empty() {
            (Vec::new(), (0..dim).collect())
        } else {
            let (e, piv) = Mat::from_rows(rows).rref();
            let pivots: Vec<(usize, Vec<Scalar>)> = piv.iter().enumerate().map(|(i, &p)| (p, e.row(i).to_vec())).collect();
            let free = (0..dim).filter(|c| !piv.contains(c)).collect();
            (pivots, free)
        };
        let f = Arc::new((pivots, free));
        self.cache.lock().unwrap().insert(g.clone(), f.clone());
        f
    }
}

impl TopModule for TensorTop {
    fn fiber_dim(&self, g: &GroupElem) -> usize {
        self.fiber(g).1.len()
    }

    fn act(&self, a: &GroupElem, j: usize, x: &XKey) -> Vec<(XKey, Scalar)> {
        let (g, idx) = x;
        let src = self.fiber(g);
        let rep = TensorVec::basis(g.clone(), src.1[*idx]);
        let img = self.desc.act_basis(a, j, &rep);
        let target = a.add(g);
        let mut coords = img.fiber_coords(&target, self.desc.dim_v());
        let dst = self.fiber(&target);
        for (p, row) in &dst.0 {
            if !coords[*p].is_zero() {
                let c = coords[*p].clone();
                for (x, y) in coords.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &(&c * y);
                    }
                }
            }
        }
        dst.1
            .iter()
            .enumerate()
            .filter(|(_, &c)| !coords[c].is_zero())
            .map(|(k, &c)| ((target.clone(), k), coords[c].clone()))
            .collect()
    }

    fn describe(&self) -> String {
        let q = if self.quotient.is_some() { " (quotient)" } else { "" };
        format!("C[G0] x V, dim V = {}{q}", self.desc.dim_v())
    }
}

/// The one-dimensional trivial `W⁰`-module at `g = 0`.
pub struct TrivialTop {
    pub n: usize,
}

impl TopModule for TrivialTop {
    fn fiber_dim(&self, g: &GroupElem) -> usize {
        usize::from(g.is_zero())
    }

    fn act(&self, _: &GroupElem, _: usize, _: &XKey) -> Vec<(XKey, Scalar)> {
        Vec::new()
    }

    fn describe(&self) -> String {
        "trivial".into()
    }
}

/// The datum, the splitting `G = G₀ ⊕ Z·a₀`, and the top `X`.
pub struct HwtSpec {
    pairing: Pairing,
    split: Splitting,
    top: Box<dyn TopModule>,
}

impl HwtSpec {
    pub fn new(pairing: Pairing, split: Splitting, top: Box<dyn TopModule>) -> Result<HwtSpec> {
        if split.a0().len() != pairing.n() {
            return Err(Error::Shape(format!("a0 has {} coordinates, G has rank {}", split.a0().len(), pairing.n())));
        }
        Ok(HwtSpec { pairing, split, top })
    }

    /// `X = C[G₀] ⊗ V^c` with weight `σ` at `t⁰`.
    pub fn vc(pairing: Pairing, split: Splitting, c: Scalar, sigma: Vec<Scalar>) -> Result<HwtSpec> {
        let desc = ModuleDesc::new(pairing.clone(), vc_module(c), sigma)?;
        HwtSpec::new(pairing, split, Box::new(TensorTop::new(desc)))
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn split(&self) -> &Splitting {
        &self.split
    }

    pub fn top(&self) -> &dyn TopModule {
        self.top.as_ref()
    }

    pub fn gen(&self, a: GroupElem, j: usize) -> Gen {
        Gen { deg: self.split.deg(&a), a, j }
    }

    /// `[t^a d_i, t^b d_j] = t^{a+b}(φ(b,d_i) d_j − φ(a,d_j) d_i)`.
    pub fn bracket(&self, x: &Gen, y: &Gen) -> Vec<(Gen, Scalar)> {
        let sum = x.a.add(&y.a);
        let deg = x.deg + y.deg;
        let mut out: Vec<(Gen, Scalar)> = Vec::with_capacity(2);
        let first = self.pairing.pair_basis(&y.a, x.j);
        let second = -self.pairing.pair_basis(&x.a, y.j);
        if x.j == y.j {
            let c = &first + &second;
            if !c.is_zero() {
                out.push((Gen { deg, a: sum, j: x.j }, c));
            }
            return out;
        }
        if !first.is_zero() {
            out.push((Gen { deg, a: sum.clone(), j: y.j }, first));
        }
        if !second.is_zero() {
            out.push((Gen { deg, a: sum, j: x.j }, second));
        }
        out
    }

    /// Lowering generators of degree `−i` with `G₀`-offsets in `[−w, w]`.
    pub fn lowering_gens(&self, i: i64, w: i64) -> Vec<Gen> {
        self.gens_of_degree(-i, w)
    }

    pub fn raising_gens(&self, i: i64, w: i64) -> Vec<Gen> {
        self.gens_of_degree(i, w)
    }

    fn gens_of_degree(&self, k: i64, w: i64) -> Vec<Gen> {
        let rank = self.split.g0().rank();
        let mut out = Vec::new();
        for beta in GroupElem::box_points(rank, w) {
            let a = self.split.compose(k, &beta.0);
            for j in 0..self.pairing.r() {
                out.push(Gen { deg: k, a: a.clone(), j });
            }
        }
        out.sort();
        out
    }
}

/// A vector of `M(X, G₀, a₀)`: monomials in normal order applied to `X` basis vectors.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LoweringExpr {
    terms: BTreeMap<(Vec<Gen>, XKey), Scalar>,
}

impl LoweringExpr {
    pub fn zero() -> Self {
        LoweringExpr::default()
    }

    pub fn top(x: XKey) -> Self {
        LoweringExpr::monomial(Vec::new(), x)
    }

    pub fn monomial(gens: Vec<Gen>, x: XKey) -> Self {
        let mut e = LoweringExpr::zero();
        e.add_term(gens, x, &Scalar::from_int(1));
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<Gen>, XKey), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, gens: Vec<Gen>, x: XKey, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (gens, x);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &LoweringExpr) {
        if c.is_zero() {
            return;
        }
        for ((g, x), v) in &o.terms {
            self.add_term(g.clone(), x.clone(), &(c * v));
        }
    }

    pub fn sub(&self, o: &LoweringExpr) -> LoweringExpr {
        let mut out = self.clone();
        out.add_scaled(&Scalar::from_int(-1), o);
        out
    }

    /// Whether every monomial has the normal order `y₁ ≤ … ≤ y_s` with negative degrees.
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|(g, _)| g.windows(2).all(|w| w[0] <= w[1]) && g.iter().all(|y| y.deg < 0))
    }

    /// The part with no lowering factors, as `X` coordinates.
    pub fn top_part(&self) -> BTreeMap<XKey, Scalar> {
        self.terms.iter().filter(|((g, _), _)| g.is_empty()).map(|((_, x), c)| (x.clone(), c.clone())).collect()
    }
}

impl fmt::Display for LoweringExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((g, (b, i)), c)| {
                let word: Vec<String> = g.iter().map(|y| y.to_string()).collect();
                format!("({c}){}x[{b},{i}]", if word.is_empty() { String::new() } else { word.join("*") + "*" })
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for LoweringExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The action of `W` on `M(X, G₀, a₀)` with memoized straightening.
pub struct Verma<'a> {
    spec: &'a HwtSpec,
    memo: HashMap<(Gen, Vec<Gen>, XKey), LoweringExpr>,
}

impl<'a> Verma<'a> {
    pub fn new(spec: &'a HwtSpec) -> Self {
        Verma { spec, memo: HashMap::new() }
    }

    pub fn spec(&self) -> &HwtSpec {
        self.spec
    }

    /// `g · (y₁·…·y_s·x)`.
    pub fn act_gen(&mut self, g: &Gen, word: &[Gen], x: &XKey) -> LoweringExpr {
        let Some((y, rest)) = word.split_first() else {
            return match g.deg {
                d if d < 0 => LoweringExpr::monomial(vec![g.clone()], x.clone()),
                0 => {
                    let mut out = LoweringExpr::zero();
                    for (xk, c) in self.spec.top.act(&g.a, g.j, x) {
                        out.add_term(Vec::new(), xk, &c);
                    }
                    out
                }
                _ => LoweringExpr::zero(),
            };
        };
        if g.deg < 0 && g <= y {
            let mut w = Vec::with_capacity(word.len() + 1);
            w.push(g.clone());
            w.extend_from_slice(word);
            return LoweringExpr::monomial(w, x.clone());
        }
        let key = (g.clone(), word.to_vec(), x.clone());
        if let Some(e) = self.memo.get(&key) {
            return e.clone();
        }
        // g·y·rest = y·(g·rest) + [g,y]·rest
        let inner = self.act_gen(g, rest, x);
        let mut out = self.act_gen_expr(y, &inner);
        for (h, c) in self.spec.bracket(g, y) {
            let part = self.act_gen(&h, rest, x);
            out.add_scaled(&c, &part);
        }
        self.memo.insert(key, out.clone());
        out
    }

    pub fn act_gen_expr(&mut self, g: &Gen, e: &LoweringExpr) -> LoweringExpr {
        let mut out = LoweringExpr::zero();
        for ((word, x), c) in &e.terms {
            let part = self.act_gen(g, word, x);
            out.add_scaled(c, &part);
        }
        out
    }

    /// `t^a d · e`.
    pub fn act(&mut self, a: &GroupElem, d: &DVector, e: &LoweringExpr) -> LoweringExpr {
        let mut out = LoweringExpr::zero();
        for (j, dj) in d.0.iter().enumerate() {
            if dj.is_zero() {
                continue;
            }
            let g = self.spec.gen(a.clone(), j);
            let part = self.act_gen_expr(&g, e);
            out.add_scaled(dj, &part);
        }
        out
    }

    pub fn act_witt(&mut self, x: &WittElem, e: &LoweringExpr) -> LoweringExpr {
        let mut out = LoweringExpr::zero();
        for (a, d) in x.terms() {
            let part = self.act(a, d, e);
            out.add_scaled(&Scalar::from_int(1), &part);
        }
        out
    }
}

/// Nondecreasing words in `gens` whose degrees sum to `total`.
fn words(gens_by_deg: &BTreeMap<i64, Vec<Gen>>, total: i64, lowering: bool) -> Vec<Vec<Gen>> {
    let all: Vec<&Gen> = gens_by_deg.values().flatten().collect();
    let mut out = Vec::new();
    fn go(all: &[&Gen], start: usize, left: i64, lowering: bool, cur: &mut Vec<Gen>, out: &mut Vec<Vec<Gen>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for (i, g) in all.iter().enumerate().skip(start) {
            let fits = if lowering { g.deg >= left } else { g.deg <= left };
            if !fits {
                continue;
            }
            cur.push((*g).clone());
            go(all, i, left - g.deg, lowering, cur, out);
            cur.pop();
        }
    }
    go(&all, 0, total, lowering, &mut Vec::new(), &mut out);
    out
}

/// Spanning vectors `y₁·…·y_s·x` of `M` at weight `λ − k·a₀ + α`: lowering
/// words of total degree `−k` with offsets in `[−w, w]`, applied to every basis
/// vector of `X` at the matching fiber.
pub fn verma_fiber(spec: &HwtSpec, k: i64, alpha: &GroupElem, partwin: i64) -> Vec<LoweringExpr> {
    if k == 0 {
        return (0..spec.top.fiber_dim(alpha)).map(|i| LoweringExpr::top((alpha.clone(), i))).collect();
    }
    let mut by_deg = BTreeMap::new();
    for i in 1..=k {
        by_deg.insert(-i, spec.lowering_gens(i, partwin));
    }
    let mut out = Vec::new();
    for word in words(&by_deg, -k, true) {
        let mut g = alpha.clone();
        for y in &word {
            g = g.sub(&y.a);
        }
        // the lowering word carries degree −k, so the top vector sits at G₀
        let g = g.sub(&spec.split.a0().scale(k));
        for i in 0..spec.top.fiber_dim(&g) {
            out.push(LoweringExpr::monomial(word.clone(), (g.clone(), i)));
        }
    }
    out
}

/// Raising words of total degree `k` with offsets in `[−w, w]`.
pub fn raising_words(spec: &HwtSpec, k: i64, raisewin: i64) -> Vec<Vec<Gen>> {
    let mut by_deg = BTreeMap::new();
    for i in 1..=k {
        by_deg.insert(i, spec.raising_gens(i, raisewin));
    }
    words(&by_deg, k, false)
}

#[derive(Clone, Debug, Serialize)]
pub struct RankResult {
    pub rank: usize,
    pub columns: usize,
    pub rows: usize,
}

/// Rank of the pairing between the raising words of degree `k` and the
/// spanning vectors of `M` at `λ − k·a₀ + α`. A lower bound for the weight
/// multiplicity of `L`.
pub fn l_weight_rank(spec: &HwtSpec, k: i64, alpha: &GroupElem, partwin: i64, raisewin: i64) -> RankResult {
    let cols = verma_fiber(spec, k, alpha, partwin);
    if k == 0 {
        return RankResult { rank: cols.len(), columns: cols.len(), rows: cols.len() };
    }
    let mut by_deg: BTreeMap<i64, Vec<Gen>> = BTreeMap::new();
    for i in 1..=k {
        by_deg.insert(i, spec.raising_gens(i, raisewin));
    }
    let raising: Vec<Gen> = by_deg.values().flatten().cloned().collect();
    let evaluated: Vec<Vec<(Vec<usize>, XKey, Scalar)>> = cols
        .par_iter()
        .map_init(
            || Verma::new(spec),
            |verma, u| {
                let mut out = Vec::new();
                let mut path = Vec::new();
                raise_dfs(verma, &raising, 0, k, u, &mut path, &mut out);
                out
            },
        )
        .collect();
    let mut index: HashMap<(Vec<usize>, XKey), usize> = HashMap::new();
    let mut sparse: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(evaluated.len());
    for col in evaluated {
        let mut v = Vec::with_capacity(col.len());
        for (path, x, c) in col {
            let next = index.len();
            let row = *index.entry((path, x)).or_insert(next);
            v.push((row, c));
        }
        sparse.push(v);
    }
    RankResult { rank: sparse_rank(sparse), columns: cols.len(), rows: index.len() }
}

/// Applies nonincreasing raising words (last factor first) and records the
/// `X` coordinates of every full-degree result.
fn raise_dfs(
    verma: &mut Verma,
    raising: &[Gen],
    start: usize,
    left: i64,
    e: &LoweringExpr,
    path: &mut Vec<usize>,
    out: &mut Vec<(Vec<usize>, XKey, Scalar)>,
) {
    if left == 0 {
        for (x, c) in e.top_part() {
            out.push((path.clone(), x, c));
        }
        return;
    }
    for (i, g) in raising.iter().enumerate().skip(start) {
        if g.deg > left {
            continue;
        }
        let next = verma.act_gen_expr(g, e);
        if next.is_zero() {
            continue;
        }
        path.push(i);
        raise_dfs(verma, raising, i, left - g.deg, &next, path, out);
        path.pop();
    }
}

/// Rank of the pairing matrix, taken as the best of its reductions modulo two
/// large primes. Each is a lower bound for the rank over the field and agrees
/// with it away from finitely many primes.
fn sparse_rank(cols: Vec<Vec<(usize, Scalar)>>) -> usize {
    let m = cols.iter().flatten().map(|(_, c)| c.radicand()).max().unwrap_or(0);
    let mut best = 0;
    let mut tried = 0;
    for prime in primes_for(m.max(1), 6) {
        if let Some(r) = sparse_rank_mod(&cols, prime) {
            best = best.max(r);
            tried += 1;
            if tried == 2 {
                break;
            }
        }
    }
    best
}

/// One entry of an HC table: ranks for growing windows.
#[derive(Clone, Debug, Serialize)]
pub struct HcCell {
    pub k: i64,
    pub offset: String,
    pub ranks: Vec<(i64, usize)>,
    pub stable: bool,
}

impl HcCell {
    pub fn rank(&self) -> usize {
        self.ranks.last().map_or(0, |r| r.1)
    }
}

/// Ranks at windows `w₀, w₀+1, …` until three consecutive agree or `w_max` is passed.
pub fn stabilized_rank(spec: &HwtSpec, k: i64, alpha: &GroupElem, w0: i64, wmax: i64) -> HcCell {
    let mut ranks = Vec::new();
    let mut w = w0;
    let mut stable = false;
    while w <= wmax {
        let r = l_weight_rank(spec, k, alpha, w, w).rank;
        ranks.push((w, r));
        let n = ranks.len();
        if n >= 3 && ranks[n - 1].1 == ranks[n - 2].1 && ranks[n - 2].1 == ranks[n - 3].1 {
            stable = true;
            break;
        }
        w += 1;
    }
    HcCell { k, offset: alpha.to_string(), ranks, stable }
}

/// Multiplicity table over `k ≤ kmax` and the given offsets `α ∈ G₀`.
pub fn hc_table(spec: &HwtSpec, kmax: i64, offsets: &[GroupElem], w0: i64, wmax: i64) -> Vec<HcCell> {
    let mut out = Vec::new();
    for k in 0..=kmax {
        for alpha in offsets {
            out.push(stabilized_rank(spec, k, alpha, w0, wmax));
        }
    }
    out
}

/// `G₀`-offsets with coordinates in `[−w, w]`, as lattice points.
pub fn offsets(split: &Splitting, w: i64) -> Vec<GroupElem> {
    GroupElem::box_points(split.g0().rank(), w).iter().map(|c| split.compose(0, &c.0)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrowthCase {
    /// `c = 1`, paired vectors `t^{−a₀+β_j} d' · v_{σ−β_j}`.
    One,
    /// `c ≠ 1`, paired vectors `t^{−a₀+β_j}(d₁+…+d_s) · v_{σ−β_j}`.
    Other,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub s: usize,
    pub case: GrowthCase,
    pub c: String,
    /// `t^{a₀}d_i · u_j` as multiples of the top vector.
    pub matrix: Vec<Vec<String>>,
    pub expected_diagonal: String,
    pub rank: usize,
    pub exact: bool,
}

/// The datum `n = r = s+1`, `P = I`, `a₀ = e_{s+1}`, `G₀ = ⟨e₁..e_s⟩`, with
/// `β_i = e_i` and dual `d_i`.
pub fn growth_family(s: usize, case: GrowthCase) -> Result<(HwtSpec, Scalar)> {
    if s == 0 {
        return Err(Error::Range("s must be at least 1".into()));
    }
    let n = s + 1;
    let rows: Vec<Vec<Scalar>> =
        (0..n).map(|i| (0..n).map(|j| Scalar::from_int(i64::from(i == j))).collect()).collect();
    let pairing = Pairing::new(0, rows)?;
    let a0 = GroupElem::unit(n, s);
    let g0: Vec<GroupElem> = (0..s).map(|i| GroupElem::unit(n, i)).collect();
    let split = Splitting::with_complement(&a0, &g0)?;
    let half = Scalar::from_frac(1, 2);
    let mut sigma = vec![Scalar::zero(); n];
    sigma[s] = half.clone();
    let c = match case {
        GrowthCase::One => {
            sigma[0] = half.clone();
            Scalar::from_int(1)
        }
        GrowthCase::Other => half,
    };
    Ok((HwtSpec::vc(pairing, split, c.clone(), sigma)?, c))
}

pub fn growth_probe(s: usize, case: GrowthCase) -> Result<GrowthReport> {
    let (spec, c) = growth_family(s, case)?;
    let n = s + 1;
    let a0 = spec.split().a0().clone();
    // β_i(d_j) = δ_ij with β_i = e_i and d_j the basis vectors
    for i in 0..s {
        for j in 0..s {
            let v = spec.pairing().pair_basis(&GroupElem::unit(n, i), j);
            if v != Scalar::from_int(i64::from(i == j)) {
                return Err(Error::pre("family violates β_i(d_j) = δ_ij"));
            }
        }
    }
    let d_prime = match case {
        GrowthCase::One => DVector::basis(n, 0),
        GrowthCase::Other => DVector((0..n).map(|j| Scalar::from_int(i64::from(j < s))).collect()),
    };
    let sigma = vec_sigma(&spec);
    let expected = match case {
        GrowthCase::One => crate::lattice::dot(&sigma, &d_prime.0),
        GrowthCase::Other => &c - &Scalar::from_int(1),
    };
    let mut verma = Verma::new(&spec);
    let origin: XKey = (GroupElem::zero(n), 0);
    let mut matrix = vec![vec![Scalar::zero(); s]; s];
    for j in 0..s {
        let beta = GroupElem::unit(n, j);
        let u = verma.act(&beta.sub(&a0), &d_prime, &LoweringExpr::top((beta.neg(), 0)));
        for (i, row) in matrix.iter_mut().enumerate() {
            let img = verma.act(&a0, &DVector::basis(n, i), &u);
            let top = img.top_part();
            if img.len() != top.len() || top.keys().any(|x| *x != origin) {
                return Err(Error::pre("pairing left the top weight space"));
            }
            row[j] = top.get(&origin).cloned().unwrap_or_else(Scalar::zero);
        }
    }
    let m = Mat::from_rows(matrix.clone());
    let exact = (0..s).all(|i| (0..s).all(|j| matrix[i][j] == if i == j { expected.clone() } else { Scalar::zero() }));
    Ok(GrowthReport {
        s,
        case,
        c: c.to_string(),
        matrix: matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        expected_diagonal: expected.to_string(),
        rank: m.rank(),
        exact,
    })
}

fn vec_sigma(spec: &HwtSpec) -> Vec<Scalar> {
    // weight of the top vector at t⁰: apply t⁰d_j to it
    let n = spec.pairing().n();
    let origin: XKey = (GroupElem::zero(n), 0);
    (0..spec.pairing().r())
        .map(|j| {
            spec.top()
                .act(&GroupElem::zero(n), j, &origin)
                .into_iter()
                .find(|(x, _)| *x == origin)
                .map_or_else(Scalar::zero, |(_, c)| c)
        })
        .collect()
}
