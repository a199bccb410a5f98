//! The datum `(G, D, φ)` with `G = Zⁿ`, `D = Fʳ` and `φ(a, d) = aᵀ·P·d`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{common_denominator, Scalar};
use crate::linalg::{hnf, integer_det, integer_left_kernel, integer_solve_left, vector_gcd, IntMat, Mat};

/// A lattice point of `G = Zⁿ`. Ordered lexicographically on coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElem(pub Vec<i64>);

impl GroupElem {
    pub fn zero(n: usize) -> Self {
        GroupElem(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        GroupElem(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &GroupElem) -> GroupElem {
        GroupElem(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &GroupElem) -> GroupElem {
        GroupElem(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> GroupElem {
        GroupElem(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> GroupElem {
        GroupElem(self.0.iter().map(|a| a * k).collect())
    }

    pub fn max_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn dot(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// gcd of the coordinates is one.
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0i64, |g, &x| g.gcd(&x)) == 1
    }

    /// Parses `(a1,..,an)`; bare comma lists are accepted too.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')).unwrap_or(t);
        if inner.trim().is_empty() {
            return Ok(GroupElem(Vec::new()));
        }
        let mut out = Vec::new();
        let mut offset = if t.starts_with('(') { 1 } else { 0 };
        for part in inner.split(',') {
            let v = part.trim().parse::<i64>().map_err(|_| Error::parse(offset, format!("bad integer {part:?}")))?;
            out.push(v);
            offset += part.len() + 1;
        }
        Ok(GroupElem(out))
    }

    /// Every point of the box `[-radius, radius]ⁿ`, lexicographic order.
    pub fn box_points(n: usize, radius: i64) -> Vec<GroupElem> {
        let side: Vec<i64> = (-radius..=radius).collect();
        let mut out = vec![GroupElem(Vec::with_capacity(n))];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * side.len());
            for p in &out {
                for &x in &side {
                    let mut q = p.clone();
                    q.0.push(x);
                    next.push(q);
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of `D` in coordinates `d = Σ c_j d_j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DVector(pub Vec<Scalar>);

impl DVector {
    pub fn zero(r: usize) -> Self {
        DVector(vec![Scalar::zero(); r])
    }

    pub fn basis(r: usize, j: usize) -> Self {
        let mut v = DVector::zero(r);
        v.0[j] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &DVector) -> DVector {
        DVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &DVector) -> DVector {
        DVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> DVector {
        DVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_scaled(&mut self, c: &Scalar, o: &DVector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }
}

impl fmt::Display for DVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for DVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A subgroup of `Zⁿ` given by a Hermite-normal-form basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sublattice {
    n: usize,
    basis: Vec<GroupElem>,
    saturated: bool,
}

fn to_int_mat(rows: &[GroupElem]) -> IntMat {
    rows.iter().map(|r| r.0.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn to_group_elem(v: &[BigInt]) -> GroupElem {
    GroupElem(v.iter().map(|x| x.to_i64().expect("lattice coordinate fits in i64")).collect())
}

impl Sublattice {
    /// Sublattice spanned by arbitrary generators.
    pub fn span(n: usize, generators: &[GroupElem]) -> Self {
        let h = hnf(&to_int_mat(generators), n);
        let basis: Vec<GroupElem> = h.iter().map(|r| to_group_elem(r)).collect();
        let mut s = Sublattice { n, basis, saturated: false };
        s.saturated = s.saturation().basis == s.basis;
        s
    }

    pub fn zero(n: usize) -> Self {
        Sublattice { n, basis: Vec::new(), saturated: true }
    }

    pub fn full(n: usize) -> Self {
        Sublattice { n, basis: (0..n).map(|i| GroupElem::unit(n, i)).collect(), saturated: true }
    }

    pub fn ambient_rank(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GroupElem] {
        &self.basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// `(Q-span ∩ Zⁿ)`, computed as the integer kernel of the orthogonal
    /// complement.
    pub fn saturation(&self) -> Sublattice {
        if self.basis.is_empty() {
            return Sublattice::zero(self.n);
        }
        // Vectors orthogonal to the span, then everything orthogonal to those.
        let b = to_int_mat(&self.basis);
        let bt: IntMat = (0..self.n).map(|j| b.iter().map(|row| row[j].clone()).collect()).collect();
        let perp = integer_left_kernel(&bt, self.basis.len());
        if perp.is_empty() {
            return Sublattice::full(self.n);
        }
        let pt: IntMat = (0..self.n).map(|j| perp.iter().map(|row| row[j].clone()).collect()).collect();
        let sat = integer_left_kernel(&pt, perp.len());
        Sublattice { n: self.n, basis: sat.iter().map(|r| to_group_elem(r)).collect(), saturated: true }
    }

    /// Integer coordinates of `a` in the basis, if `a` lies in the lattice.
    pub fn coords_of(&self, a: &GroupElem) -> Option<Vec<i64>> {
        if self.basis.is_empty() {
            return a.is_zero().then(Vec::new);
        }
        let m = to_int_mat(&self.basis);
        let c: Vec<BigInt> = a.0.iter().map(|&x| BigInt::from(x)).collect();
        integer_solve_left(&m, self.n, &c).map(|x| x.iter().map(|v| v.to_i64().expect("fits")).collect())
    }

    pub fn contains(&self, a: &GroupElem) -> bool {
        self.coords_of(a).is_some()
    }

    pub fn combine(&self, coeffs: &[i64]) -> GroupElem {
        let mut out = GroupElem::zero(self.n);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            out = out.add(&b.scale(c));
        }
        out
    }
}

/// `G = G₀ ⊕ Z·a₀` together with the degree functional `deg`, the
/// coefficient of `a₀`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    a0: GroupElem,
    deg: Vec<i64>,
    g0: Sublattice,
}

impl Splitting {
    /// Canonical complement: `deg` is the Bezout functional of `a₀`'s
    /// coordinates and `G₀ = ker(deg)`.
    pub fn new(a0: &GroupElem) -> Result<Self> {
        if a0.is_zero() {
            return Err(Error::pre("a0 must be nonzero"));
        }
        if !a0.is_primitive() {
            return Err(Error::pre(format!("a0 = {a0} is not primitive, so Z·a0 is not a direct summand")));
        }
        let n = a0.len();
        let (g, coefs) = vector_gcd(&a0.0);
        debug_assert!(g.is_one());
        let deg: Vec<i64> = coefs.iter().map(|c| c.to_i64().expect("fits")).collect();
        let col: IntMat = deg.iter().map(|&x| vec![BigInt::from(x)]).collect();
        let ker = integer_left_kernel(&col, 1);
        let g0 = Sublattice { n, basis: ker.iter().map(|r| to_group_elem(r)).collect(), saturated: true };
        Ok(Splitting { a0: a0.clone(), deg, g0 })
    }

    /// Uses a caller-supplied complement; `[G₀ basis; a₀]` must be unimodular.
    pub fn with_complement(a0: &GroupElem, g0_basis: &[GroupElem]) -> Result<Self> {
        let n = a0.len();
        if g0_basis.len() + 1 != n {
            return Err(Error::pre(format!("G0 needs {} generators, got {}", n - 1, g0_basis.len())));
        }
        let mut rows: Vec<GroupElem> = g0_basis.to_vec();
        rows.push(a0.clone());
        let m = to_int_mat(&rows);
        let det = integer_det(&m);
        if det.abs() != BigInt::one() {
            return Err(Error::pre(format!("[G0; a0] has determinant {det}, not ±1")));
        }
        // deg is the last row of the inverse, i.e. the functional with
        // deg(a0) = 1 and deg(G0) = 0.
        let mut unit_last = vec![BigInt::zero(); n];
        unit_last[n - 1] = BigInt::one();
        let mt: IntMat = (0..n).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
        let deg = integer_solve_left(&mt, n, &unit_last).ok_or_else(|| Error::pre("complement is not unimodular"))?;
        let deg: Vec<i64> = deg.iter().map(|c| c.to_i64().expect("fits")).collect();
        Ok(Splitting { a0: a0.clone(), deg, g0: Sublattice::span(n, g0_basis) })
    }

    pub fn a0(&self) -> &GroupElem {
        &self.a0
    }

    pub fn g0(&self) -> &Sublattice {
        &self.g0
    }

    pub fn deg_functional(&self) -> &[i64] {
        &self.deg
    }

    pub fn deg(&self, a: &GroupElem) -> i64 {
        a.dot(&self.deg)
    }

    /// `a = g + deg(a)·a₀` with `g ∈ G₀`.
    pub fn decompose(&self, a: &GroupElem) -> (GroupElem, i64) {
        let k = self.deg(a);
        (a.sub(&self.a0.scale(k)), k)
    }

    /// `k·a₀ + Σ c_i g_i` for G₀-coordinates `c`.
    pub fn compose(&self, k: i64, g0_coords: &[i64]) -> GroupElem {
        self.a0.scale(k).add(&self.g0.combine(g0_coords))
    }
}

/// The pairing `φ` as an `n × r` matrix with cached kernels.
#[derive(Clone, Debug)]
pub struct Pairing {
    m: u64,
    p: Mat,
    rank: usize,
    pivot_cols: Vec<usize>,
    ker2: Vec<DVector>,
    ker1: Sublattice,
}

impl Pairing {
    pub fn new(m: u64, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Shape("pairing needs at least one row".into()));
        }
        let r = rows[0].len();
        if rows.iter().any(|row| row.len() != r) {
            return Err(Error::Shape("pairing rows have different lengths".into()));
        }
        for x in rows.iter().flatten() {
            if x.radicand() != 0 && x.radicand() != m {
                return Err(Error::Shape(format!("entry {x:?} is not in Q(√{m})")));
            }
        }
        let p = Mat::from_rows(rows);
        let (_, pivot_cols) = p.rref();
        let rank = pivot_cols.len();
        let ker2 = p.nullspace().into_iter().map(DVector).collect();
        let ker1 = Self::compute_ker1(&p);
        Ok(Pairing { m, p, rank, pivot_cols, ker2, ker1 })
    }

    /// Convenience constructor for integer matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Pairing::new(0, rows).expect("valid integer pairing")
    }

    fn compute_ker1(p: &Mat) -> Sublattice {
        let n = p.rows();
        let r = p.cols();
        // aᵀP = 0 over Q(√m) iff aᵀP₀ = 0 and aᵀP₁ = 0; scale columns to integers.
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(2 * r);
        for j in 0..r {
            cols.push((0..n).map(|i| p[(i, j)].rat()).collect());
            cols.push((0..n).map(|i| p[(i, j)].surd()).collect());
        }
        let mut int_cols: Vec<Vec<BigInt>> = Vec::new();
        for c in cols {
            let l = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ic: Vec<BigInt> = c.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
            if ic.iter().any(|x| !x.is_zero()) {
                int_cols.push(ic);
            }
        }
        if int_cols.is_empty() {
            return Sublattice::full(n);
        }
        let m: IntMat = (0..n).map(|i| int_cols.iter().map(|c| c[i].clone()).collect()).collect();
        let ker = integer_left_kernel(&m, int_cols.len());
        Sublattice { n, basis: ker.iter().map(|r| to_group_elem(r)).collect(), saturated: true }
    }

    /// Radicand of the coefficient field.
    pub fn radicand(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.p.rows()
    }

    pub fn r(&self) -> usize {
        self.p.cols()
    }

    pub fn matrix(&self) -> &Mat {
        &self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.p[(i, j)]
    }

    /// Rank of `P` over the field; equals `dim D̄`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Columns `j` whose `d_j` span the chosen complement `D̄` of `Ker₂φ`.
    pub fn dbar_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn ker1(&self) -> &Sublattice {
        &self.ker1
    }

    pub fn ker2(&self) -> &[DVector] {
        &self.ker2
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.ker1.rank() == 0 && self.ker2.is_empty()
    }

    /// `φ(a, d) = aᵀ·P·d`.
    pub fn pair(&self, a: &GroupElem, d: &DVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let mut row = Scalar::zero();
            for (j, dj) in d.0.iter().enumerate() {
                if !dj.is_zero() && !self.p[(i, j)].is_zero() {
                    row += &self.p[(i, j)] * dj;
                }
            }
            acc += &row * &Scalar::from_int(ai);
        }
        acc
    }

    /// `φ(a, d_j)` for a basis vector.
    pub fn pair_basis(&self, a: &GroupElem, j: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (i, &ai) in a.0.iter().enumerate() {
            if ai != 0 && !self.p[(i, j)].is_zero() {
                acc += &self.p[(i, j)] * &Scalar::from_int(ai);
            }
        }
        acc
    }

    /// The functional `φ(a, ·)` as a coordinate row.
    pub fn row_functional(&self, a: &GroupElem) -> Vec<Scalar> {
        (0..self.r()).map(|j| self.pair_basis(a, j)).collect()
    }

    /// Whether a functional `σ ∈ D*` (given by `σ(d_j)`) vanishes on `Ker₂φ`.
    pub fn kills_ker2(&self, sigma: &[Scalar]) -> bool {
        self.ker2.iter().all(|k| dot(sigma, &k.0).is_zero())
    }

    /// Some `b ∈ G` with `φ(b, ·) = σ`, i.e. a witness for `σ ∈ G`.
    pub fn lattice_preimage(&self, sigma: &[Scalar]) -> Option<GroupElem> {
        let n = self.n();
        let r = self.r();
        // Rational and surd parts separately, scaled by one common denominator.
        let mut den = BigInt::one();
        for x in self.p.to_rows().iter().flatten().chain(sigma) {
            den = den.lcm(&common_denominator(x));
        }
        let scale = BigRational::from_integer(den);
        let to_int = |q: &BigRational| (q * &scale).to_integer();
        let m: IntMat = (0..n)
            .map(|i| (0..r).flat_map(|j| [to_int(&self.p[(i, j)].rat()), to_int(&self.p[(i, j)].surd())]).collect())
            .collect();
        let c: Vec<BigInt> = sigma.iter().flat_map(|s| [to_int(&s.rat()), to_int(&s.surd())]).collect();
        integer_solve_left(&m, 2 * r, &c).map(|x| to_group_elem(&x))
    }

    pub fn sigma_in_lattice(&self, sigma: &[Scalar]) -> bool {
        self.lattice_preimage(sigma).is_some()
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

/// Lattice points of `[-radius, radius]ⁿ` by increasing max-norm, then L1
/// norm, then fewer negative coordinates, then descending lexicographic
/// order (so `e₁, e₂, …` come first).
pub fn scan_order(n: usize, radius: i64) -> Vec<GroupElem> {
    let mut pts = GroupElem::box_points(n, radius);
    pts.sort_by(|a, b| {
        let key = |g: &GroupElem| {
            (g.max_norm(), g.0.iter().map(|x| x.abs()).sum::<i64>(), g.0.iter().filter(|&&x| x < 0).count())
        };
        key(a).cmp(&key(b)).then_with(|| b.cmp(a))
    });
    pts
}

/// Unimodularity check for a square list of lattice vectors.
pub fn is_unimodular(rows: &[GroupElem]) -> bool {
    integer_det(&to_int_mat(rows)).abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example2() -> Pairing {
        let s2 = Scalar::sqrt_of(2);
        let (o, z) = (Scalar::one(), Scalar::zero());
        Pairing::new(2, vec![vec![o.clone(), z.clone()], vec![z.clone(), o], vec![z, s2]]).unwrap()
    }

    #[test]
    fn pair_examples() {
        let p = Pairing::from_ints(&[&[1, 0], &[0, 1]]);
        assert!(p.pair(&GroupElem(vec![1, 0]), &DVector::basis(2, 1)).is_zero());
        let e2 = example2();
        assert_eq!(e2.pair(&GroupElem(vec![0, 0, 1]), &DVector::basis(2, 1)), Scalar::sqrt_of(2));
        assert!(e2.pair(&GroupElem::zero(3), &DVector(vec![Scalar::from_int(3), Scalar::sqrt_of(2)])).is_zero());
    }

    #[test]
    fn ker1_examples() {
        let e2 = example2();
        assert_eq!(e2.rank(), 2);
        assert_eq!(e2.ker1().rank(), 0);
        let zero = Pairing::from_ints(&[&[0, 0], &[0, 0]]);
        assert_eq!(zero.ker1(), &Sublattice::full(2));
        let col = Pairing::from_ints(&[&[1], &[1]]);
        assert_eq!(col.ker1().basis(), &[GroupElem(vec![1, -1])]);
    }

    #[test]
    fn ker2_examples() {
        assert!(Pairing::from_ints(&[&[1, 0], &[0, 1]]).ker2().is_empty());
        let zc = Pairing::from_ints(&[&[1, 0], &[2, 0]]);
        assert_eq!(zc.ker2(), &[DVector::basis(2, 1)]);
        let row = Pairing::new(2, vec![vec![Scalar::one(), Scalar::sqrt_of(2)]]).unwrap();
        assert_eq!(row.ker2(), &[DVector(vec![-Scalar::sqrt_of(2), Scalar::one()])]);
    }

    #[test]
    fn nondegeneracy() {
        assert!(example2().is_nondegenerate());
        assert!(Pairing::from_ints(&[&[1, 0], &[0, 1]]).is_nondegenerate());
        // n > 2r: the integer kernel of [P0|P1] cannot be trivial.
        let tall = Pairing::from_ints(&[&[1], &[2], &[3]]);
        assert!(!tall.is_nondegenerate());
    }

    #[test]
    fn split_examples() {
        let s = Splitting::new(&GroupElem(vec![0, 1])).unwrap();
        assert_eq!(s.g0().basis(), &[GroupElem(vec![1, 0])]);
        assert_eq!(s.deg(&GroupElem(vec![3, 5])), 5);

        let s = Splitting::new(&GroupElem(vec![2, 3])).unwrap();
        assert_eq!(s.deg(&GroupElem(vec![2, 3])), 1);
        let mut rows = s.g0().basis().to_vec();
        rows.push(GroupElem(vec![2, 3]));
        assert!(is_unimodular(&rows));

        assert!(Splitting::new(&GroupElem(vec![2, 4])).is_err());
        assert!(Splitting::new(&GroupElem(vec![0, 0])).is_err());
    }

    #[test]
    fn supplied_complement() {
        let s = Splitting::with_complement(&GroupElem(vec![0, 1]), &[GroupElem(vec![1, 2])]).unwrap();
        assert_eq!(s.deg(&GroupElem(vec![3, 5])), -1);
        assert_eq!(s.deg(&GroupElem(vec![1, 2])), 0);
        assert!(Splitting::with_complement(&GroupElem(vec![0, 1]), &[GroupElem(vec![2, 0])]).is_err());
    }

    #[test]
    fn lattice_membership_of_functionals() {
        let p = Pairing::from_ints(&[&[1, 0], &[0, 1]]);
        assert_eq!(p.lattice_preimage(&[Scalar::from_int(2), Scalar::from_int(-1)]), Some(GroupElem(vec![2, -1])));
        assert!(!p.sigma_in_lattice(&[Scalar::from_frac(1, 2), Scalar::zero()]));
        let e2 = example2();
        assert!(e2.sigma_in_lattice(&[Scalar::one(), Scalar::parse("1+1s", 2).unwrap()]));
        assert_eq!(
            e2.lattice_preimage(&[Scalar::one(), Scalar::sqrt_of(2) + Scalar::sqrt_of(2)]),
            Some(GroupElem(vec![1, 0, 2]))
        );
        assert!(!e2.sigma_in_lattice(&[Scalar::one(), Scalar::from_frac(1, 2)]));
    }

    #[test]
    fn scan_order_starts_with_units() {
        let s = scan_order(3, 1);
        assert!(s[0].is_zero());
        assert_eq!(&s[1..4], &[GroupElem(vec![1, 0, 0]), GroupElem(vec![0, 1, 0]), GroupElem(vec![0, 0, 1])]);
    }

    #[test]
    fn saturation_of_doubled_lattice() {
        let l = Sublattice::span(2, &[GroupElem(vec![2, 2])]);
        assert!(!l.is_saturated());
        assert_eq!(l.saturation().basis(), &[GroupElem(vec![1, 1])]);
    }
}
