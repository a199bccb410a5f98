//! Dense exact linear algebra: matrices over [`Scalar`] and integer lattice
//! routines (Hermite normal form, integer kernels, integer solving).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Matrix unit `E_ij`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Mat::zeros(rows, cols);
        m[(i, j)] = Scalar::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn add_scaled(&mut self, c: &Scalar, rhs: &Mat) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            if !b.is_zero() {
                *a += c * b;
            }
        }
    }

    pub fn commutator(&self, rhs: &Mat) -> Mat {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else { continue };
            a.swap_rows(p, r);
            let inv = a[(r, c)].inv().expect("nonzero pivot");
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        if !a[(r, j)].is_zero() {
                            let v = &f * &a[(r, j)];
                            a[(i, j)] -= &v;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column, in echelon
    /// form (the free coordinate is `1`).
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ·self = 0}`.
    pub fn left_nullspace(&self) -> Vec<Vec<Scalar>> {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Some `x` with `self·x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors.to_vec()).rank()
}

// ---------------------------------------------------------------------------
// Integer lattices
// ---------------------------------------------------------------------------

pub type IntMat = Vec<Vec<BigInt>>;

/// Unimodular row reduction: returns `(H, U)` with `H = U·M` in Hermite
/// normal form (positive pivots, entries above a pivot reduced into
/// `[0, pivot)`), zero rows last.
pub fn hermite_with_transform(m: &IntMat, cols: usize) -> (IntMat, IntMat) {
    let n = m.len();
    let mut h: IntMat = m.clone();
    let mut u: IntMat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut row = 0;
    for col in 0..cols {
        if row == n {
            break;
        }
        loop {
            let pick = (row..n)
                .filter(|&k| !h[k][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()).then(a.cmp(&b)));
            let Some(k) = pick else { break };
            h.swap(k, row);
            u.swap(k, row);
            let mut done = true;
            for i in row + 1..n {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[row][col]);
                sub_row(&mut h, i, row, &q);
                sub_row(&mut u, i, row, &q);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[row][col].is_zero() {
            continue;
        }
        if h[row][col].is_negative() {
            negate_row(&mut h, row);
            negate_row(&mut u, row);
        }
        for i in 0..row {
            let q = h[i][col].div_floor(&h[row][col]);
            if !q.is_zero() {
                sub_row(&mut h, i, row, &q);
                sub_row(&mut u, i, row, &q);
            }
        }
        row += 1;
    }
    (h, u)
}

fn sub_row(m: &mut IntMat, target: usize, src: usize, q: &BigInt) {
    let s = m[src].clone();
    for (a, b) in m[target].iter_mut().zip(&s) {
        *a -= q * b;
    }
}

fn negate_row(m: &mut IntMat, r: usize) {
    for a in m[r].iter_mut() {
        *a = -a.clone();
    }
}

/// Hermite normal form of the lattice spanned by `rows`, zero rows dropped.
pub fn hnf(rows: &IntMat, cols: usize) -> IntMat {
    let (h, _) = hermite_with_transform(rows, cols);
    h.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// `Z`-basis (in HNF) of `{x ∈ Zⁿ : xᵀ·M = 0}` for an `n × cols` integer matrix.
pub fn integer_left_kernel(m: &IntMat, cols: usize) -> IntMat {
    let n = m.len();
    let (h, u) = hermite_with_transform(m, cols);
    let kernel: IntMat = (0..n).filter(|&i| h[i].iter().all(Zero::is_zero)).map(|i| u[i].clone()).collect();
    hnf(&kernel, n)
}

/// Some `x ∈ Zⁿ` with `xᵀ·M = c`, or `None` if no integer solution exists.
pub fn integer_solve_left(m: &IntMat, cols: usize, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = m.len();
    let (h, u) = hermite_with_transform(m, cols);
    let mut y = vec![BigInt::zero(); n];
    let mut residual = c.to_vec();
    for i in 0..n {
        let Some(p) = h[i].iter().position(|x| !x.is_zero()) else { break };
        let (q, r) = residual[p].div_rem(&h[i][p]);
        if !r.is_zero() {
            return None;
        }
        for (res, hv) in residual.iter_mut().zip(&h[i]) {
            *res -= &q * hv;
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let x = (0..n).map(|j| (0..n).fold(BigInt::zero(), |acc, i| acc + &y[i] * &u[i][j])).collect();
    Some(x)
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn integer_det(m: &IntMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Extended gcd of a vector: `(g, x)` with `Σ x_i v_i = g ≥ 0`.
pub fn vector_gcd(v: &[i64]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coefs: Vec<BigInt> = Vec::with_capacity(v.len());
    for &x in v {
        let xb = BigInt::from(x);
        let e = g.extended_gcd(&xb);
        for c in coefs.iter_mut() {
            *c = &*c * &e.x;
        }
        coefs.push(e.y);
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in coefs.iter_mut() {
            *c = -c.clone();
        }
    }
    (g, coefs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> IntMat {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hnf_of_simple_lattice() {
        let h = hnf(&ints(&[&[2, 4], &[1, 3]]), 2);
        assert_eq!(h, ints(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn left_kernel_of_column() {
        let k = integer_left_kernel(&ints(&[&[1], &[1]]), 1);
        assert_eq!(k, ints(&[&[1, -1]]));
    }

    #[test]
    fn integer_solving() {
        let m = ints(&[&[2, 0], &[0, 3]]);
        assert_eq!(integer_solve_left(&m, 2, &[4.into(), 9.into()]), Some(vec![2.into(), 3.into()]));
        assert_eq!(integer_solve_left(&m, 2, &[1.into(), 0.into()]), None);
    }

    #[test]
    fn determinant() {
        assert_eq!(integer_det(&ints(&[&[1, 1], &[2, 3]])), BigInt::one());
        assert_eq!(integer_det(&ints(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(integer_det(&ints(&[&[2, 4, 1], &[1, 3, 5], &[0, 1, 2]])), BigInt::from(-5));
    }

    #[test]
    fn gcd_coefficients() {
        let (g, c) = vector_gcd(&[2, 3]);
        assert_eq!(g, BigInt::one());
        assert_eq!(&c[0] * 2 + &c[1] * 3, BigInt::one());
        let (g, c) = vector_gcd(&[0, 1]);
        assert_eq!(g, BigInt::one());
        assert_eq!(c, vec![BigInt::zero(), BigInt::one()]);
    }

    #[test]
    fn nullspace_over_quadratic_field() {
        let m = Mat::from_rows(vec![vec![Scalar::one(), Scalar::sqrt_of(2)]]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![vec![-Scalar::sqrt_of(2), Scalar::one()]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Mat::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::sqrt_of(2)],
            vec![Scalar::from_int(1), Scalar::from_int(3)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(2));
    }
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `p ≡ 3 (mod 4)` together with a square root of the radicand in `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModPrime {
    pub p: u64,
    pub root: u64,
}

/// The first `count` primes below `2^61` in which `m` is a square.
pub fn primes_for(m: u64, count: usize) -> Vec<ModPrime> {
    let mut out = Vec::with_capacity(count);
    let mut p = (1u64 << 61) - 1;
    while out.len() < count {
        if p % 4 == 3 && is_prime(p) {
            let mm = m % p;
            let root = powmod(mm, (p + 1) / 4, p);
            if mulmod(root, root, p) == mm {
                out.push(ModPrime { p, root });
            }
        }
        p -= 2;
    }
    out
}

/// Rank over `F_p` of the sparse columns, or `None` if an entry has no image.
/// Reduction is a ring map, so this never exceeds the rank over the field.
pub fn sparse_rank_mod(cols: &[Vec<(usize, Scalar)>], prime: ModPrime) -> Option<usize> {
    let p = prime.p;
    let mut pivots: std::collections::HashMap<usize, Vec<(usize, u64)>> = std::collections::HashMap::new();
    for col in cols {
        let mut v: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
        for (row, c) in col {
            let x = c.reduce_mod(p, prime.root)?;
            if x != 0 {
                let e = v.entry(*row).or_insert(0);
                *e = (*e + x) % p;
            }
        }
        v.retain(|_, x| *x != 0);
        while let Some((&lead, &c)) = v.iter().next() {
            let Some(piv) = pivots.get(&lead) else {
                let inv = powmod(c, p - 2, p);
                pivots.insert(lead, v.iter().map(|(r, x)| (*r, mulmod(*x, inv, p))).collect());
                break;
            };
            for (row, y) in piv {
                let e = v.entry(*row).or_insert(0);
                *e = (*e + p - mulmod(c, *y, p)) % p;
                if *e == 0 {
                    v.remove(row);
                }
            }
        }
    }
    Some(pivots.len())
}
