//! Small independent reference implementations used by the integration tests.
//! Nothing here calls into the library's algorithms; only `Scalar` arithmetic
//! and the plain data types are shared.

#![allow(dead_code)]

use std::collections::BTreeMap;

use genwitt::{DVector, GroupElem, Scalar};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of partitions of `k`, by the coin-change recurrence.
pub fn partitions(k: usize) -> usize {
    let mut ways = vec![0usize; k + 1];
    ways[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            ways[total] += ways[total - part];
        }
    }
    ways[k]
}

/// Sorted `k`-subsets of `0..r` in lexicographic order.
pub fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as usize == k {
            out.push((0..r).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
        }
    }
    out.sort();
    out
}

/// Sign of the permutation sorting `seq`, or `None` on a repeated entry.
fn sort_sign(seq: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] == seq[j] {
                return None;
            }
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = seq.to_vec();
    sorted.sort();
    Some((sorted, inversions % 2 == 1))
}

/// `c ∧ ω` for `c = Σ c_i a_i` and `ω` in coordinates over `k`-subsets.
pub fn wedge_with(c: &[Scalar], k: usize, omega: &[Scalar]) -> Vec<Scalar> {
    let r = c.len();
    let src = subsets(r, k);
    let dst = subsets(r, k + 1);
    let mut out = vec![Scalar::from_int(0); dst.len()];
    for (s, x) in src.iter().zip(omega) {
        if x.is_zero() {
            continue;
        }
        for (i, ci) in c.iter().enumerate() {
            let mut seq = vec![i];
            seq.extend_from_slice(s);
            if let Some((sorted, odd)) = sort_sign(&seq) {
                let pos = dst.iter().position(|t| *t == sorted).unwrap();
                let term = ci * x;
                out[pos] = if odd { &out[pos] - &term } else { &out[pos] + &term };
            }
        }
    }
    out
}

/// Columns of `ω ↦ c ∧ ω` on `k`-forms.
pub fn wedge_columns(c: &[Scalar], k: usize) -> Vec<Vec<Scalar>> {
    let n = binomial(c.len(), k);
    (0..n)
        .map(|j| {
            let e: Vec<Scalar> = (0..n).map(|i| Scalar::from_int(i64::from(i == j))).collect();
            wedge_with(c, k, &e)
        })
        .collect()
}

/// Row reduction over the field; returns the indices of pivot vectors in input order.
pub fn independent(vectors: &[Vec<Scalar>]) -> Vec<usize> {
    let mut reduced: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let mut keep = Vec::new();
    for (idx, v) in vectors.iter().enumerate() {
        let mut v = v.clone();
        for (piv, row) in &reduced {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[piv].inv().unwrap();
            let v: Vec<Scalar> = v.iter().map(|x| x * &inv).collect();
            for (_, row) in reduced.iter_mut() {
                if !row[piv].is_zero() {
                    let f = row[piv].clone();
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            reduced.push((piv, v));
            keep.push(idx);
        }
    }
    keep
}

pub fn rank(vectors: &[Vec<Scalar>]) -> usize {
    independent(vectors).len()
}

/// Basis of the kernel of the map whose columns are given.
pub fn kernel(columns: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = columns.len();
    if n == 0 {
        return Vec::new();
    }
    let rows = columns[0].len();
    // reduce the augmented system [A | I] column-wise: combinations of columns that vanish
    let mut aug: Vec<Vec<Scalar>> = columns
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v = c.clone();
            v.extend((0..n).map(|i| Scalar::from_int(i64::from(i == j))));
            v
        })
        .collect();
    let mut done: Vec<usize> = Vec::new();
    for row in 0..rows {
        let Some(p) = (0..n).find(|&j| !done.contains(&j) && !aug[j][row].is_zero()) else {
            continue;
        };
        let inv = aug[p][row].inv().unwrap();
        let pivot: Vec<Scalar> = aug[p].iter().map(|x| x * &inv).collect();
        for j in 0..n {
            if j != p && !aug[j][row].is_zero() {
                let f = aug[j][row].clone();
                for (x, y) in aug[j].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        aug[p] = pivot;
        done.push(p);
    }
    (0..n).filter(|j| !done.contains(j)).map(|j| aug[j][rows..].to_vec()).collect()
}

/// `φ(a, d) = Σ a_i P_ij d_j` straight from the matrix rows.
pub fn pair(rows: &[Vec<Scalar>], a: &GroupElem, d: &DVector) -> Scalar {
    let mut acc = Scalar::from_int(0);
    for (i, ai) in a.0.iter().enumerate() {
        for (j, dj) in d.0.iter().enumerate() {
            acc = &acc + &(&(&Scalar::from_int(*ai) * &rows[i][j]) * dj);
        }
    }
    acc
}

pub type Dense = BTreeMap<GroupElem, Vec<Scalar>>;

/// `[t^a d, t^b e] = t^{a+b}(φ(b,d) e − φ(a,e) d)` on dense coefficient maps.
pub fn bracket(rows: &[Vec<Scalar>], x: &Dense, y: &Dense) -> Dense {
    let r = rows[0].len();
    let mut out: Dense = BTreeMap::new();
    for (a, d) in x {
        for (b, e) in y {
            let (d, e) = (DVector(d.clone()), DVector(e.clone()));
            let f = pair(rows, b, &d);
            let g = pair(rows, a, &e);
            let slot = out.entry(a.add(b)).or_insert_with(|| vec![Scalar::from_int(0); r]);
            for j in 0..r {
                slot[j] = &(&slot[j] + &(&f * &e.0[j])) - &(&g * &d.0[j]);
            }
        }
    }
    out.retain(|_, v| v.iter().any(|c| !c.is_zero()));
    out
}

/// The simplicity criterion for `Γ(V,σ)`, stated from what the test knows
/// about how `V` and `σ` were built.
pub fn expected_simple(wedge: Option<usize>, rbar: usize, sigma_kills_ker2: bool, sigma_in_g: bool) -> bool {
    match wedge {
        Some(l) if 0 < l && l < rbar => !sigma_kills_ker2,
        Some(_) => !sigma_in_g,
        None => true,
    }
}
