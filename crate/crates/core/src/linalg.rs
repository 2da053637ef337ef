//! Exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "3", "-2/5".
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Row echelon form in place; returns pivot columns.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Basis of {x : m x = 0}.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

/// Signature (positive, negative, zero) of a symmetric rational matrix, by
/// symmetric Gaussian elimination.
pub fn signature(m: &[Vec<Q>]) -> (usize, usize, usize) {
    let mut a = m.to_vec();
    let n = a.len();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let _ = first;
        // diagonal pivot if possible
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                // find off-diagonal entry and replace row/col i by i+j
                let mut found = None;
                'o: for &i in &active {
                    for &j in &active {
                        if i != j && !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'o;
                        }
                    }
                }
                let Some((i, j)) = found else { break };
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let f = &a[i][p] / &d;
            for &j in &active {
                let t = &f * &a[p][j];
                a[i][j] -= t;
            }
        }
        for &i in &active {
            a[i][p] = Q::zero();
            a[p][i] = Q::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

pub type SparseRow = BTreeMap<usize, Q>;

/// Incremental sparse Gaussian elimination. Rows are kept with unit leading
/// coefficient; `kernel` back-substitutes.
#[derive(Default, Clone)]
pub struct SparseEliminator {
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEliminator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let mut from = 0usize;
        loop {
            let next = row.range(from..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((c, f)) = next else { return row };
            for (k, v) in &self.rows[&c] {
                let e = row.entry(*k).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
            from = c + 1;
        }
    }

    /// Returns true when the row was independent.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        row.retain(|_, v| !v.is_zero());
        let Some((&lead, lv)) = row.iter().next() else { return false };
        let inv = lv.recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        self.rows.insert(lead, row);
        true
    }

    /// Basis of the solution space of all inserted homogeneous rows.
    pub fn kernel(&self, ncols: usize) -> Vec<Vec<Q>> {
        // fully reduce from the bottom up
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&lead, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            let keys: Vec<usize> = r.keys().copied().filter(|&k| k != lead && done.contains_key(&k)).collect();
            for k in keys {
                let Some(f) = r.get(&k).cloned() else { continue };
                for (kk, v) in &done[&k] {
                    let e = r.entry(*kk).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        r.remove(kk);
                    }
                }
            }
            done.insert(lead, r);
        }
        let mut out = Vec::new();
        for f in (0..ncols).filter(|c| !done.contains_key(c)) {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (&lead, row) in &done {
                if let Some(x) = row.get(&f) {
                    v[lead] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}
