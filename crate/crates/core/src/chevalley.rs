//! Chevalley basis of a simple Lie algebra with integer structure constants.
//!
//! Basis order: e_α for the positive roots in canonical order, then
//! f_α = e_{−α} in the same order, then h_1..h_n (simple coroots). The basis
//! index of the root vector for root index `a` is `a` itself.

use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::rootsys::{RootSystem, Series};
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coefficients: Vec<Q>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        AlgebraElement { coefficients: vec![Q::zero(); dim] }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut x = Self::zero(dim);
        x.coefficients[i] = Q::one();
        x
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &Q) -> Self {
        AlgebraElement { coefficients: self.coefficients.iter().map(|x| x * c).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.coefficients.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coefficients: self.coefficients.iter().zip(&o.coefficients).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        AlgebraElement { coefficients: self.coefficients.iter().zip(&o.coefficients).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement { coefficients: self.coefficients.iter().map(|a| -a).collect() }
    }
}

impl Mul<&AlgebraElement> for &Q {
    type Output = AlgebraElement;
    fn mul(self, x: &AlgebraElement) -> AlgebraElement {
        x.scale(self)
    }
}

/// Dense rational matrix, row-major; column j is the image of basis vector j.
pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn apply(m: &Matrix, x: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(m.len());
    for (j, c) in x.support() {
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                out.coefficients[i] += &row[j] * c;
            }
        }
    }
    out
}

pub fn from_columns(cols: &[AlgebraElement]) -> Matrix {
    let n = cols.first().map_or(0, |c| c.dim());
    (0..n).map(|i| cols.iter().map(|c| c.coefficients[i].clone()).collect()).collect()
}

pub fn column(m: &Matrix, j: usize) -> AlgebraElement {
    AlgebraElement { coefficients: m.iter().map(|r| r[j].clone()).collect() }
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    rs: RootSystem,
    dim: usize,
    /// N_{a,b} for root indices with a+b a root, 0 otherwise; row-major over all roots.
    nconst: Vec<i32>,
    /// h_α in the basis h_1..h_n, per root index.
    coroots: Vec<Vec<i32>>,
    /// [b_i, b_j] as sparse integer combinations, row-major dim x dim.
    table: Vec<Vec<(usize, i32)>>,
    killing: Vec<Vec<(usize, i64)>>,
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem) -> ChevalleyAlgebra {
        let m = rs.num_roots();
        let n = rs.rank();
        let dim = m + n;
        let nconst = structure_constants(rs);
        let coroots: Vec<Vec<i32>> = (0..m)
            .map(|a| {
                // h_α = Σ c_i (|α_i|²/|α|²) h_i
                (0..n).map(|i| (rs.root(a)[i] as i64 * rs.norm_scaled(i) / rs.norm_scaled(a)) as i32).collect()
            })
            .collect();
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut out = Vec::new();
                match (i < m, j < m) {
                    (true, true) => {
                        if j == rs.neg(i) {
                            for (k, &c) in coroots[i].iter().enumerate() {
                                if c != 0 {
                                    out.push((m + k, c));
                                }
                            }
                        } else if let Some(s) = rs.sum(i, j) {
                            out.push((s, nconst[i * m + j]));
                        }
                    }
                    (true, false) => {
                        let p = rs.pairing(i, j - m);
                        if p != 0 {
                            out.push((i, -p));
                        }
                    }
                    (false, true) => {
                        let p = rs.pairing(j, i - m);
                        if p != 0 {
                            out.push((j, p));
                        }
                    }
                    (false, false) => {}
                }
                table[i * dim + j] = out;
            }
        }
        let mut alg = ChevalleyAlgebra { rs: rs.clone(), dim, nconst, coroots, table, killing: Vec::new() };
        alg.killing = alg.killing_gram();
        alg
    }

    pub fn from_type(series: Series, rank: usize) -> Result<ChevalleyAlgebra> {
        Ok(Self::new(&RootSystem::new(series, rank)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.rs.num_roots()
    }

    /// Basis index of h_i.
    pub fn h_index(&self, i: usize) -> usize {
        self.rs.num_roots() + i
    }

    pub fn is_root_index(&self, b: usize) -> bool {
        b < self.rs.num_roots()
    }

    /// N_{a,b} for root indices (0 when a+b is not a root).
    pub fn n(&self, a: usize, b: usize) -> i32 {
        self.nconst[a * self.rs.num_roots() + b]
    }

    pub fn coroot(&self, a: usize) -> &[i32] {
        &self.coroots[a]
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.dim)
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, i)
    }

    /// Root vector for root index `a` (e_α or f_α).
    pub fn e(&self, a: usize) -> AlgebraElement {
        self.basis(a)
    }

    pub fn f(&self, a: usize) -> AlgebraElement {
        self.basis(self.rs.neg(a))
    }

    pub fn h(&self, i: usize) -> AlgebraElement {
        self.basis(self.h_index(i))
    }

    /// h_α for a root index.
    pub fn h_root(&self, a: usize) -> AlgebraElement {
        let mut x = self.zero();
        for (k, &c) in self.coroots[a].iter().enumerate() {
            x.coefficients[self.h_index(k)] = q(c as i64);
        }
        x
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &[(usize, i32)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        if x.dim() != self.dim || y.dim() != self.dim {
            return Err(Error::Mismatch { left: x.dim(), right: y.dim().max(self.dim) });
        }
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = self.zero();
        let ys: Vec<(usize, &Q)> = y.support().collect();
        for (i, a) in x.support() {
            for &(j, b) in &ys {
                let ab = a * b;
                for &(k, c) in self.basis_bracket(i, j) {
                    out.coefficients[k] += &ab * q(c as i64);
                }
            }
        }
        out
    }

    /// Matrix of ad x.
    pub fn ad(&self, x: &AlgebraElement) -> Matrix {
        let mut m = vec![vec![Q::zero(); self.dim]; self.dim];
        for (i, a) in x.support() {
            for j in 0..self.dim {
                for &(k, c) in self.basis_bracket(i, j) {
                    m[k][j] += a * q(c as i64);
                }
            }
        }
        m
    }

    fn killing_gram(&self) -> Vec<Vec<(usize, i64)>> {
        let d = self.dim;
        let m = self.rs.num_roots();
        let mut out = vec![Vec::new(); d];
        for i in 0..d {
            for j in 0..d {
                let partner = if i < m { j < m && j == self.rs.neg(i) } else { j >= m };
                if !partner {
                    continue;
                }
                // tr(ad b_i ad b_j) = Σ_k coefficient of b_k in [b_i, [b_j, b_k]]
                let mut t = 0i64;
                for k in 0..d {
                    for &(l, c) in self.basis_bracket(j, k) {
                        for &(k2, c2) in self.basis_bracket(i, l) {
                            if k2 == k {
                                t += c as i64 * c2 as i64;
                            }
                        }
                    }
                }
                if t != 0 {
                    out[i].push((j, t));
                }
            }
        }
        out
    }

    /// κ(b_i, b_j).
    pub fn killing_basis(&self, i: usize, j: usize) -> i64 {
        self.killing[i].iter().find(|(k, _)| *k == j).map_or(0, |(_, v)| *v)
    }

    pub fn killing_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> Q {
        let mut s = Q::zero();
        for (i, a) in x.support() {
            for &(j, v) in &self.killing[i] {
                if !y.coefficients[j].is_zero() {
                    s += a * &y.coefficients[j] * q(v);
                }
            }
        }
        s
    }

    pub fn killing_matrix(&self) -> Matrix {
        let mut m = vec![vec![Q::zero(); self.dim]; self.dim];
        for (i, row) in self.killing.iter().enumerate() {
            for &(j, v) in row {
                m[i][j] = q(v);
            }
        }
        m
    }

    /// Images of every basis vector under the homomorphism determined by the
    /// images of the Chevalley generators e_i, f_i (i = 1..n).
    pub fn extend_generators(
        &self,
        target: &ChevalleyAlgebra,
        e_img: &[AlgebraElement],
        f_img: &[AlgebraElement],
    ) -> Vec<AlgebraElement> {
        let rs = &self.rs;
        let npos = rs.num_positive();
        let mut img = vec![target.zero(); self.dim];
        for i in 0..rs.rank() {
            img[i] = e_img[i].clone();
            img[rs.neg(i)] = f_img[i].clone();
        }
        for xi in rs.rank()..npos {
            let (i, eta) = (0..rs.rank())
                .find_map(|i| {
                    let v: Vec<i32> = rs.root(xi).iter().enumerate().map(|(k, c)| if k == i { c - 1 } else { *c }).collect();
                    rs.index_of(&v).filter(|&e| rs.is_positive(e)).map(|e| (i, e))
                })
                .expect("non-simple positive root decomposes");
            let np = q(self.n(i, eta) as i64);
            let nn = q(self.n(rs.neg(i), rs.neg(eta)) as i64);
            img[xi] = target.bracket_unchecked(&img[i], &img[eta]).scale(&np.recip());
            img[rs.neg(xi)] = target.bracket_unchecked(&img[rs.neg(i)], &img[rs.neg(eta)]).scale(&nn.recip());
        }
        for k in 0..rs.rank() {
            img[self.h_index(k)] = target.bracket_unchecked(&img[k], &img[rs.neg(k)]);
        }
        img
    }

    /// First basis pair where `img` fails to preserve brackets.
    pub fn homomorphism_defect(&self, target: &ChevalleyAlgebra, img: &[AlgebraElement]) -> Option<(usize, usize)> {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let lhs = target.bracket_unchecked(&img[i], &img[j]);
                let mut rhs = target.zero();
                for &(k, c) in self.basis_bracket(i, j) {
                    rhs = &rhs + &img[k].scale(&q(c as i64));
                }
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Human-readable name of a basis vector.
    pub fn basis_name(&self, b: usize) -> String {
        let rs = &self.rs;
        if b < rs.num_positive() {
            format!("e{:?}", rs.root(b))
        } else if b < rs.num_roots() {
            format!("f{:?}", rs.root(rs.neg(b)))
        } else {
            format!("h{}", b - rs.num_roots() + 1)
        }
    }
}

/// Structure constants via extraspecial pairs. The extraspecial pair of a
/// positive non-simple root ξ is (α, ξ−α) with α the first positive root in
/// canonical order for which ξ−α is a root; its constant is +(p+1).
fn structure_constants(rs: &RootSystem) -> Vec<i32> {
    let m = rs.num_roots();
    let npos = rs.num_positive();
    let mut tab = vec![0i32; m * m];
    let mut set = vec![false; m * m];
    for xi in 0..npos {
        if rs.height(xi) < 2 {
            continue;
        }
        let pairs: Vec<(usize, usize)> = (0..npos)
            .filter_map(|a| {
                let v: Vec<i32> = rs.root(xi).iter().zip(rs.root(a)).map(|(x, y)| x - y).collect();
                rs.index_of(&v).filter(|&b| rs.is_positive(b) && a < b).map(|b| (a, b))
            })
            .collect();
        let (a0, b0) = pairs[0];
        let mut p = 0;
        let mut cur = b0;
        loop {
            let v: Vec<i32> = rs.root(cur).iter().zip(rs.root(a0)).map(|(x, y)| x - y).collect();
            match rs.index_of(&v) {
                Some(k) => {
                    p += 1;
                    cur = k;
                }
                None => break,
            }
        }
        tab[a0 * m + b0] = p + 1;
        tab[b0 * m + a0] = -(p + 1);
        set[a0 * m + b0] = true;
        set[b0 * m + a0] = true;
        let n0 = p + 1;
        for &(a, b) in &pairs[1..] {
            let xi_n = rs.norm_scaled(xi);
            let mut total = Q::zero();
            // β − α'
            if let Some(s) = rs.sum(b, rs.neg(a0)) {
                let t = nval(rs, &tab, &set, b, rs.neg(a0)) as i64 * nval(rs, &tab, &set, a, rs.neg(b0)) as i64;
                total += Q::new(t.into(), rs.norm_scaled(s).into());
            }
            // α − α'
            if let Some(s) = rs.sum(a, rs.neg(a0)) {
                let t = nval(rs, &tab, &set, rs.neg(a0), a) as i64 * nval(rs, &tab, &set, b, rs.neg(b0)) as i64;
                total += Q::new(t.into(), rs.norm_scaled(s).into());
            }
            let val = total * q(xi_n) / q(n0 as i64);
            assert!(val.is_integer(), "non-integral structure constant");
            let v: i32 = val.to_integer().try_into().unwrap();
            tab[a * m + b] = v;
            tab[b * m + a] = -v;
            set[a * m + b] = true;
            set[b * m + a] = true;
        }
    }
    let mut full = vec![0i32; m * m];
    for a in 0..m {
        for b in 0..m {
            if rs.sum(a, b).is_some() {
                full[a * m + b] = nval(rs, &tab, &set, a, b);
            }
        }
    }
    full
}

fn nval(rs: &RootSystem, tab: &[i32], set: &[bool], x: usize, y: usize) -> i32 {
    let m = rs.num_roots();
    let z = rs.sum(x, y).expect("sum is a root");
    match (rs.is_positive(x), rs.is_positive(y)) {
        (true, true) => {
            assert!(set[x * m + y], "structure constant requested before it was fixed");
            tab[x * m + y]
        }
        (false, false) => -nval(rs, tab, set, rs.neg(x), rs.neg(y)),
        (true, false) => {
            if rs.is_positive(z) {
                let r = rs.norm_scaled(z) / rs.norm_scaled(x);
                let r = if rs.norm_scaled(z) % rs.norm_scaled(x) == 0 { q(r) } else { Q::new(rs.norm_scaled(z).into(), rs.norm_scaled(x).into()) };
                let v = -(r * q(nval(rs, tab, set, rs.neg(y), z) as i64));
                v.to_integer().try_into().unwrap()
            } else {
                let r = Q::new(rs.norm_scaled(z).into(), rs.norm_scaled(y).into());
                let v = r * q(nval(rs, tab, set, rs.neg(z), x) as i64);
                v.to_integer().try_into().unwrap()
            }
        }
        (false, true) => -nval(rs, tab, set, y, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::all_types;

    fn jacobi_exhaustive(alg: &ChevalleyAlgebra) {
        let d = alg.dim();
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let (x, y, z) = (alg.basis(i), alg.basis(j), alg.basis(k));
                    let a = alg.bracket_unchecked(&x, &alg.bracket_unchecked(&y, &z));
                    let b = alg.bracket_unchecked(&y, &alg.bracket_unchecked(&z, &x));
                    let c = alg.bracket_unchecked(&z, &alg.bracket_unchecked(&x, &y));
                    assert!((&(&a + &b) + &c).is_zero(), "{}: Jacobi fails on {i},{j},{k}", alg.root_system().label());
                }
            }
        }
    }

    #[test]
    fn sl2_relations() {
        let alg = ChevalleyAlgebra::from_type(Series::A, 1).unwrap();
        assert_eq!(alg.dim(), 3);
        let (e, f, h) = (alg.basis(0), alg.basis(1), alg.basis(2));
        assert_eq!(alg.bracket(&e, &f).unwrap(), h);
        assert_eq!(alg.bracket(&h, &e).unwrap(), e.scale(&q(2)));
        assert_eq!(alg.bracket(&h, &f).unwrap(), f.scale(&q(-2)));
        assert_eq!(alg.killing_form(&h, &h), q(8));
    }

    #[test]
    fn dimensions() {
        assert_eq!(ChevalleyAlgebra::from_type(Series::G, 2).unwrap().dim(), 14);
        assert_eq!(ChevalleyAlgebra::from_type(Series::E, 8).unwrap().dim(), 248);
    }

    #[test]
    fn jacobi_small_ranks() {
        for t in all_types(3) {
            jacobi_exhaustive(&ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap()));
        }
    }

    #[test]
    fn structure_constant_bounds() {
        for t in all_types(8) {
            let alg = ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap());
            let rs = alg.root_system();
            let bound = if t.is_simply_laced() { 1 } else { 3 };
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    let n = alg.n(a, b);
                    assert!(n.abs() <= bound);
                    assert_eq!(n == 0, rs.sum(a, b).is_none());
                }
            }
        }
    }

    #[test]
    fn e_f_h_relations() {
        let alg = ChevalleyAlgebra::from_type(Series::G, 2).unwrap();
        let rs = alg.root_system().clone();
        for a in 0..rs.num_positive() {
            let h = alg.bracket_unchecked(&alg.e(a), &alg.f(a));
            assert_eq!(h, alg.h_root(a));
            assert_eq!(alg.bracket_unchecked(&h, &alg.e(a)), alg.e(a).scale(&q(2)));
        }
        let d = rs.highest_root();
        assert_eq!(alg.bracket_unchecked(&alg.h_root(d), &alg.e(d)), alg.e(d).scale(&q(2)));
    }
}
