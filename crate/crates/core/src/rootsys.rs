//! Root systems of the simple types, Weyl group actions and Dynkin diagrams.
//!
//! Simple roots follow Bourbaki numbering. Roots are integer coefficient
//! vectors over the simple roots; the inner product is scaled so long roots
//! have squared length 2.

use crate::error::{Error, Result};
use crate::linalg::{q, qr, Q};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

pub type RootVec = Vec<i32>;

const NONE: u16 = u16::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A simple type such as `B3`. Components of subsystems may use ranks
/// outside the ambient catalogue (e.g. `A1`, `B2` inside larger algebras);
/// those are normalized by [`SimpleType::component`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    /// Validated ambient type: A1-A8, B2-B8, C3-C8, D4-D8, E6-E8, F4, G2.
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => (1..=8).contains(&rank),
            Series::B => (2..=8).contains(&rank),
            Series::C => (3..=8).contains(&rank),
            Series::D => (4..=8).contains(&rank),
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { series, rank })
        } else {
            Err(Error::InvalidType { series: series.letter(), rank })
        }
    }

    /// Normalize low-rank coincidences: B1, C1 -> A1; C2 -> B2; D3 -> A3;
    /// D2 -> A1+A1.
    pub fn component(series: Series, rank: usize) -> Vec<SimpleType> {
        let one = |s, r| vec![SimpleType { series: s, rank: r }];
        match (series, rank) {
            (_, 0) => vec![],
            (Series::B | Series::C | Series::A, 1) => one(Series::A, 1),
            (Series::C, 2) => one(Series::B, 2),
            (Series::D, 3) => one(Series::A, 3),
            (Series::D, 2) => vec![SimpleType { series: Series::A, rank: 1 }; 2],
            (Series::D, 1) => vec![],
            (s, r) => one(s, r),
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 1) / 2,
            Series::B | Series::C => n * n,
            Series::D => n * (n - 1),
            Series::E => [36, 63, 120][n - 6],
            Series::F => 24,
            Series::G => 6,
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.num_positive_roots() + self.rank
    }

    /// Degrees of the basic invariants.
    pub fn degrees(&self) -> Vec<u64> {
        let n = self.rank as u64;
        match self.series {
            Series::A => (2..=n + 1).collect(),
            Series::B | Series::C => (1..=n).map(|i| 2 * i).collect(),
            Series::D => {
                let mut d: Vec<u64> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d
            }
            Series::E => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            Series::F => vec![2, 6, 8, 12],
            Series::G => vec![2, 6],
        }
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.series, Series::A | Series::D | Series::E)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars.next().and_then(Series::from_letter).ok_or_else(|| Error::BadTypeLabel(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::BadTypeLabel(s.into()))?;
        SimpleType::new(series, rank)
    }
}

/// Isomorphism type of a reductive algebra: semisimple components plus the
/// rank of the centre. Displays as e.g. `A1+A1+B2` or `A3+T1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeLabel {
    pub components: Vec<SimpleType>,
    pub torus: usize,
}

impl TypeLabel {
    pub fn new(mut components: Vec<SimpleType>, torus: usize) -> Self {
        components.sort();
        TypeLabel { components, torus }
    }

    pub fn semisimple(&self) -> TypeLabel {
        TypeLabel { components: self.components.clone(), torus: 0 }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum::<usize>() + self.torus
    }

    pub fn dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum::<usize>() + self.torus
    }

    /// Parse labels like `A1+A1+B2`, `2A1+B6`, `A3+T1`, `D3` (normalized to `A3`).
    pub fn parse(s: &str) -> Result<TypeLabel> {
        let bad = || Error::BadTypeLabel(s.to_string());
        let mut comps = Vec::new();
        let mut torus = 0;
        if s.trim().is_empty() {
            return Ok(TypeLabel::new(comps, 0));
        }
        for part in s.split('+') {
            let part = part.trim();
            let digits: String = part.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mult: usize = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad())? };
            let rest = &part[digits.len()..];
            let mut chars = rest.chars();
            let letter = chars.next().ok_or_else(bad)?;
            let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
            if letter == 'T' {
                torus += mult * rank;
                continue;
            }
            let series = Series::from_letter(letter).ok_or_else(bad)?;
            for _ in 0..mult {
                comps.extend(SimpleType::component(series, rank));
            }
        }
        Ok(TypeLabel::new(comps, torus))
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        if self.torus > 0 {
            parts.push(format!("T{}", self.torus));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

pub fn cartan_matrix(series: Series, n: usize) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0i32; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match series {
        Series::A | Series::B | Series::C | Series::F | Series::G => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Series::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
    }
    match series {
        Series::B => c[n - 2][n - 1] = -2,
        Series::C => c[n - 1][n - 2] = -2,
        Series::F => c[1][2] = -2,
        Series::G => c[1][0] = -3,
        _ => {}
    }
    c
}

/// Squared lengths of the simple roots (long roots 2).
pub fn simple_root_lengths(series: Series, n: usize) -> Vec<Q> {
    (0..n)
        .map(|i| match series {
            Series::B if i == n - 1 => q(1),
            Series::C if i < n - 1 => q(1),
            Series::F if i >= 2 => q(1),
            Series::G if i == 0 => qr(2, 3),
            _ => q(2),
        })
        .collect()
}

/// Identify the components of an arbitrary Cartan matrix.
pub fn classify_cartan(c: &[Vec<i32>]) -> Vec<SimpleType> {
    let n = c.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && c[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        out.extend(classify_connected(c, &comp));
    }
    out.sort();
    out
}

fn classify_connected(c: &[Vec<i32>], nodes: &[usize]) -> Vec<SimpleType> {
    let r = nodes.len();
    let st = |s, r| SimpleType::component(s, r);
    if r == 1 {
        return st(Series::A, 1);
    }
    let nb = |i: usize| nodes.iter().copied().filter(move |&j| j != i && c[i][j] != 0);
    let mut triple = false;
    let mut double = None;
    for &i in nodes {
        for j in nb(i) {
            let m = c[i][j] * c[j][i];
            if m == 3 {
                triple = true;
            }
            if m == 2 && c[i][j] == -2 {
                // j short, i long
                double = Some((i, j));
            }
        }
    }
    if triple {
        return st(Series::G, 2);
    }
    if let Some((long, short)) = double {
        if r == 2 {
            return st(Series::B, 2);
        }
        let deg = |i: usize| nb(i).count();
        if r == 4 && deg(long) == 2 && deg(short) == 2 {
            return st(Series::F, 4);
        }
        if deg(short) == 1 {
            return st(Series::B, r);
        }
        return st(Series::C, r);
    }
    let branch = nodes.iter().copied().find(|&i| nb(i).count() == 3);
    let Some(b) = branch else { return st(Series::A, r) };
    let mut arms: Vec<usize> = nb(b)
        .map(|start| {
            let (mut prev, mut cur, mut len) = (b, start, 1);
            loop {
                let next: Vec<usize> = nb(cur).filter(|&x| x != prev).collect();
                if next.is_empty() {
                    return len;
                }
                prev = cur;
                cur = next[0];
                len += 1;
            }
        })
        .collect();
    arms.sort();
    match (arms[0], arms[1], arms[2]) {
        (1, 1, _) => st(Series::D, r),
        (1, 2, 2) => st(Series::E, 6),
        (1, 2, 3) => st(Series::E, 7),
        (1, 2, 4) => st(Series::E, 8),
        _ => st(Series::A, r),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynkinDiagram {
    pub nodes: usize,
    /// For i < j with nonzero Cartan integers: (C[i][j], C[j][i]).
    pub bonds: BTreeMap<(usize, usize), (i32, i32)>,
    pub extended: bool,
    pub affine_node: Option<usize>,
}

impl DynkinDiagram {
    pub fn from_cartan(c: &[Vec<i32>], affine_node: Option<usize>) -> DynkinDiagram {
        let n = c.len();
        let mut bonds = BTreeMap::new();
        for i in 0..n {
            for j in i + 1..n {
                if c[i][j] != 0 || c[j][i] != 0 {
                    bonds.insert((i, j), (c[i][j], c[j][i]));
                }
            }
        }
        DynkinDiagram { nodes: n, bonds, extended: affine_node.is_some(), affine_node }
    }

    pub fn cartan(&self) -> Vec<Vec<i32>> {
        let mut c = vec![vec![0; self.nodes]; self.nodes];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (&(i, j), &(a, b)) in &self.bonds {
            c[i][j] = a;
            c[j][i] = b;
        }
        c
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .bonds
            .keys()
            .filter_map(|&(a, b)| if a == i { Some(b) } else if b == i { Some(a) } else { None })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Diagram with node `k` deleted and the remaining nodes renumbered.
    pub fn remove_node(&self, k: usize) -> DynkinDiagram {
        let keep: Vec<usize> = (0..self.nodes).filter(|&i| i != k).collect();
        let c = self.cartan();
        let sub: Vec<Vec<i32>> = keep.iter().map(|&i| keep.iter().map(|&j| c[i][j]).collect()).collect();
        let affine = match self.affine_node {
            Some(a) if a != k => keep.iter().position(|&i| i == a),
            _ => None,
        };
        DynkinDiagram::from_cartan(&sub, affine)
    }

    pub fn type_label(&self) -> TypeLabel {
        TypeLabel::new(classify_cartan(&self.cartan()), 0)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: SimpleType,
    cartan: Vec<Vec<i32>>,
    /// Inner product of simple roots times `scale`.
    gram: Vec<Vec<i64>>,
    scale: i64,
    roots: Vec<RootVec>,
    npos: usize,
    index: HashMap<RootVec, usize>,
    norms: Vec<i64>,
    sums: Vec<u16>,
    pairings: Vec<i32>,
    simple_refl: Vec<Vec<u16>>,
    marks: Vec<i32>,
}

impl RootSystem {
    pub fn new(series: Series, rank: usize) -> Result<RootSystem> {
        let ty = SimpleType::new(series, rank)?;
        Ok(Self::build(ty))
    }

    pub fn from_type(ty: SimpleType) -> Result<RootSystem> {
        Self::new(ty.series, ty.rank)
    }

    pub fn parse(label: &str) -> Result<RootSystem> {
        let ty: SimpleType = label.parse()?;
        Ok(Self::build(ty))
    }

    fn build(ty: SimpleType) -> RootSystem {
        let n = ty.rank;
        let cartan = cartan_matrix(ty.series, n);
        let lengths = simple_root_lengths(ty.series, n);
        let scale: i64 = if ty.series == Series::G { 6 } else { 2 };
        let gram: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = q(cartan[i][j] as i64) * &lengths[j] / q(2) * q(scale);
                        assert!(v.is_integer());
                        v.to_integer().try_into().unwrap()
                    })
                    .collect()
            })
            .collect();
        // positive roots by the string algorithm, height by height
        let mut layers: Vec<Vec<RootVec>> = vec![(0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect()];
        let mut known: HashSet<RootVec> = layers[0].iter().cloned().collect();
        loop {
            let mut next = BTreeSet::new();
            for beta in layers.last().unwrap() {
                for i in 0..n {
                    // p = how far the i-string extends downward
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i32 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        next.insert(up);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            known.extend(next.iter().cloned());
            layers.push(next.into_iter().collect());
        }
        let mut pos: Vec<RootVec> = layers.into_iter().flatten().collect();
        pos.sort_by(|a, b| {
            let ha: i32 = a.iter().sum();
            let hb: i32 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let npos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| v.iter().map(|x| -x).collect::<RootVec>()));
        let index: HashMap<RootVec, usize> = roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let ipv = |a: &[i32], b: &[i32]| -> i64 {
            let mut s = 0i64;
            for i in 0..n {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    s += a[i] as i64 * gram[i][j] * b[j] as i64;
                }
            }
            s
        };
        let norms: Vec<i64> = roots.iter().map(|r| ipv(r, r)).collect();
        let m = roots.len();
        let mut sums = vec![NONE; m * m];
        for a in 0..m {
            for b in 0..m {
                let s: RootVec = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                if let Some(&k) = index.get(&s) {
                    sums[a * m + b] = k as u16;
                }
            }
        }
        let pairings: Vec<i32> = roots
            .iter()
            .flat_map(|r| (0..n).map(|i| (0..n).map(|j| r[j] * cartan[j][i]).sum::<i32>()).collect::<Vec<_>>())
            .collect();
        let simple_refl: Vec<Vec<u16>> = (0..n)
            .map(|i| {
                (0..m)
                    .map(|a| {
                        let mut v = roots[a].clone();
                        v[i] -= pairings[a * n + i];
                        index[&v] as u16
                    })
                    .collect()
            })
            .collect();
        let marks = pos[npos - 1].clone();
        RootSystem { ty, cartan, gram, scale, roots, npos, index, norms, sums, pairings, simple_refl, marks }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.ty
    }

    pub fn series(&self) -> Series {
        self.ty.series
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn label(&self) -> String {
        self.ty.to_string()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    /// (α_i, α_j) as a rational.
    pub fn inner_product(&self, i: usize, j: usize) -> Q {
        qr(self.gram[i][j], self.scale)
    }

    pub fn inner_product_matrix(&self) -> Vec<Vec<Q>> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.inner_product(i, j)).collect()).collect()
    }

    /// Scale factor s such that `ip_scaled` = s * (a, b).
    pub fn ip_scale(&self) -> i64 {
        self.scale
    }

    pub fn ip_scaled(&self, a: &[i32], b: &[i32]) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] as i64 * self.gram[i][j] * b[j] as i64;
            }
        }
        s
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.roots[..self.npos]
    }

    pub fn root(&self, i: usize) -> &RootVec {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &[i32]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.npos {
            i + self.npos
        } else {
            i - self.npos
        }
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.npos
    }

    pub fn height(&self, i: usize) -> i32 {
        self.roots[i].iter().sum()
    }

    /// Index of the simple root α_i.
    pub fn simple(&self, i: usize) -> usize {
        i
    }

    pub fn highest_root(&self) -> usize {
        self.npos - 1
    }

    pub fn marks(&self) -> &[i32] {
        &self.marks
    }

    pub fn coxeter_number(&self) -> usize {
        self.num_roots() / self.rank()
    }

    /// Scaled squared length of root `i`.
    pub fn norm_scaled(&self, i: usize) -> i64 {
        self.norms[i]
    }

    /// Squared length of root `i`.
    pub fn norm(&self, i: usize) -> Q {
        qr(self.norms[i], self.scale)
    }

    pub fn is_long(&self, i: usize) -> bool {
        self.norms[i] == 2 * self.scale
    }

    pub fn ip_roots_scaled(&self, a: usize, b: usize) -> i64 {
        self.ip_scaled(&self.roots[a], &self.roots[b])
    }

    /// ⟨α, β^∨⟩ = 2(α, β)/(β, β).
    pub fn cartan_int(&self, a: usize, b: usize) -> i32 {
        (2 * self.ip_roots_scaled(a, b) / self.norms[b]) as i32
    }

    /// ⟨root, α_i^∨⟩.
    pub fn pairing(&self, root: usize, i: usize) -> i32 {
        self.pairings[root * self.rank() + i]
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s = self.sums[a * self.roots.len() + b];
        (s != NONE).then_some(s as usize)
    }

    /// Simple reflection s_i as a permutation of root indices.
    pub fn simple_reflection(&self, i: usize) -> &[u16] {
        &self.simple_refl[i]
    }

    /// s_β(γ) for root indices.
    pub fn reflect(&self, beta: usize, gamma: usize) -> usize {
        let c = self.cartan_int(gamma, beta);
        let v: RootVec = self.roots[gamma].iter().zip(&self.roots[beta]).map(|(g, b)| g - c * b).collect();
        self.index[&v]
    }

    pub fn reflect_vec(&self, i: usize, v: &[i32]) -> RootVec {
        let n = self.rank();
        let p: i32 = (0..n).map(|j| v[j] * self.cartan[j][i]).sum();
        let mut w = v.to_vec();
        w[i] -= p;
        w
    }

    /// ⟨v, α_i^∨⟩ for a lattice vector.
    pub fn pairing_vec(&self, v: &[i32], i: usize) -> i32 {
        (0..self.rank()).map(|j| v[j] * self.cartan[j][i]).sum()
    }

    pub fn compare_vecs(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
        let ha: i32 = a.iter().sum();
        let hb: i32 = b.iter().sum();
        ha.cmp(&hb).then_with(|| b.cmp(a))
    }

    /// Orbit of a lattice vector under W, sorted by height then reverse
    /// lexicographic order (the canonical root order).
    pub fn weyl_orbit(&self, v: &[i32]) -> Vec<RootVec> {
        let mut seen: HashSet<RootVec> = HashSet::new();
        let mut queue = VecDeque::from([v.to_vec()]);
        seen.insert(v.to_vec());
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.reflect_vec(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut out: Vec<RootVec> = seen.into_iter().collect();
        out.sort_by(|a, b| Self::compare_vecs(a, b));
        out
    }

    /// |W| as the product of the degrees.
    pub fn weyl_group_order(&self) -> u128 {
        self.ty.degrees().iter().map(|&d| d as u128).product()
    }

    /// |W| by orbit-stabilizer on fundamental weights down a parabolic chain.
    pub fn weyl_group_order_by_orbits(&self) -> u128 {
        let nodes: Vec<usize> = (0..self.rank()).collect();
        parabolic_order(&self.cartan, &nodes)
    }

    pub fn dynkin_diagram(&self) -> DynkinDiagram {
        DynkinDiagram::from_cartan(&self.cartan, None)
    }

    /// Extended diagram on Δ ∪ {−δ}; the affine node has index `rank`.
    pub fn extended_diagram(&self) -> DynkinDiagram {
        let gens = self.extended_nodes();
        let c: Vec<Vec<i32>> = gens.iter().map(|&a| gens.iter().map(|&b| self.cartan_int(a, b)).collect()).collect();
        DynkinDiagram::from_cartan(&c, Some(self.rank()))
    }

    /// Root indices of α_1..α_n, −δ.
    pub fn extended_nodes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.rank()).collect();
        v.push(self.neg(self.highest_root()));
        v
    }

    /// The root subsystem generated by `gens`: closure under the reflections
    /// in the generators. Sorted root indices.
    pub fn subsystem_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = gens.iter().flat_map(|&g| [g, self.neg(g)]).collect();
        let mut queue: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.reflect(g, x);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_symmetric(&self, psi: &[usize]) -> bool {
        let s: HashSet<usize> = psi.iter().copied().collect();
        psi.iter().all(|&a| s.contains(&self.neg(a)))
    }

    /// First pair (α, β) in Ψ with α+β a root outside Ψ, if any.
    pub fn closure_violation(&self, psi: &[usize]) -> Option<(usize, usize)> {
        let s: HashSet<usize> = psi.iter().copied().collect();
        for &a in psi {
            for &b in psi {
                if let Some(c) = self.sum(a, b) {
                    if !s.contains(&c) {
                        return Some((a, b));
                    }
                }
            }
        }
        None
    }

    pub fn apply_perm(perm: &[u16], set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&a| perm[a] as usize).collect();
        v.sort();
        v
    }

    /// Canonical representative of the W-orbit of a root set: move the sum of
    /// its positive roots to the dominant chamber, then minimize over the
    /// stabilizer (a standard parabolic subgroup) of that dominant vector.
    pub fn canonical_psi(&self, psi: &[usize]) -> Vec<usize> {
        let n = self.rank();
        let mut set: Vec<usize> = psi.to_vec();
        set.sort();
        let mut v = vec![0i32; n];
        for &a in &set {
            if self.is_positive(a) {
                for (x, y) in v.iter_mut().zip(&self.roots[a]) {
                    *x += y;
                }
            }
        }
        while let Some(i) = (0..n).find(|&i| self.pairing_vec(&v, i) < 0) {
            v = self.reflect_vec(i, &v);
            set = Self::apply_perm(&self.simple_refl[i], &set);
        }
        let j: Vec<usize> = (0..n).filter(|&i| self.pairing_vec(&v, i) == 0).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::from([set.clone()]);
        let mut queue = VecDeque::from([set.clone()]);
        let mut best = set;
        while let Some(x) = queue.pop_front() {
            if x < best {
                best = x.clone();
            }
            for &i in &j {
                let y = Self::apply_perm(&self.simple_refl[i], &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        best
    }

    /// Text dump used by `roots` on the command line.
    pub fn to_text(&self) -> String {
        let mut s = format!("type {}\nrank {}\ncartan\n", self.ty, self.rank());
        for row in &self.cartan {
            s += &format!("  {}\n", row.iter().map(|x| format!("{x:>2}")).collect::<Vec<_>>().join(" "));
        }
        s += &format!("marks {:?}\npositive roots {}\n", self.marks, self.npos);
        for (i, r) in self.positive_roots().iter().enumerate() {
            s += &format!("  {i:>3}  {:?}\n", r);
        }
        s
    }
}

fn parabolic_order(cartan: &[Vec<i32>], nodes: &[usize]) -> u128 {
    if nodes.is_empty() {
        return 1;
    }
    let k = nodes.len();
    let sub: Vec<Vec<i32>> = nodes.iter().map(|&i| nodes.iter().map(|&j| cartan[i][j]).collect()).collect();
    // orbit of the first fundamental weight, in fundamental-weight coordinates
    let mut start = vec![0i32; k];
    start[0] = 1;
    let mut seen: HashSet<Vec<i32>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for i in 0..k {
            if x[i] == 0 {
                continue;
            }
            let y: Vec<i32> = (0..k).map(|j| x[j] - x[i] * sub[i][j]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len() as u128 * parabolic_order(cartan, &nodes[1..])
}

/// The Weyl group as permutations of root indices.
pub struct WeylGroup {
    pub elements: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
}

impl WeylGroup {
    /// Enumerate W by breadth-first search; fails when |W| exceeds `limit`.
    pub fn enumerate(rs: &RootSystem, limit: u128) -> Result<WeylGroup> {
        let order = rs.weyl_group_order();
        if order > limit {
            return Err(Error::Budget(format!("|W({})| = {} exceeds limit {}", rs.label(), order, limit)));
        }
        let gens: Vec<Vec<u16>> = (0..rs.rank()).map(|i| rs.simple_reflection(i).to_vec()).collect();
        Ok(Self::generate(&gens, rs.num_roots()))
    }

    /// Closure of a set of permutations under composition.
    pub fn generate(gens: &[Vec<u16>], degree: usize) -> WeylGroup {
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut k = 0;
        while k < elements.len() {
            for g in gens {
                let h = compose(g, &elements[k]);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elements.len());
                    elements.push(h);
                }
            }
            k += 1;
        }
        WeylGroup { elements, index }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &[u16]) -> bool {
        self.index.contains_key(p)
    }
}

/// (a ∘ b)(x) = a(b(x)).
pub fn compose(a: &[u16], b: &[u16]) -> Vec<u16> {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn invert(a: &[u16]) -> Vec<u16> {
    let mut inv = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u16;
    }
    inv
}

/// Every valid ambient type of rank at most `max_rank`.
pub fn all_types(max_rank: usize) -> Vec<SimpleType> {
    let mut v = Vec::new();
    for s in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G] {
        for r in 1..=max_rank {
            if let Ok(t) = SimpleType::new(s, r) {
                v.push(t);
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_is_trivial() {
        let rs = RootSystem::new(Series::A, 1).unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1]]);
        assert_eq!(rs.marks(), &[1]);
    }

    #[test]
    fn counts_match_closed_forms() {
        for t in all_types(8) {
            let rs = RootSystem::from_type(t).unwrap();
            assert_eq!(rs.num_positive(), t.num_positive_roots(), "{t}");
            let h = 1 + rs.marks().iter().sum::<i32>() as usize;
            assert_eq!(h, rs.coxeter_number(), "{t}");
        }
    }

    #[test]
    fn b2_and_g2() {
        let b2 = RootSystem::new(Series::B, 2).unwrap();
        assert_eq!(b2.num_positive(), 4);
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        assert_eq!(g2.marks(), &[3, 2]);
        assert_eq!(g2.norm(0), qr(2, 3));
    }

    #[test]
    fn cartan_from_inner_product() {
        for t in all_types(8) {
            let rs = RootSystem::from_type(t).unwrap();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    let c = q(2) * rs.inner_product(i, j) / rs.inner_product(j, j);
                    assert_eq!(c, q(rs.cartan()[i][j] as i64));
                }
            }
        }
    }

    #[test]
    fn invalid_types() {
        assert!(matches!(RootSystem::new(Series::D, 3), Err(Error::InvalidType { series: 'D', rank: 3 })));
        assert!(RootSystem::new(Series::B, 1).is_err());
        assert!(RootSystem::new(Series::A, 9).is_err());
        assert!("Z9".parse::<SimpleType>().is_err());
    }

    #[test]
    fn weyl_orders() {
        let f4 = RootSystem::new(Series::F, 4).unwrap();
        assert_eq!(f4.weyl_group_order(), 1152);
        assert_eq!(f4.weyl_group_order_by_orbits(), 1152);
        let b4 = RootSystem::new(Series::B, 4).unwrap();
        assert_eq!(b4.weyl_group_order(), 384);
        for t in all_types(8) {
            let rs = RootSystem::from_type(t).unwrap();
            assert_eq!(rs.weyl_group_order(), rs.weyl_group_order_by_orbits(), "{t}");
        }
        let w = WeylGroup::enumerate(&f4, 10_000).unwrap();
        assert_eq!(w.order(), 1152);
    }

    #[test]
    fn orbits() {
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        let delta = g2.root(g2.highest_root()).clone();
        let orbit = g2.weyl_orbit(&delta);
        assert_eq!(orbit.len(), 6);
        assert!(orbit.iter().all(|v| g2.is_long(g2.index_of(v).unwrap())));
        assert_eq!(g2.weyl_orbit(&[0, 0]), vec![vec![0, 0]]);
        let a2 = RootSystem::new(Series::A, 2).unwrap();
        assert_eq!(a2.weyl_orbit(&[1, 0]).len(), 6);
    }

    #[test]
    fn extended_diagrams() {
        let a4 = RootSystem::new(Series::A, 4).unwrap();
        let ext = a4.extended_diagram();
        for i in 0..5 {
            assert_eq!(ext.neighbors(i).len(), 2);
        }
        let a1 = RootSystem::new(Series::A, 1).unwrap();
        let e = a1.extended_diagram();
        assert_eq!(e.bonds[&(0, 1)], (-2, -2));
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        let e = g2.extended_diagram();
        assert_eq!(e.bonds.len(), 2);
        assert!(e.bonds.values().any(|&(a, b)| a * b == 3));
        for t in all_types(8) {
            let rs = RootSystem::from_type(t).unwrap();
            let d = rs.dynkin_diagram();
            assert_eq!(DynkinDiagram::from_cartan(&d.cartan(), None), d);
            assert_eq!(rs.extended_diagram().remove_node(rs.rank()), d);
            assert_eq!(d.type_label().to_string(), t.to_string());
        }
    }

    #[test]
    fn reflections_preserve_roots() {
        for t in all_types(8) {
            let rs = RootSystem::from_type(t).unwrap();
            for i in 0..rs.rank() {
                let p = rs.simple_reflection(i);
                let mut sorted: Vec<u16> = p.to_vec();
                sorted.sort();
                assert_eq!(sorted, (0..rs.num_roots() as u16).collect::<Vec<_>>());
                assert_eq!(p[i] as usize, rs.neg(i));
            }
        }
    }

    #[test]
    fn type_label_parsing() {
        assert_eq!(TypeLabel::parse("2A1+B6").unwrap().to_string(), "A1+A1+B6");
        assert_eq!(TypeLabel::parse("D3+T1").unwrap().to_string(), "A3+T1");
        assert_eq!(TypeLabel::parse("C2").unwrap().to_string(), "B2");
        assert_eq!(TypeLabel::parse("B2+A1").unwrap().to_string(), "A1+B2");
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let b3 = RootSystem::new(Series::B, 3).unwrap();
        let w = WeylGroup::enumerate(&b3, 1000).unwrap();
        let psi = b3.subsystem_generated(&[0, 2]);
        let c = b3.canonical_psi(&psi);
        for g in &w.elements {
            assert_eq!(b3.canonical_psi(&RootSystem::apply_perm(g, &psi)), c);
        }
    }
}
