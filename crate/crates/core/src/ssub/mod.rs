//! Real forms of the ambient algebra containing a given S-subalgebra real
//! form: an A-space of intertwiners, polynomial equations for the ambient
//! Cartan involution, and exact solving.
//!
//! Everything is written in the real basis of the ambient compact form
//! ũ = span{e_α − c_α f_α, i(e_α + c_α f_α), i h_j}, where the positive
//! rationals c_α are chosen so that ε(u) ⊂ ũ. A real matrix θ̃ in that basis
//! automatically commutes with the conjugation of ũ, so the search only
//! needs real points.

pub mod poly;
pub mod solve;

use crate::chevalley::{AlgebraElement, ChevalleyAlgebra, Matrix};
use crate::error::{Error, Result};
use crate::linalg::{fmt_q, kernel, parse_q, q, rank, SparseEliminator, SparseRow, Q};
use crate::realform::{enumerate_real_forms, label_for_character, RealLabel, ThetaKind};
use crate::rootsys::{cartan_matrix, RootSystem, SimpleType, TypeLabel};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use poly::{dimension, groebner_basis, independent_set, is_unit_ideal, MonomialOrder, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use solve::{real_roots, solve_zero_dim, QuadNum};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

mod index {
    include!(concat!(env!("OUT_DIR"), "/embedding_index.rs"));
}

// ---------------------------------------------------------------- data

fn default_true() -> bool {
    true
}

/// Images of the Chevalley generators of a semisimple subalgebra. Keys are
/// ambient basis indices (root index, or 2N + j for h_j), values rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingData {
    pub name: String,
    pub sub_type: String,
    pub ambient_type: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynkin_index: Option<u64>,
    /// Whether the image is a maximal subalgebra (tables list only those).
    #[serde(default = "default_true")]
    pub maximal: bool,
    pub e_images: Vec<BTreeMap<String, String>>,
    pub f_images: Vec<BTreeMap<String, String>>,
}

fn to_sparse(v: &AlgebraElement) -> BTreeMap<String, String> {
    v.support().map(|(i, c)| (i.to_string(), fmt_q(c))).collect()
}

impl EmbeddingData {
    pub fn parse(text: &str) -> Result<EmbeddingData> {
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<EmbeddingData> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).unwrap()
    }

    pub fn sub_label(&self) -> Result<TypeLabel> {
        TypeLabel::parse(&self.sub_type)
    }

    pub fn ambient(&self) -> Result<RootSystem> {
        RootSystem::parse(&self.ambient_type)
    }

    fn image(&self, alg: &ChevalleyAlgebra, m: &BTreeMap<String, String>) -> Result<AlgebraElement> {
        let mut v = alg.zero();
        for (k, s) in m {
            let i: usize = k.parse().map_err(|_| Error::Embedding(format!("bad basis index `{k}`")))?;
            if i >= alg.dim() {
                return Err(Error::Embedding(format!("basis index {i} out of range")));
            }
            v.coefficients[i] = parse_q(s).ok_or_else(|| Error::Embedding(format!("bad rational `{s}`")))?;
        }
        Ok(v)
    }

    pub fn e(&self, alg: &ChevalleyAlgebra) -> Result<Vec<AlgebraElement>> {
        self.e_images.iter().map(|m| self.image(alg, m)).collect()
    }

    pub fn f(&self, alg: &ChevalleyAlgebra) -> Result<Vec<AlgebraElement>> {
        self.f_images.iter().map(|m| self.image(alg, m)).collect()
    }

    /// Cartan matrix of the subalgebra, components in label order.
    pub fn sub_cartan(&self) -> Result<Vec<Vec<i32>>> {
        let t = self.sub_label()?;
        if t.torus > 0 {
            return Err(Error::Embedding("S-subalgebras are semisimple".into()));
        }
        Ok(block_cartan(&t.components))
    }

    /// Check the Chevalley–Serre relations on the images and injectivity.
    pub fn validate(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let c = self.sub_cartan()?;
        let n = c.len();
        let e = self.e(alg)?;
        let f = self.f(alg)?;
        if e.len() != n || f.len() != n {
            return Err(Error::Embedding(format!("expected {n} generator images")));
        }
        let h: Vec<AlgebraElement> = (0..n).map(|i| alg.bracket_unchecked(&e[i], &f[i])).collect();
        let fail = |what: String| Err(Error::NotHomomorphism(what));
        for i in 0..n {
            for j in 0..n {
                let ef = alg.bracket_unchecked(&e[i], &f[j]);
                if i != j && !ef.is_zero() {
                    return fail(format!("[e{i}, f{j}] != 0"));
                }
                if alg.bracket_unchecked(&h[i], &e[j]) != e[j].scale(&q(c[j][i] as i64)) {
                    return fail(format!("[h{i}, e{j}]"));
                }
                if alg.bracket_unchecked(&h[i], &f[j]) != f[j].scale(&q(-c[j][i] as i64)) {
                    return fail(format!("[h{i}, f{j}]"));
                }
                if i != j {
                    let (mut x, mut y) = (e[j].clone(), f[j].clone());
                    for _ in 0..(1 - c[j][i]) {
                        x = alg.bracket_unchecked(&e[i], &x);
                        y = alg.bracket_unchecked(&f[i], &y);
                    }
                    if !x.is_zero() || !y.is_zero() {
                        return fail(format!("Serre relation for ({i}, {j})"));
                    }
                }
            }
        }
        let hs: Vec<Vec<Q>> = h.iter().map(|x| x.coefficients.clone()).collect();
        if rank(&hs) != n {
            return Err(Error::NotHomomorphism("images of the Cartan generators are dependent".into()));
        }
        Ok(())
    }

    /// Solve for f-images supported on the negatives of the roots in each
    /// e-image, from [e_j, f_i] = δ_ij h_i and [h_i, e_j] = C_ji e_j.
    pub fn from_e_images(
        name: &str,
        sub_type: &str,
        alg: &ChevalleyAlgebra,
        e_images: &[AlgebraElement],
    ) -> Result<EmbeddingData> {
        let c = block_cartan(&TypeLabel::parse(sub_type)?.components);
        let rs = alg.root_system();
        let n = c.len();
        let mut f_images = Vec::new();
        for i in 0..n {
            let supp: Vec<usize> = e_images[i].support().map(|(a, _)| a).collect();
            if supp.iter().any(|&a| !alg.is_root_index(a) || !rs.is_positive(a)) {
                return Err(Error::Embedding("e-images must lie in positive root spaces".into()));
            }
            // unknowns: coefficients on f_a for a in supp, plus a constant column
            let k = supp.len();
            let mut rows: Vec<Vec<Q>> = Vec::new();
            let column_images = |j: usize, build: &dyn Fn(&AlgebraElement) -> AlgebraElement| -> Vec<AlgebraElement> {
                let _ = j;
                supp.iter().map(|&a| build(&alg.f(a))).collect()
            };
            for j in 0..n {
                // [e_j, f_i] = δ_ij h_i is automatic for j = i; for j != i it must vanish
                if j != i {
                    let imgs = column_images(j, &|fa| alg.bracket_unchecked(&e_images[j], fa));
                    for coord in 0..alg.dim() {
                        let mut row: Vec<Q> = imgs.iter().map(|v| v.coefficients[coord].clone()).collect();
                        row.push(Q::zero());
                        rows.push(row);
                    }
                }
                // [[e_i, f_i], e_j] = C_ji e_j
                let imgs = column_images(j, &|fa| alg.bracket_unchecked(&alg.bracket_unchecked(&e_images[i], fa), &e_images[j]));
                let target = e_images[j].scale(&q(c[j][i] as i64));
                for coord in 0..alg.dim() {
                    let mut row: Vec<Q> = imgs.iter().map(|v| v.coefficients[coord].clone()).collect();
                    row.push(-target.coefficients[coord].clone());
                    rows.push(row);
                }
            }
            let ker = kernel(&rows, k + 1);
            let sol = ker
                .iter()
                .find(|v| !v[k].is_zero())
                .ok_or_else(|| Error::NotHomomorphism(format!("no f-image for generator {i}")))?;
            let scale = Q::one() / &sol[k];
            let mut f = alg.zero();
            for (t, &a) in supp.iter().enumerate() {
                f.coefficients[rs.neg(a)] = &sol[t] * &scale;
            }
            f_images.push(f);
        }
        let data = EmbeddingData {
            name: name.to_string(),
            sub_type: TypeLabel::parse(sub_type)?.to_string(),
            ambient_type: rs.label(),
            dynkin_index: None,
            maximal: true,
            e_images: e_images.iter().map(to_sparse).collect(),
            f_images: f_images.iter().map(to_sparse).collect(),
        };
        data.validate(alg)?;
        let mut data = data;
        data.dynkin_index = data.dynkin_index_a1(alg);
        Ok(data)
    }

    /// Dynkin index of an A1 subalgebra: (εh, εh) / (h, h) for the invariant
    /// forms normalized so long roots have squared length 2.
    pub fn dynkin_index_a1(&self, alg: &ChevalleyAlgebra) -> Option<u64> {
        if self.sub_type != "A1" {
            return None;
        }
        let rs = alg.root_system();
        let e = self.e(alg).ok()?;
        let f = self.f(alg).ok()?;
        let h = alg.bracket_unchecked(&e[0], &f[0]);
        let r = rs.rank();
        let coef: Vec<Q> = (0..r).map(|j| h.coefficients[alg.h_index(j)].clone()).collect();
        // (h_i, h_j) = 4 (α_i, α_j) / ((α_i, α_i)(α_j, α_j))
        let mut norm = Q::zero();
        for i in 0..r {
            for j in 0..r {
                let ii = rs.inner_product(i, i);
                let jj = rs.inner_product(j, j);
                norm += &coef[i] * &coef[j] * q(4) * rs.inner_product(i, j) / (ii * jj);
            }
        }
        let idx = norm / q(2);
        idx.is_integer().then(|| idx.to_integer().to_u64()).flatten()
    }
}

pub fn block_cartan(components: &[SimpleType]) -> Vec<Vec<i32>> {
    let n: usize = components.iter().map(|t| t.rank).sum();
    let mut c = vec![vec![0; n]; n];
    let mut off = 0;
    for t in components {
        let b = cartan_matrix(t.series, t.rank);
        for i in 0..t.rank {
            for j in 0..t.rank {
                c[off + i][off + j] = b[i][j];
            }
        }
        off += t.rank;
    }
    c
}

/// Embeddings shipped with the crate.
pub fn builtin_embeddings() -> Result<Vec<EmbeddingData>> {
    index::EMBEDDINGS.iter().map(|(_, t)| EmbeddingData::parse(t)).collect()
}

// ------------------------------------------------------- normalization

/// An embedding together with the rescaled compact form c of the ambient
/// algebra in which ε(u) ⊂ ũ_c.
#[derive(Clone, Debug)]
pub struct NormalizedEmbedding {
    pub data: EmbeddingData,
    /// c_α for every positive root index.
    pub c: Vec<Q>,
}

/// Find positive rationals c_α, multiplicative in α, with
/// ε(f_i) = Σ a_α c_α f_α whenever ε(e_i) = Σ a_α e_α. This is the compact
/// form φ(ũ) for a real torus element φ; it replaces post-composing ε with
/// φ⁻¹, which would need square roots.
pub fn normalize_embedding(raw: &EmbeddingData, alg: &ChevalleyAlgebra) -> Result<NormalizedEmbedding> {
    raw.validate(alg)?;
    let rs = alg.root_system();
    let r = rs.rank();
    let e = raw.e(alg)?;
    let f = raw.f(alg)?;
    let mut constraints: Vec<(usize, Q)> = Vec::new();
    for (ei, fi) in e.iter().zip(&f) {
        for (a, x) in ei.support() {
            if !alg.is_root_index(a) || !rs.is_positive(a) {
                return Err(Error::Embedding("e-images must lie in positive root spaces".into()));
            }
            let y = &fi.coefficients[rs.neg(a)];
            let ratio = y / x;
            if !ratio.is_positive() {
                return Err(Error::Embedding(format!("no positive rescaling for root {:?}", rs.root(a))));
            }
            constraints.push((a, ratio));
        }
        for (b, _) in fi.support() {
            if !alg.is_root_index(b) || rs.is_positive(b) || ei.coefficients[rs.neg(b)].is_zero() {
                return Err(Error::Embedding("f-images must mirror the e-images".into()));
            }
        }
    }
    // solve Σ_j n_j(α) x_{p,j} = v_p(ratio) for every prime p
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for (_, v) in &constraints {
        primes.extend(prime_factors(v.numer()));
        primes.extend(prime_factors(v.denom()));
    }
    let mut c_simple = vec![Q::one(); r];
    for p in primes {
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (a, v) in &constraints {
            let mut row: Vec<Q> = rs.root(*a).iter().map(|&n| q(n as i64)).collect();
            row.push(-q(valuation(v.numer(), &p) - valuation(v.denom(), &p)));
            rows.push(row);
        }
        let ker = kernel(&rows, r + 1);
        let sol = ker
            .iter()
            .find(|v| !v[r].is_zero())
            .ok_or_else(|| Error::Embedding("inconsistent rescaling".into()))?;
        for j in 0..r {
            let x = &sol[j] / &sol[r];
            if !x.is_integer() {
                return Err(Error::Embedding("rescaling needs a quadratic extension".into()));
            }
            let k = x.to_integer().to_i64().unwrap();
            let pq = Q::from_integer(p.clone());
            let factor = if k >= 0 { pow(&pq, k as u32) } else { Q::one() / pow(&pq, (-k) as u32) };
            c_simple[j] *= factor;
        }
    }
    let c: Vec<Q> = (0..rs.num_positive())
        .map(|a| rs.root(a).iter().zip(&c_simple).fold(Q::one(), |acc, (&n, cj)| acc * pow(cj, n as u32)))
        .collect();
    for (a, v) in &constraints {
        if c[*a] != *v {
            return Err(Error::Embedding("inconsistent rescaling".into()));
        }
    }
    Ok(NormalizedEmbedding { data: raw.clone(), c })
}

fn pow(x: &Q, e: u32) -> Q {
    (0..e).fold(Q::one(), |acc, _| acc * x)
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            while (&n % &d).is_zero() {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

fn valuation(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut k = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        k += 1;
    }
    k
}

// ------------------------------------------------------ compact model

type CVec = Vec<(Q, Q)>;

fn cmul(a: &(Q, Q), b: &(Q, Q)) -> (Q, Q) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// The ambient algebra in the real basis of ũ_c: X_α (0..N), Y_α (N..2N),
/// H_j (2N..2N+r).
pub struct CompactModel {
    pub alg: ChevalleyAlgebra,
    pub c: Vec<Q>,
    /// structure[p][q] = [U_p, U_q] as a sparse real vector.
    pub structure: Vec<Vec<Vec<(usize, Q)>>>,
}

impl CompactModel {
    pub fn new(alg: &ChevalleyAlgebra, c: Vec<Q>) -> CompactModel {
        let d = alg.dim();
        let mut m = CompactModel { alg: alg.clone(), c, structure: vec![] };
        let vecs: Vec<CVec> = (0..d).map(|p| m.u_basis_vector(p)).collect();
        let mut structure = vec![vec![vec![]; d]; d];
        for p in 0..d {
            for qq in 0..d {
                let z = m.cbracket(&vecs[p], &vecs[qq]);
                let u = m.to_u(&z).expect("ũ_c is closed under brackets");
                structure[p][qq] = u.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
            }
        }
        m.structure = structure;
        m
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn npos(&self) -> usize {
        self.alg.root_system().num_positive()
    }

    fn u_basis_vector(&self, p: usize) -> CVec {
        let n = self.npos();
        let d = self.dim();
        let mut z = vec![(Q::zero(), Q::zero()); d];
        if p < n {
            z[p] = (Q::one(), Q::zero());
            z[p + n] = (-self.c[p].clone(), Q::zero());
        } else if p < 2 * n {
            z[p - n] = (Q::zero(), Q::one());
            z[p] = (Q::zero(), self.c[p - n].clone());
        } else {
            z[p] = (Q::zero(), Q::one());
        }
        z
    }

    fn cbracket(&self, x: &CVec, y: &CVec) -> CVec {
        let mut out = vec![(Q::zero(), Q::zero()); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.0.is_zero() && xi.1.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.0.is_zero() && yj.1.is_zero() {
                    continue;
                }
                let w = cmul(xi, yj);
                for &(k, s) in self.alg.basis_bracket(i, j) {
                    out[k].0 += &w.0 * q(s as i64);
                    out[k].1 += &w.1 * q(s as i64);
                }
            }
        }
        out
    }

    /// Coordinates in the ũ_c basis, or None if z is not in ũ_c.
    pub fn to_u(&self, z: &CVec) -> Option<Vec<Q>> {
        let n = self.npos();
        let d = self.dim();
        let mut u = vec![Q::zero(); d];
        for a in 0..n {
            let (x, y) = (&z[a].0, &z[a].1);
            if z[a + n].0 != -(&self.c[a] * x) || z[a + n].1 != &self.c[a] * y {
                return None;
            }
            u[a] = x.clone();
            u[a + n] = y.clone();
        }
        for p in 2 * n..d {
            if !z[p].0.is_zero() {
                return None;
            }
            u[p] = z[p].1.clone();
        }
        Some(u)
    }

    /// ad(v) in the ũ_c basis (column q is [v, U_q]).
    pub fn ad(&self, v: &[Q]) -> Matrix {
        let d = self.dim();
        let mut m = vec![vec![Q::zero(); d]; d];
        for (k, vk) in v.iter().enumerate() {
            if vk.is_zero() {
                continue;
            }
            for qq in 0..d {
                for (p, s) in &self.structure[k][qq] {
                    m[*p][qq] += vk * s;
                }
            }
        }
        m
    }

    /// Real ũ_c coordinates of ε(X_i) = ε(e_i − f_i) and ε(Y_i) = ε(i(e_i + f_i)).
    pub fn generator_images(&self, emb: &EmbeddingData) -> Result<(Vec<Vec<Q>>, Vec<Vec<Q>>)> {
        let e = emb.e(&self.alg)?;
        let f = emb.f(&self.alg)?;
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (ei, fi) in e.iter().zip(&f) {
            let zx: CVec = ei.coefficients.iter().zip(&fi.coefficients).map(|(a, b)| (a - b, Q::zero())).collect();
            let zy: CVec = ei.coefficients.iter().zip(&fi.coefficients).map(|(a, b)| (Q::zero(), a + b)).collect();
            let not_compact = || Error::Embedding("ε(u) is not inside the rescaled compact form".into());
            xs.push(self.to_u(&zx).ok_or_else(not_compact)?);
            ys.push(self.to_u(&zy).ok_or_else(not_compact)?);
        }
        Ok((xs, ys))
    }
}

// -------------------------------------------------- subalgebra real forms

/// A Cartan involution of the subalgebra commuting with its compact
/// conjugation, given on the generators: e_i ↦ s_i e_{π(i)}, f_i ↦ s_i f_{π(i)}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubRealForm {
    pub label: String,
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

/// All real forms of a semisimple type: a census form on each component,
/// or a complex form on a pair of isomorphic components swapped by θ.
/// Different placements of the same summands are kept apart.
pub fn sub_real_forms(t: &TypeLabel) -> Result<Vec<SubRealForm>> {
    let comps = &t.components;
    let mut per_component: Vec<Vec<(String, Vec<usize>, Vec<i8>)>> = Vec::new();
    for ty in comps {
        let alg = ChevalleyAlgebra::new(&RootSystem::from_type(*ty)?);
        let forms = enumerate_real_forms(&alg)
            .into_iter()
            .map(|f| match f.kind {
                ThetaKind::Inner { lambda } => (
                    f.label,
                    (0..ty.rank).collect(),
                    lambda.iter().map(|&l| if l == 1 { -1 } else { 1 }).collect(),
                ),
                ThetaKind::Outer { perm, signs } => (f.label, perm, signs),
            })
            .collect();
        per_component.push(forms);
    }
    let offsets: Vec<usize> = comps.iter().scan(0, |acc, t| {
        let o = *acc;
        *acc += t.rank;
        Some(o)
    }).collect();
    let n: usize = comps.iter().map(|t| t.rank).sum();
    let mut out = Vec::new();
    // assignment[k] = None (unassigned), Some(Left(form)) or Some(Right(partner))
    fn rec(
        k: usize,
        comps: &[SimpleType],
        offsets: &[usize],
        per: &[Vec<(String, Vec<usize>, Vec<i8>)>],
        state: &mut Vec<Option<(String, Vec<usize>, Vec<i8>)>>,
        labels: &mut Vec<String>,
        out: &mut Vec<SubRealForm>,
        n: usize,
    ) {
        if k == comps.len() {
            let mut perm = vec![0; n];
            let mut signs = vec![1; n];
            for (i, st) in state.iter().enumerate() {
                let (_, p, s) = st.as_ref().unwrap();
                for l in 0..comps[i].rank {
                    perm[offsets[i] + l] = p[l];
                    signs[offsets[i] + l] = s[l];
                }
            }
            out.push(SubRealForm { label: RealLabel::from_summands(labels.clone()).to_string(), perm, signs });
            return;
        }
        if state[k].is_some() {
            return rec(k + 1, comps, offsets, per, state, labels, out, n);
        }
        for (label, p, s) in &per[k] {
            state[k] = Some((label.clone(), p.iter().map(|x| x + offsets[k]).collect(), s.clone()));
            labels.push(label.clone());
            rec(k + 1, comps, offsets, per, state, labels, out, n);
            labels.pop();
        }
        for m in k + 1..comps.len() {
            if comps[m] != comps[k] || state[m].is_some() {
                continue;
            }
            let r = comps[k].rank;
            state[k] = Some((String::new(), (0..r).map(|l| offsets[m] + l).collect(), vec![1; r]));
            state[m] = Some((String::new(), (0..r).map(|l| offsets[k] + l).collect(), vec![1; r]));
            labels.push(crate::realform::complex_label(comps[k]));
            rec(k + 1, comps, offsets, per, state, labels, out, n);
            labels.pop();
            state[m] = None;
        }
        state[k] = None;
    }
    let mut state = vec![None; comps.len()];
    rec(0, comps, &offsets, &per_component, &mut state, &mut vec![], &mut out, n);
    Ok(out)
}

// ------------------------------------------------------------- A-space

#[derive(Clone, Debug)]
pub struct ASpace {
    pub basis: Vec<Matrix>,
}

impl ASpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A is indexed row-major: unknown (i, j) is i·D + j.
fn intertwiner_rows(model: &CompactModel, pairs: &[(Matrix, Matrix)], elim: &mut SparseEliminator) {
    let d = model.dim();
    for (mp, m) in pairs {
        // A·M' − M·A = 0
        for i in 0..d {
            for j in 0..d {
                let mut row = SparseRow::new();
                for k in 0..d {
                    if !mp[k][j].is_zero() {
                        *row.entry(i * d + k).or_insert_with(Q::zero) += &mp[k][j];
                    }
                    if !m[i][k].is_zero() {
                        *row.entry(k * d + j).or_insert_with(Q::zero) -= &m[i][k];
                    }
                }
                row.retain(|_, v| !v.is_zero());
                if !row.is_empty() {
                    elim.insert(row);
                }
            }
        }
    }
}

fn twisted_pairs(model: &CompactModel, xs: &[Vec<Q>], ys: &[Vec<Q>], form: &SubRealForm) -> Vec<(Matrix, Matrix)> {
    let mut pairs = Vec::new();
    for i in 0..xs.len() {
        let s = q(form.signs[i] as i64);
        let p = form.perm[i];
        for (src, img) in [(&xs[i], &xs[p]), (&ys[i], &ys[p])] {
            let twisted: Vec<Q> = img.iter().map(|v| v * &s).collect();
            pairs.push((model.ad(&twisted), model.ad(src)));
        }
    }
    pairs
}

/// 𝒜 = {A : A·ad(εθy) = ad(εy)·A for all y}, computed on generators.
pub fn compute_a_space(model: &CompactModel, emb: &EmbeddingData, form: &SubRealForm) -> Result<ASpace> {
    let (xs, ys) = model.generator_images(emb)?;
    let d = model.dim();
    let mut elim = SparseEliminator::new();
    intertwiner_rows(model, &twisted_pairs(model, &xs, &ys, form), &mut elim);
    let basis: Vec<Matrix> = elim.kernel(d * d).into_iter().map(|v| v.chunks(d).map(|r| r.to_vec()).collect()).collect();
    if basis.is_empty() {
        return Err(Error::EmptyASpace);
    }
    Ok(ASpace { basis })
}

/// θ̃ = B0 + Σ t_j B_j: the affine part of 𝒜 satisfying θ̃ε = εθ.
#[derive(Clone, Debug)]
pub struct ThetaFamily {
    pub base: Matrix,
    pub directions: Vec<Matrix>,
}

pub fn theta_family(model: &CompactModel, emb: &EmbeddingData, form: &SubRealForm) -> Result<Option<ThetaFamily>> {
    let (xs, ys) = model.generator_images(emb)?;
    let d = model.dim();
    let z = d * d;
    let mut elim = SparseEliminator::new();
    intertwiner_rows(model, &twisted_pairs(model, &xs, &ys, form), &mut elim);
    for i in 0..xs.len() {
        let s = q(form.signs[i] as i64);
        let p = form.perm[i];
        for (src, img) in [(&xs[i], &xs[p]), (&ys[i], &ys[p])] {
            for r in 0..d {
                let mut row = SparseRow::new();
                for (k, v) in src.iter().enumerate() {
                    if !v.is_zero() {
                        row.insert(r * d + k, v.clone());
                    }
                }
                let rhs = &img[r] * &s;
                if !rhs.is_zero() {
                    row.insert(z, -rhs);
                }
                if !row.is_empty() {
                    elim.insert(row);
                }
            }
        }
    }
    let ker = elim.kernel(z + 1);
    let Some(pivot) = ker.iter().position(|v| !v[z].is_zero()) else {
        return Ok(None);
    };
    let scale = Q::one() / &ker[pivot][z];
    let base_vec: Vec<Q> = ker[pivot].iter().map(|x| x * &scale).collect();
    let to_matrix = |v: &[Q]| -> Matrix { v[..z].chunks(d).map(|r| r.to_vec()).collect() };
    let mut directions = Vec::new();
    for (k, v) in ker.iter().enumerate() {
        if k == pivot {
            continue;
        }
        let f = &v[z];
        let w: Vec<Q> = v.iter().zip(&base_vec).map(|(a, b)| a - f * b).collect();
        directions.push(to_matrix(&w));
    }
    Ok(Some(ThetaFamily { base: to_matrix(&base_vec), directions }))
}

// ---------------------------------------------------- polynomial system

/// Quadratic polynomials in n variables as dense coefficient vectors:
/// [1, t_0..t_{n-1}, t_j t_k (j ≤ k)].
struct QuadSpace {
    n: usize,
}

impl QuadSpace {
    fn len(&self) -> usize {
        1 + self.n + self.n * (self.n + 1) / 2
    }

    fn pair(&self, j: usize, k: usize) -> usize {
        let (j, k) = if j <= k { (j, k) } else { (k, j) };
        1 + self.n + j * self.n - j * (j + 1) / 2 + k
    }

    /// out += s · a · b for affine a, b (length n + 1).
    fn add_product(&self, out: &mut [Q], a: &[Q], b: &[Q], s: &Q) {
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let idx = match (i, j) {
                    (0, 0) => 0,
                    (0, j) => j,
                    (i, 0) => i,
                    (i, j) => self.pair(i - 1, j - 1),
                };
                out[idx] += x * y * s;
            }
        }
    }

    fn to_poly(&self, v: &[Q], nvars: usize) -> Poly {
        let o = MonomialOrder::DegRevLex;
        let mut terms = Vec::new();
        for (idx, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = vec![0u32; nvars];
            if idx == 0 {
            } else if idx <= self.n {
                m[idx - 1] = 1;
            } else {
                for j in 0..self.n {
                    for k in j..self.n {
                        if self.pair(j, k) == idx {
                            m[j] += 1;
                            m[k] += 1;
                        }
                    }
                }
            }
            terms.push((m, c.clone()));
        }
        Poly::from_terms(nvars, o, terms)
    }
}

/// Incremental echelon form over dense rows.
struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<Q>) {
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(p) = v.iter().position(|x| !x.is_zero()) {
            let inv = Q::one() / &v[p];
            for x in v.iter_mut() {
                *x *= &inv;
            }
            for (_, r) in self.rows.iter_mut() {
                if !r[p].is_zero() {
                    let f = r[p].clone();
                    for (x, y) in r.iter_mut().zip(&v) {
                        *x -= &f * y;
                    }
                }
            }
            self.rows.push((p, v));
        }
    }
}

/// Equations θ̃² = I and θ̃[x, b] = [θ̃x, θ̃b] (x an ambient generator, b
/// any basis vector) on the family coordinates, plus the trace of θ̃.
#[derive(Clone, Debug)]
pub struct PolySystem {
    pub nvars: usize,
    pub equations: Vec<Poly>,
    /// tr θ̃ as an affine polynomial.
    pub trace: Poly,
    pub family: ThetaFamily,
}

impl PolySystem {
    pub fn build(model: &CompactModel, family: ThetaFamily) -> PolySystem {
        let n = family.directions.len();
        let d = model.dim();
        let qs = QuadSpace { n };
        let affine = |i: usize, j: usize| -> Vec<Q> {
            let mut v = vec![family.base[i][j].clone()];
            v.extend(family.directions.iter().map(|b| b[i][j].clone()));
            v
        };
        let theta: Vec<Vec<Vec<Q>>> = (0..d).map(|i| (0..d).map(|j| affine(i, j)).collect()).collect();
        let nonzero = |a: &[Q]| a.iter().any(|x| !x.is_zero());
        let mut ech = Echelon { rows: vec![] };
        let one = Q::one();
        // θ̃² = I
        for i in 0..d {
            for j in 0..d {
                let mut v = vec![Q::zero(); qs.len()];
                for k in 0..d {
                    qs.add_product(&mut v, &theta[i][k], &theta[k][j], &one);
                }
                if i == j {
                    v[0] -= Q::one();
                }
                ech.insert(v);
            }
        }
        // automorphism on generators X_{α_i}, Y_{α_i}
        let rs = model.alg.root_system();
        let npos = rs.num_positive();
        let gens: Vec<usize> = (0..rs.rank()).chain((0..rs.rank()).map(|i| npos + i)).collect();
        let mut unit = vec![Q::zero(); n + 1];
        unit[0] = Q::one();
        for &x in &gens {
            let col_x: Vec<usize> = (0..d).filter(|&p| nonzero(&theta[p][x])).collect();
            for b in 0..d {
                let mut acc = vec![vec![Q::zero(); qs.len()]; d];
                // θ̃[U_x, U_b]
                for (k, w) in &model.structure[x][b] {
                    for i in 0..d {
                        qs.add_product(&mut acc[i], &theta[i][*k], &unit, w);
                    }
                }
                // − [θ̃U_x, θ̃U_b]
                let col_b: Vec<usize> = (0..d).filter(|&p| nonzero(&theta[p][b])).collect();
                for &p in &col_x {
                    for &qq in &col_b {
                        let st = &model.structure[p][qq];
                        if st.is_empty() {
                            continue;
                        }
                        let mut prod = vec![Q::zero(); qs.len()];
                        qs.add_product(&mut prod, &theta[p][x], &theta[qq][b], &one);
                        for (k, s) in st {
                            for (a, c) in acc[*k].iter_mut().zip(&prod) {
                                if !c.is_zero() {
                                    *a -= c * s;
                                }
                            }
                        }
                    }
                }
                for v in acc {
                    if v.iter().any(|c| !c.is_zero()) {
                        ech.insert(v);
                    }
                }
            }
        }
        let equations = ech.rows.iter().map(|(_, v)| qs.to_poly(v, n)).collect();
        let mut tr = vec![Q::zero(); qs.len()];
        for i in 0..d {
            qs.add_product(&mut tr, &theta[i][i], &unit, &one);
        }
        PolySystem { nvars: n, equations, trace: qs.to_poly(&tr, n), family }
    }

    /// θ̃ at a rational point.
    pub fn theta_at(&self, point: &[Q]) -> Matrix {
        let mut m = self.family.base.clone();
        for (t, b) in point.iter().zip(&self.family.directions) {
            for (row, brow) in m.iter_mut().zip(b) {
                for (x, y) in row.iter_mut().zip(brow) {
                    *x += t * y;
                }
            }
        }
        m
    }
}

// ------------------------------------------------------------- solving

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SOptions {
    pub seed: u64,
    /// Attempts at slicing a positive-dimensional fibre.
    pub max_slices: usize,
    pub gb_budget: usize,
}

impl Default for SOptions {
    fn default() -> Self {
        SOptions { seed: 0x5eed, max_slices: 12, gb_budget: 20_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceComponent {
    pub trace: i64,
    pub dimension: usize,
    /// Ambient label when a real witness was found.
    pub label: Option<String>,
    /// The witness needed √d, d as a rational string.
    pub extension: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SReport {
    pub sub_form: String,
    pub a_space_dim: usize,
    pub family_dim: usize,
    pub labels: Vec<String>,
    pub components: Vec<TraceComponent>,
    pub undetermined_components: usize,
}

fn int_of(x: &Q) -> Option<i64> {
    x.is_integer().then(|| x.to_integer().to_i64()).flatten()
}

/// Ambient real forms g̃ ⊃ ε(g) for one real form g of the subalgebra.
pub fn s_real_forms(model: &CompactModel, emb: &EmbeddingData, form: &SubRealForm, opts: &SOptions) -> Result<SReport> {
    let a_dim = compute_a_space(model, emb, form)?.dim();
    let ambient_type = model.alg.root_system().simple_type();
    let mut report = SReport {
        sub_form: form.label.clone(),
        a_space_dim: a_dim,
        family_dim: 0,
        labels: vec![],
        components: vec![],
        undetermined_components: 0,
    };
    let Some(family) = theta_family(model, emb, form)? else {
        return Ok(report);
    };
    report.family_dim = family.directions.len();
    let sys = PolySystem::build(model, family);
    let n = sys.nvars;
    // eliminant of the trace: append T as the last (smallest) lex variable
    let o = MonomialOrder::Lex;
    let lift = |p: &Poly| -> Poly {
        Poly::from_terms(n + 1, o, p.terms().iter().map(|(m, c)| (m.iter().copied().chain([0]).collect(), c.clone())).collect())
    };
    let mut with_t: Vec<Poly> = sys.equations.iter().map(lift).collect();
    with_t.push(Poly::var(n + 1, o, n).sub(&lift(&sys.trace)));
    let gb = groebner_basis(&with_t, o, opts.gb_budget)?;
    if is_unit_ideal(&gb) {
        return Ok(report);
    }
    let elim: Vec<&Poly> = gb.iter().filter(|p| p.support().iter().all(|&v| v == n)).collect();
    let Some(eliminant) = elim.first() else {
        report.undetermined_components += 1;
        return Ok(report);
    };
    let mut coeffs = vec![Q::zero(); eliminant.total_degree() as usize + 1];
    for (m, c) in eliminant.terms() {
        coeffs[m[n] as usize] = c.clone();
    }
    let (rat, quad) = real_roots(&coeffs);
    report.undetermined_components += quad.len();
    let mut labels = BTreeSet::new();
    for r in rat {
        let Some(trace) = int_of(&r) else {
            report.undetermined_components += 1;
            continue;
        };
        let mut fibre: Vec<Poly> = sys.equations.clone();
        fibre.push(sys.trace.sub(&Poly::constant(n, MonomialOrder::DegRevLex, r.clone())));
        let (dim, witness) = find_real_point(&fibre, n, opts, trace)?;
        let mut comp = TraceComponent { trace, dimension: dim, label: None, extension: None };
        match witness {
            Some(pt) => {
                comp.extension = pt.iter().find(|x| !x.is_rational()).map(|x| fmt_q(&x.d));
                let label = label_for_character(ambient_type, -trace)
                    .ok_or(Error::NoCensusMatch { k_type: "ambient".into(), character: -trace })?;
                labels.insert(label.clone());
                comp.label = Some(label);
            }
            None => report.undetermined_components += 1,
        }
        report.components.push(comp);
    }
    report.labels = labels.into_iter().collect();
    Ok(report)
}

/// A real point on the variety, slicing away free directions with seeded
/// random rational values. Returns (dimension, point).
fn find_real_point(fibre: &[Poly], n: usize, opts: &SOptions, salt: i64) -> Result<(usize, Option<Vec<QuadNum>>)> {
    if n == 0 {
        let ok = fibre.iter().all(|p| p.is_zero());
        return Ok((0, ok.then(Vec::new)));
    }
    let gb = groebner_basis(fibre, MonomialOrder::DegRevLex, opts.gb_budget)?;
    let Some(dim) = dimension(&gb, n) else {
        return Ok((0, None));
    };
    let free = independent_set(&gb, n);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (salt as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    for attempt in 0..opts.max_slices.max(1) {
        let values: Vec<Q> = free
            .iter()
            .map(|_| if attempt == 0 { Q::zero() } else { Q::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=6).into()) })
            .collect();
        let mut sliced: Vec<Poly> = fibre.to_vec();
        for (&v, x) in free.iter().zip(&values) {
            sliced.push(Poly::var(n, MonomialOrder::DegRevLex, v).sub(&Poly::constant(n, MonomialOrder::DegRevLex, x.clone())));
        }
        if let Some(sol) = solve_zero_dim(&sliced, opts.gb_budget)? {
            if let Some(p) = sol.points.into_iter().next() {
                return Ok((dim, Some(p)));
            }
        }
        if free.is_empty() {
            break;
        }
    }
    Ok((dim, None))
}

/// Everything needed to query one embedding.
pub struct SProblem {
    pub embedding: NormalizedEmbedding,
    pub model: CompactModel,
}

impl SProblem {
    pub fn new(emb: &EmbeddingData) -> Result<SProblem> {
        let alg = ChevalleyAlgebra::new(&emb.ambient()?);
        let normalized = normalize_embedding(emb, &alg)?;
        let model = CompactModel::new(&alg, normalized.c.clone());
        Ok(SProblem { embedding: normalized, model })
    }

    pub fn run(&self, form: &SubRealForm, opts: &SOptions) -> Result<SReport> {
        s_real_forms(&self.model, &self.embedding.data, form, opts)
    }

    /// Every subalgebra real form, with the ambient forms that contain it.
    pub fn run_all(&self, opts: &SOptions) -> Result<Vec<SReport>> {
        sub_real_forms(&self.embedding.data.sub_label()?)?.iter().map(|f| self.run(f, opts)).collect()
    }
}

/// Search sign patterns for e-images supported on the given positive roots
/// (coefficients ±1), returning the first valid, normalizable embedding.
pub fn search_embedding(name: &str, sub_type: &str, ambient: &str, supports: &[Vec<usize>]) -> Result<EmbeddingData> {
    let alg = ChevalleyAlgebra::new(&RootSystem::parse(ambient)?);
    let total: usize = supports.iter().map(|s| s.len()).sum();
    for bits in 0u64..(1 << total) {
        let mut k = 0;
        let mut e = Vec::new();
        for s in supports {
            let mut v = alg.zero();
            for &a in s {
                v.coefficients[a] = if (bits >> k) & 1 == 1 { -Q::one() } else { Q::one() };
                k += 1;
            }
            e.push(v);
        }
        if let Ok(data) = EmbeddingData::from_e_images(name, sub_type, &alg, &e) {
            if normalize_embedding(&data, &alg).is_ok() {
                return Ok(data);
            }
        }
    }
    Err(Error::NotHomomorphism(format!("no sign pattern embeds {sub_type} into {ambient}")))
}
