//! Real forms as Cartan involutions θ commuting with a fixed compact
//! conjugation τ; σ = θτ is the conjugation defining the real form.

pub mod label;

pub use label::{complex_label, forms_of, label_for_character, RealLabel};

use crate::chevalley::{apply, column, from_columns, identity, AlgebraElement, ChevalleyAlgebra, Matrix};
use crate::complexsub::{classify_subsystem, classify_vectors};
use crate::error::{Error, Result};
use crate::linalg::{kernel, mat_mul, q, signature, Q};
use crate::rootsys::{RootSystem, Series, SimpleType, TypeLabel};
use num_traits::{One, Zero};
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Linear,
    /// The stored matrix is composed with coefficient conjugation.
    Antilinear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    pub matrix: Matrix,
    pub kind: Kind,
}

impl Involution {
    pub fn identity(dim: usize) -> Self {
        Involution { matrix: identity(dim), kind: Kind::Linear }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    /// Composition self ∘ other. Rational matrices commute with conjugation,
    /// so the product matrix is exact for either kind.
    pub fn compose(&self, other: &Involution) -> Involution {
        let kind = if self.kind == other.kind { Kind::Linear } else { Kind::Antilinear };
        Involution { matrix: mat_mul(&self.matrix, &other.matrix), kind }
    }

    pub fn is_involutive(&self) -> bool {
        mat_mul(&self.matrix, &self.matrix) == identity(self.dim())
    }

    pub fn commutes_with(&self, other: &Involution) -> bool {
        mat_mul(&self.matrix, &other.matrix) == mat_mul(&other.matrix, &self.matrix)
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        apply(&self.matrix, x)
    }

    pub fn trace(&self) -> Q {
        (0..self.dim()).map(|i| self.matrix[i][i].clone()).sum()
    }

    pub fn is_automorphism(&self, alg: &ChevalleyAlgebra) -> bool {
        let d = alg.dim();
        let img: Vec<AlgebraElement> = (0..d).map(|j| column(&self.matrix, j)).collect();
        alg.homomorphism_defect(alg, &img).is_none()
    }

    /// Root permutation and signs when θ maps each root vector to ± another
    /// root vector; None otherwise.
    pub fn root_action(&self, alg: &ChevalleyAlgebra) -> Option<(Vec<usize>, Vec<i32>)> {
        let m = alg.num_roots();
        let mut perm = vec![0; m];
        let mut signs = vec![0; m];
        for a in 0..m {
            let col: Vec<(usize, &Q)> = self.matrix.iter().enumerate().map(|(i, r)| (i, &r[a])).filter(|(_, v)| !v.is_zero()).collect();
            if col.len() != 1 || col[0].0 >= m {
                return None;
            }
            let v = col[0].1;
            if *v == Q::one() {
                signs[a] = 1;
            } else if *v == -Q::one() {
                signs[a] = -1;
            } else {
                return None;
            }
            perm[a] = col[0].0;
        }
        Some((perm, signs))
    }
}

/// τ: e_α ↦ −f_α, f_α ↦ −e_α, h ↦ −h, antilinear.
pub fn compact_conjugation(alg: &ChevalleyAlgebra) -> Involution {
    let rs = alg.root_system();
    let d = alg.dim();
    let mut m = vec![vec![Q::zero(); d]; d];
    for a in 0..rs.num_roots() {
        m[rs.neg(a)][a] = -Q::one();
    }
    for k in 0..rs.rank() {
        let h = alg.h_index(k);
        m[h][h] = -Q::one();
    }
    Involution { matrix: m, kind: Kind::Antilinear }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaKind {
    /// θ = (−1)^{α(λ)} on root vectors, identity on h.
    Inner { lambda: Vec<u8> },
    /// Diagram automorphism with signs on the generators.
    Outer { perm: Vec<usize>, signs: Vec<i8> },
}

#[derive(Clone, Debug)]
pub struct RealFormSpec {
    pub label: String,
    pub ty: SimpleType,
    pub theta: Involution,
    pub character: i64,
    pub k_type: TypeLabel,
    pub kind: ThetaKind,
}

impl RealFormSpec {
    pub fn sigma(&self, tau: &Involution) -> Involution {
        self.theta.compose(tau)
    }

    pub fn dim_k(&self) -> usize {
        ((self.ty.dim() as i64 - self.character) / 2) as usize
    }

    pub fn is_compact(&self) -> bool {
        self.character == -(self.ty.dim() as i64)
    }
}

fn inner_theta(alg: &ChevalleyAlgebra, lambda: &[u8]) -> (Matrix, i64, TypeLabel) {
    let rs = alg.root_system();
    let d = alg.dim();
    let mut m = identity(d);
    let mut even = Vec::new();
    let mut trace = rs.rank() as i64;
    for a in 0..rs.num_roots() {
        let par: i32 = rs.root(a).iter().zip(lambda).map(|(c, &l)| c * l as i32).sum();
        if par.rem_euclid(2) == 1 {
            m[a][a] = -Q::one();
            trace -= 1;
        } else {
            even.push(a);
            trace += 1;
        }
    }
    let ss = classify_subsystem(&even, rs).expect("parity subsystems are closed");
    let torus = rs.rank() - ss.rank();
    (m, -trace, TypeLabel::new(ss.components, torus))
}

/// Order-two diagram automorphism of the Dynkin diagram, if any.
pub fn diagram_involution(rs: &RootSystem) -> Option<Vec<usize>> {
    let n = rs.rank();
    match rs.series() {
        Series::A if n >= 2 => Some((0..n).map(|i| n - 1 - i).collect()),
        Series::D => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Some(p)
        }
        Series::E if n == 6 => Some(vec![5, 1, 4, 3, 2, 0]),
        _ => None,
    }
}

/// θ extended from e_i ↦ s_i e_{π(i)}, f_i ↦ s_i f_{π(i)}.
pub fn outer_theta(alg: &ChevalleyAlgebra, perm: &[usize], signs: &[i8]) -> Matrix {
    let rs = alg.root_system();
    let e: Vec<AlgebraElement> = (0..rs.rank()).map(|i| alg.e(perm[i]).scale(&q(signs[i] as i64))).collect();
    let f: Vec<AlgebraElement> = (0..rs.rank()).map(|i| alg.f(perm[i]).scale(&q(signs[i] as i64))).collect();
    from_columns(&alg.extend_generators(alg, &e, &f))
}

/// Type of k = g^θ for θ preserving h and the positive roots: the roots of
/// k relative to h^θ are the restrictions (α + θα)/2 of complex roots and
/// the θ-fixed roots whose root vectors are fixed.
pub fn fundamental_k_type(alg: &ChevalleyAlgebra, theta: &Involution) -> Option<TypeLabel> {
    let rs = alg.root_system();
    let (perm, signs) = theta.root_action(alg)?;
    let n = rs.rank();
    let mut vecs: BTreeSet<Vec<Q>> = BTreeSet::new();
    for a in 0..rs.num_roots() {
        if rs.is_positive(a) != rs.is_positive(perm[a]) {
            return None;
        }
        let v: Vec<Q> = if perm[a] == a {
            if signs[a] != 1 {
                continue;
            }
            rs.root(a).iter().map(|&c| q(c as i64)).collect()
        } else {
            rs.root(a).iter().zip(rs.root(perm[a])).map(|(&x, &y)| Q::new((x + y).into(), 2.into())).collect()
        };
        vecs.insert(v);
    }
    // dim h^θ
    let hpart: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| theta.matrix[alg.h_index(i)][alg.h_index(j)].clone()).collect()).collect();
    let fixed = {
        let shifted: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| &hpart[i][j] - if i == j { Q::one() } else { Q::zero() }).collect()).collect();
        kernel(&shifted, n).len()
    };
    let vecs: Vec<Vec<Q>> = vecs.into_iter().collect();
    let comps = classify_vectors(&vecs, &rs.inner_product_matrix());
    let r: usize = comps.iter().map(|c| c.rank).sum();
    Some(TypeLabel::new(comps, fixed - r))
}

/// One spec per isomorphism class of real form, deduplicated by
/// (k_type, character); sorted by character.
pub fn enumerate_real_forms(alg: &ChevalleyAlgebra) -> Vec<RealFormSpec> {
    let rs = alg.root_system();
    let n = rs.rank();
    let ty = rs.simple_type();
    let mut seen: HashSet<(TypeLabel, i64)> = HashSet::new();
    let mut out = Vec::new();
    let mut add = |theta: Matrix, character: i64, k_type: TypeLabel, kind: ThetaKind, out: &mut Vec<RealFormSpec>| {
        if !seen.insert((k_type.clone(), character)) {
            return;
        }
        let label = label_for_character(ty, character).unwrap_or_else(|| format!("{ty}[{character}]"));
        out.push(RealFormSpec { label, ty, theta: Involution { matrix: theta, kind: Kind::Linear }, character, k_type, kind });
    };
    for bits in 0..(1u32 << n) {
        let lambda: Vec<u8> = (0..n).map(|i| ((bits >> i) & 1) as u8).collect();
        let (m, ch, k) = inner_theta(alg, &lambda);
        add(m, ch, k, ThetaKind::Inner { lambda }, &mut out);
    }
    if let Some(perm) = diagram_involution(rs) {
        let orbits: Vec<usize> = (0..n).filter(|&i| perm[i] >= i).collect();
        for bits in 0..(1u32 << orbits.len()) {
            let mut signs = vec![1i8; n];
            for (k, &i) in orbits.iter().enumerate() {
                let s = if (bits >> k) & 1 == 1 { -1 } else { 1 };
                signs[i] = s;
                signs[perm[i]] = s;
            }
            let m = outer_theta(alg, &perm, &signs);
            let theta = Involution { matrix: m, kind: Kind::Linear };
            let ch = -theta.trace().to_integer().to_string().parse::<i64>().unwrap();
            let k = fundamental_k_type(alg, &theta).expect("diagram involutions preserve positivity");
            add(theta.matrix, ch, k, ThetaKind::Outer { perm: perm.clone(), signs }, &mut out);
        }
    }
    out.sort_by_key(|s| s.character);
    out
}

/// Name the real form determined by a linear involutive automorphism θ
/// commuting with τ: its character −tr θ picks the census entry.
pub fn identify_real_form(theta: &Involution, alg: &ChevalleyAlgebra) -> Result<String> {
    let tr = theta.trace();
    let ty = alg.root_system().simple_type();
    let character: i64 = (-tr).to_integer().to_string().parse().unwrap_or(i64::MAX);
    let k_type = fundamental_k_type(alg, theta).map(|k| k.to_string()).unwrap_or_else(|| "?".into());
    label_for_character(ty, character).ok_or(Error::NoCensusMatch { k_type, character })
}

/// (positive, negative) inertia of the Killing form on the real form
/// g = {x : σx = x}, σ = θτ.
pub fn killing_signature(alg: &ChevalleyAlgebra, theta: &Involution) -> (usize, usize) {
    let tau = compact_conjugation(alg);
    let s = mat_mul(&theta.matrix, &tau.matrix);
    let d = alg.dim();
    let shifted = |sign: i64| -> Vec<Vec<Q>> {
        (0..d).map(|i| (0..d).map(|j| &s[i][j] - if i == j { q(sign) } else { Q::zero() }).collect()).collect()
    };
    // g = E+ ⊕ i E−
    let plus = kernel(&shifted(1), d);
    let minus = kernel(&shifted(-1), d);
    let k = alg.killing_matrix();
    let form = |a: &[Q], b: &[Q]| -> Q {
        let mut t = Q::zero();
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if !k[i][j].is_zero() && !b[j].is_zero() {
                    t += &a[i] * &k[i][j] * &b[j];
                }
            }
        }
        t
    };
    let basis: Vec<(&Vec<Q>, i64)> = plus.iter().map(|v| (v, 1)).chain(minus.iter().map(|v| (v, -1))).collect();
    let gram: Vec<Vec<Q>> = basis
        .iter()
        .map(|(a, sa)| {
            basis
                .iter()
                .map(|(b, sb)| if sa != sb { Q::zero() } else { form(a, b) * q(*sa) })
                .collect()
        })
        .collect();
    let (p, n, _) = signature(&gram);
    (p, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn census(s: Series, r: usize) -> Vec<RealFormSpec> {
        enumerate_real_forms(&ChevalleyAlgebra::from_type(s, r).unwrap())
    }

    #[test]
    fn census_counts() {
        let labels = |v: &[RealFormSpec]| v.iter().map(|f| f.label.clone()).collect::<Vec<_>>();
        let a1 = census(Series::A, 1);
        assert_eq!(labels(&a1), vec!["su(2)", "sl(2,R)"]);
        assert_eq!(a1[0].character, -3);
        assert_eq!(a1[1].character, 1);
        assert_eq!(census(Series::A, 2).len(), 3);
        assert_eq!(labels(&census(Series::G, 2)), vec!["G2c", "G2(2)"]);
        assert_eq!(census(Series::F, 4).len(), 3);
        assert_eq!(census(Series::E, 6).len(), 5);
        assert_eq!(census(Series::D, 4).len(), 5);
    }

    #[test]
    fn k_types_agree_with_catalogue() {
        for t in crate::rootsys::all_types(6) {
            let alg = ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap());
            for f in enumerate_real_forms(&alg) {
                let data = forms_of(t).into_iter().find(|d| d.label == f.label).unwrap();
                assert_eq!(f.k_type, TypeLabel::new(data.k_type.clone(), data.k_torus), "{t} {}", f.label);
            }
        }
    }

    #[test]
    fn compact_form_is_negative_definite() {
        let alg = ChevalleyAlgebra::from_type(Series::G, 2).unwrap();
        let id = Involution::identity(alg.dim());
        assert_eq!(killing_signature(&alg, &id), (0, 14));
        let tau = compact_conjugation(&alg);
        assert!(tau.is_involutive());
    }

    #[test]
    fn identify() {
        let alg = ChevalleyAlgebra::from_type(Series::A, 3).unwrap();
        assert_eq!(identify_real_form(&Involution::identity(alg.dim()), &alg).unwrap(), "su(4)");
        let forms = enumerate_real_forms(&alg);
        let h = forms.iter().find(|f| f.k_type.to_string() == "B2").unwrap();
        assert_eq!(identify_real_form(&h.theta, &alg).unwrap(), "sl(2,H)");
    }
}
