//! Regular subalgebras of complex simple Lie algebras: maximal semisimple
//! ones from the extended diagram, maximal reductive non-semisimple ones,
//! and the full regular semisimple enumeration up to W-conjugacy.

use crate::error::{Error, Partial, Result};
use crate::linalg::Q;
use crate::rootsys::{classify_cartan, RootSystem, SimpleType, TypeLabel};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    GAlpha,
    GAlphaPrime,
    DynkinRegular,
    SSubalgebra,
}

fn label_str<S: Serializer>(t: &TypeLabel, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&t.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubalgebraDescriptor {
    /// Sorted root indices of the ambient root system.
    pub psi: Vec<usize>,
    pub toral_rank: usize,
    #[serde(serialize_with = "label_str")]
    pub type_label: TypeLabel,
    pub origin: Origin,
    /// Extended-diagram node that was deleted, when applicable.
    pub node: Option<usize>,
}

impl SubalgebraDescriptor {
    pub fn psi_vectors<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Vec<i32>> + 'a {
        self.psi.iter().map(move |&a| rs.root(a))
    }

    pub fn dim(&self, rs: &RootSystem) -> usize {
        self.psi.len() + rs.rank()
    }
}

#[derive(Clone, Debug)]
pub struct MaximalSet {
    pub items: Vec<SubalgebraDescriptor>,
    pub ambient: RootSystem,
}

impl MaximalSet {
    pub fn labels(&self) -> Vec<String> {
        self.items.iter().map(|d| d.type_label.to_string()).collect()
    }
}

pub fn is_prime(n: i32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Simple roots of a closed symmetric root set: the positive elements that
/// are not sums of two positive elements of the set.
pub fn simple_roots_of(rs: &RootSystem, psi: &[usize]) -> Vec<usize> {
    let set: HashSet<usize> = psi.iter().copied().collect();
    let pos: Vec<usize> = psi.iter().copied().filter(|&a| rs.is_positive(a)).collect();
    pos.iter()
        .copied()
        .filter(|&g| {
            !pos.iter().any(|&a| {
                let v: Vec<i32> = rs.root(g).iter().zip(rs.root(a)).map(|(x, y)| x - y).collect();
                rs.index_of(&v).is_some_and(|b| rs.is_positive(b) && set.contains(&b))
            })
        })
        .collect()
}

/// Irreducible components of a root subsystem (roots linked by
/// non-orthogonality), each sorted.
pub fn components(rs: &RootSystem, psi: &[usize]) -> Vec<Vec<usize>> {
    let mut seen: HashSet<usize> = HashSet::new();
    let mut out = Vec::new();
    for &s in psi {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for &b in psi {
                if !seen.contains(&b) && rs.ip_roots_scaled(a, b) != 0 {
                    seen.insert(b);
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out.sort();
    out
}

/// Type of a closed symmetric root subset.
pub fn classify_subsystem(psi: &[usize], rs: &RootSystem) -> Result<TypeLabel> {
    if !rs.is_symmetric(psi) {
        return Err(Error::NotSymmetric);
    }
    if let Some((a, b)) = rs.closure_violation(psi) {
        return Err(Error::NotClosed(format!("{:?} + {:?}", rs.root(a), rs.root(b))));
    }
    let simple = simple_roots_of(rs, psi);
    let c: Vec<Vec<i32>> = simple.iter().map(|&a| simple.iter().map(|&b| rs.cartan_int(a, b)).collect()).collect();
    Ok(TypeLabel::new(classify_cartan(&c), 0))
}

/// Type of a reduced root system given by rational vectors and a Gram
/// matrix for their coordinates. Positivity is lexicographic.
pub fn classify_vectors(vectors: &[Vec<Q>], gram: &[Vec<Q>]) -> Vec<SimpleType> {
    let ip = |a: &[Q], b: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..a.len() {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..b.len() {
                if !b[j].is_zero() {
                    s += &a[i] * &gram[i][j] * &b[j];
                }
            }
        }
        s
    };
    let positive = |v: &[Q]| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_positive());
    let set: HashSet<Vec<Q>> = vectors.iter().cloned().collect();
    let pos: Vec<&Vec<Q>> = vectors.iter().filter(|v| positive(v)).collect();
    let simple: Vec<&Vec<Q>> = pos
        .iter()
        .copied()
        .filter(|g| {
            !pos.iter().any(|a| {
                let d: Vec<Q> = g.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                positive(&d) && set.contains(&d)
            })
        })
        .collect();
    let two = Q::from_integer(2.into());
    let c: Vec<Vec<i32>> = simple
        .iter()
        .map(|a| {
            simple
                .iter()
                .map(|b| {
                    let v = &two * ip(a, b) / ip(b, b);
                    v.to_integer().try_into().unwrap()
                })
                .collect()
        })
        .collect();
    classify_cartan(&c)
}

/// One descriptor per extended-diagram node with prime mark; Ψ is generated
/// by the remaining extended nodes. Deduplicated up to W-conjugacy.
pub fn maximal_regular_semisimple(rs: &RootSystem) -> MaximalSet {
    let ext = rs.extended_nodes();
    let mut seen = HashSet::new();
    let mut items = Vec::new();
    for k in 0..rs.rank() {
        if !is_prime(rs.marks()[k]) {
            continue;
        }
        let gens: Vec<usize> = ext.iter().copied().filter(|&g| g != k).collect();
        let psi = rs.subsystem_generated(&gens);
        // A1: the leftover is the Cartan subalgebra alone, which the table omits
        if psi.is_empty() || !seen.insert(rs.canonical_psi(&psi)) {
            continue;
        }
        let type_label = classify_subsystem(&psi, rs).expect("extended-diagram subsystems are closed");
        items.push(SubalgebraDescriptor { psi, toral_rank: 0, type_label, origin: Origin::GAlpha, node: Some(k) });
    }
    MaximalSet { items, ambient: rs.clone() }
}

/// Nodes whose deletion from the extended diagram leaves the diagram of g
/// itself; each gives the Levi subsystem Δ∖{α} plus a one-dimensional centre.
pub fn maximal_reductive_nonsemisimple(rs: &RootSystem) -> MaximalSet {
    let ext = rs.extended_diagram();
    let own = rs.dynkin_diagram().type_label();
    let mut seen = HashSet::new();
    let mut items = Vec::new();
    for k in 0..rs.rank() {
        if ext.remove_node(k).type_label() != own {
            continue;
        }
        let gens: Vec<usize> = (0..rs.rank()).filter(|&g| g != k).collect();
        let psi = rs.subsystem_generated(&gens);
        // A1: the leftover is the Cartan subalgebra alone, which the table omits
        if psi.is_empty() || !seen.insert(rs.canonical_psi(&psi)) {
            continue;
        }
        let ss = classify_subsystem(&psi, rs).expect("Levi subsystems are closed");
        let type_label = TypeLabel::new(ss.components, 1);
        items.push(SubalgebraDescriptor { psi, toral_rank: 1, type_label, origin: Origin::GAlphaPrime, node: Some(k) });
    }
    MaximalSet { items, ambient: rs.clone() }
}

/// Highest root of an irreducible component (maximal height).
fn component_highest(rs: &RootSystem, comp: &[usize]) -> usize {
    *comp.iter().filter(|&&a| rs.is_positive(a)).max_by_key(|&&a| (rs.height(a), std::cmp::Reverse(a))).unwrap()
}

/// All regular semisimple subalgebras up to W-conjugacy, by iterating
/// node deletions on ordinary and extended diagrams of each component.
pub fn dynkin_regular_enumeration(
    rs: &RootSystem,
    max_results: usize,
) -> std::result::Result<Vec<SubalgebraDescriptor>, Partial<Vec<SubalgebraDescriptor>>> {
    let full: Vec<usize> = (0..rs.num_roots()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([rs.canonical_psi(&full)]);
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    found.insert(rs.canonical_psi(&full), full.clone());
    let mut queue = vec![full];
    let finish = |found: &BTreeMap<Vec<usize>, Vec<usize>>| {
        let mut v: Vec<SubalgebraDescriptor> = found
            .values()
            .map(|psi| SubalgebraDescriptor {
                psi: psi.clone(),
                toral_rank: 0,
                type_label: classify_subsystem(psi, rs).expect("closed"),
                origin: Origin::DynkinRegular,
                node: None,
            })
            .collect();
        v.sort_by(|a, b| {
            b.type_label.rank().cmp(&a.type_label.rank()).then(b.psi.len().cmp(&a.psi.len())).then(a.type_label.cmp(&b.type_label))
        });
        v
    };
    while let Some(psi) = queue.pop() {
        let comps = components(rs, &psi);
        let simple_all = simple_roots_of(rs, &psi);
        for comp in &comps {
            let cset: HashSet<usize> = comp.iter().copied().collect();
            let others: Vec<usize> = simple_all.iter().copied().filter(|a| !cset.contains(a)).collect();
            let simple_c: Vec<usize> = simple_all.iter().copied().filter(|a| cset.contains(a)).collect();
            let lowest = rs.neg(component_highest(rs, comp));
            let mut extended = simple_c.clone();
            extended.push(lowest);
            let mut candidates: Vec<Vec<usize>> = Vec::new();
            for &s in &simple_c {
                let mut g = others.clone();
                g.extend(simple_c.iter().copied().filter(|&x| x != s));
                candidates.push(g.clone());
                let mut g2 = others.clone();
                g2.extend(extended.iter().copied().filter(|&x| x != s));
                candidates.push(g2);
            }
            for gens in candidates {
                if gens.is_empty() {
                    continue;
                }
                let sub = rs.subsystem_generated(&gens);
                if sub.len() == psi.len() || rs.closure_violation(&sub).is_some() {
                    continue;
                }
                let key = rs.canonical_psi(&sub);
                if seen.insert(key.clone()) {
                    found.insert(key, sub.clone());
                    if found.len() > max_results {
                        return Err(Partial { found: finish(&found), reason: format!("more than {max_results} classes") });
                    }
                    queue.push(sub);
                }
            }
        }
    }
    Ok(finish(&found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Series;

    fn labels(set: &MaximalSet) -> Vec<String> {
        let mut v = set.labels();
        v.sort();
        v
    }

    #[test]
    fn g2_and_e8_maximal() {
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        assert_eq!(labels(&maximal_regular_semisimple(&g2)), vec!["A1+A1", "A2"]);
        let e8 = RootSystem::new(Series::E, 8).unwrap();
        assert!(labels(&maximal_regular_semisimple(&e8)).contains(&"A4+A4".to_string()));
        let a5 = RootSystem::new(Series::A, 5).unwrap();
        assert!(maximal_regular_semisimple(&a5).items.is_empty());
    }

    #[test]
    fn reductive_non_semisimple() {
        let e7 = RootSystem::new(Series::E, 7).unwrap();
        assert_eq!(labels(&maximal_reductive_nonsemisimple(&e7)), vec!["E6+T1"]);
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        assert!(maximal_reductive_nonsemisimple(&g2).items.is_empty());
        let d4 = RootSystem::new(Series::D, 4).unwrap();
        let m = maximal_reductive_nonsemisimple(&d4);
        assert_eq!(m.items.len(), 3);
        assert!(m.labels().iter().all(|l| l == "A3+T1"));
        let a1 = RootSystem::new(Series::A, 1).unwrap();
        assert!(maximal_reductive_nonsemisimple(&a1).items.is_empty());
    }

    #[test]
    fn classify_examples() {
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        let long: Vec<usize> = (0..g2.num_roots()).filter(|&a| g2.is_long(a)).collect();
        assert_eq!(classify_subsystem(&long, &g2).unwrap().to_string(), "A2");
        let b2 = RootSystem::new(Series::B, 2).unwrap();
        let long: Vec<usize> = (0..b2.num_roots()).filter(|&a| b2.is_long(a)).collect();
        assert_eq!(classify_subsystem(&long, &b2).unwrap().to_string(), "A1+A1");
        let short: Vec<usize> = (0..b2.num_roots()).filter(|&a| !b2.is_long(a)).collect();
        assert!(matches!(classify_subsystem(&short, &b2), Err(Error::NotClosed(_))));
        let all: Vec<usize> = (0..b2.num_roots()).collect();
        assert_eq!(classify_subsystem(&all, &b2).unwrap().to_string(), "B2");
    }

    #[test]
    fn dynkin_enumeration_small() {
        let a1 = RootSystem::new(Series::A, 1).unwrap();
        let v = dynkin_regular_enumeration(&a1, 100).unwrap();
        assert_eq!(v.len(), 1);
        let b2 = RootSystem::new(Series::B, 2).unwrap();
        let v = dynkin_regular_enumeration(&b2, 100).unwrap();
        let mut l: Vec<String> = v.iter().map(|d| d.type_label.to_string()).collect();
        l.sort();
        assert_eq!(l, vec!["A1", "A1", "A1+A1", "B2"]);
        let g2 = RootSystem::new(Series::G, 2).unwrap();
        let l: Vec<String> = dynkin_regular_enumeration(&g2, 100).unwrap().iter().map(|d| d.type_label.to_string()).collect();
        assert!(l.contains(&"A2".to_string()) && l.contains(&"A1+A1".to_string()));
    }

    #[test]
    fn budget_returns_partial() {
        let e6 = RootSystem::new(Series::E, 6).unwrap();
        let err = dynkin_regular_enumeration(&e6, 3).unwrap_err();
        assert!(err.found.len() >= 3);
    }
}
