//! Regular real subalgebras of a real form: θ-stable Cartan classes built by
//! Cayley transforms, real Weyl groups, and double cosets W(g,h)\W/S.
//!
//! Everything is combinatorial. A Cartan class is recorded by the action of θ
//! on the roots together with the compact/noncompact grading of the
//! imaginary roots. W(g,h) is the real Weyl group of the identity component
//! of the real group. It is generated by reflections in real roots and in
//! compact imaginary roots, by the elements coming from complex pairs, and
//! by the θ-commuting Weyl elements that keep the imaginary and real positive
//! systems and the grading. Elements are then pushed along Cayley edges.

use crate::complexsub::{classify_subsystem, components, SubalgebraDescriptor};
use crate::error::{Error, Partial, Result};
use crate::linalg::{q, rank, Q};
use crate::realform::{complex_label, label_for_character, RealFormSpec, RealLabel};
use crate::rootsys::{compose, invert, RootSystem, WeylGroup};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

/// Imaginary-root grading values.
const NOT_IMAGINARY: u8 = 0;
const COMPACT: u8 = 1;
const NONCOMPACT: u8 = 2;

#[derive(Clone, Debug, Serialize)]
pub struct CartanClass {
    pub id: usize,
    pub compact_dim: usize,
    pub noncompact_dim: usize,
    /// θ on h* as a permutation of root indices.
    pub theta: Vec<u16>,
    pub imaginary: Vec<usize>,
    pub real: Vec<usize>,
    pub complex: Vec<usize>,
    pub noncompact_imaginary: Vec<usize>,
    /// Noncompact imaginary roots used, in order, starting from the
    /// maximally compact class.
    pub cayley_path: Vec<usize>,
    #[serde(skip)]
    grading: Vec<u8>,
}

impl CartanClass {
    fn build(rs: &RootSystem, theta: Vec<u16>, grading: Vec<u8>, cayley_path: Vec<usize>) -> CartanClass {
        let m = rs.num_roots();
        let imaginary: Vec<usize> = (0..m).filter(|&a| theta[a] as usize == a).collect();
        let real: Vec<usize> = (0..m).filter(|&a| theta[a] as usize == rs.neg(a)).collect();
        let complex: Vec<usize> = (0..m).filter(|&a| theta[a] as usize != a && theta[a] as usize != rs.neg(a)).collect();
        let noncompact_imaginary = imaginary.iter().copied().filter(|&a| grading[a] == NONCOMPACT).collect();
        let simple: Vec<usize> = (0..rs.rank()).collect();
        let compact_dim = fixed_dim(rs, &theta, &simple);
        CartanClass {
            id: 0,
            compact_dim,
            noncompact_dim: rs.rank() - compact_dim,
            theta,
            imaginary,
            real,
            complex,
            noncompact_imaginary,
            cayley_path,
            grading,
        }
    }

    pub fn is_noncompact(&self, a: usize) -> bool {
        self.grading[a] == NONCOMPACT
    }

    pub fn is_compact_imaginary(&self, a: usize) -> bool {
        self.grading[a] == COMPACT
    }

    /// Canonical key of the W-conjugacy class of (θ, grading), with an
    /// element g realizing it.
    fn key_with_element(&self, w: &WeylGroup) -> ((Vec<u16>, Vec<u8>), Vec<u16>) {
        w.elements
            .iter()
            .map(|g| {
                let gi = invert(g);
                let t = compose(g, &compose(&self.theta, &gi));
                let gr: Vec<u8> = (0..gi.len()).map(|a| self.grading[gi[a] as usize]).collect();
                ((t, gr), g.clone())
            })
            .min()
            .unwrap()
    }
}

/// Dimension of the θ-fixed part of the span of the given roots.
fn fixed_dim(rs: &RootSystem, theta: &[u16], roots: &[usize]) -> usize {
    let rows: Vec<Vec<Q>> = roots
        .iter()
        .map(|&a| rs.root(a).iter().zip(rs.root(theta[a] as usize)).map(|(x, y)| q((x + y) as i64)).collect())
        .collect();
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

/// θ on roots and the grading for the maximally compact Cartan h, read off
/// the census involution (which preserves h and the positive roots).
fn fundamental(form: &RealFormSpec, rs: &RootSystem) -> (Vec<u16>, Vec<u8>) {
    let m = rs.num_roots();
    let mut theta = vec![0u16; m];
    let mut grading = vec![NOT_IMAGINARY; m];
    for a in 0..m {
        let col: Vec<(usize, &Q)> =
            (0..m).map(|i| (i, &form.theta.matrix[i][a])).filter(|(_, v)| !num_traits::Zero::is_zero(*v)).collect();
        assert_eq!(col.len(), 1, "census involutions are monomial on root vectors");
        theta[a] = col[0].0 as u16;
        if col[0].0 == a {
            grading[a] = if *col[0].1 > q(0) { COMPACT } else { NONCOMPACT };
        }
    }
    (theta, grading)
}

fn reflection(rs: &RootSystem, beta: usize) -> Vec<u16> {
    (0..rs.num_roots()).map(|g| rs.reflect(beta, g) as u16).collect()
}

/// A Cayley transform through `beta` from class `from`, landing on class
/// `to` after conjugating by `conj`.
#[derive(Clone, Debug)]
pub struct CayleyEdge {
    pub from: usize,
    pub beta: usize,
    pub to: usize,
    pub conj: Vec<u16>,
}

/// All θ-stable Cartan classes of the real form, deduplicated up to
/// W-conjugacy of (θ, grading), ordered by noncompact dimension.
pub fn cartan_classes(form: &RealFormSpec, rs: &RootSystem, w: &WeylGroup) -> Vec<CartanClass> {
    cartan_classes_with_edges(form, rs, w).0
}

pub fn cartan_classes_with_edges(form: &RealFormSpec, rs: &RootSystem, w: &WeylGroup) -> (Vec<CartanClass>, Vec<CayleyEdge>) {
    let (theta, grading) = fundamental(form, rs);
    let start = CartanClass::build(rs, theta, grading, vec![]);
    let (k0, g0) = start.key_with_element(w);
    let mut seen: HashMap<(Vec<u16>, Vec<u8>), (usize, Vec<u16>)> = HashMap::from([(k0, (0, g0))]);
    let mut out = vec![start];
    let mut edges = Vec::new();
    let mut next_idx = 0;
    while next_idx < out.len() {
        let c = out[next_idx].clone();
        for &beta in &c.noncompact_imaginary {
            if !rs.is_positive(beta) {
                continue;
            }
            let t = compose(&reflection(rs, beta), &c.theta);
            let mut g = vec![NOT_IMAGINARY; rs.num_roots()];
            for &gamma in &c.imaginary {
                if t[gamma] as usize != gamma {
                    continue;
                }
                let flip = rs.sum(gamma, beta).is_some();
                g[gamma] = match (c.grading[gamma], flip) {
                    (COMPACT, false) | (NONCOMPACT, true) => COMPACT,
                    _ => NONCOMPACT,
                };
            }
            let mut path = c.cayley_path.clone();
            path.push(beta);
            let cand = CartanClass::build(rs, t, g, path);
            let (key, g1) = cand.key_with_element(w);
            let (to, conj) = match seen.get(&key) {
                // g1·cand·g1⁻¹ = g2·rep·g2⁻¹, so g2⁻¹g1 carries cand to rep
                Some((to, g2)) => (*to, compose(&invert(g2), &g1)),
                None => {
                    seen.insert(key, (out.len(), g1));
                    out.push(cand);
                    (out.len() - 1, (0..rs.num_roots() as u16).collect())
                }
            };
            edges.push(CayleyEdge { from: next_idx, beta, to, conj });
        }
        next_idx += 1;
    }
    let mut order: Vec<usize> = (0..out.len()).collect();
    order.sort_by_key(|&i| (out[i].noncompact_dim, out[i].cayley_path.clone()));
    let mut new_id = vec![0; out.len()];
    for (id, &i) in order.iter().enumerate() {
        new_id[i] = id;
    }
    let mut classes: Vec<CartanClass> = order.iter().map(|&i| out[i].clone()).collect();
    for (i, c) in classes.iter_mut().enumerate() {
        c.id = i;
    }
    for e in edges.iter_mut() {
        e.from = new_id[e.from];
        e.to = new_id[e.to];
    }
    (classes, edges)
}

/// Real Weyl groups of all classes. Besides the local generators of
/// `real_weyl_group`, an element fixing ±β survives a Cayley transform
/// through β (after a torus adjustment), so stabilizers are pushed along
/// the edges until nothing grows. The reverse direction is not used: there
/// the element may only be realized up to s_β.
pub fn real_weyl_groups(rs: &RootSystem, w: &WeylGroup, classes: &[CartanClass], edges: &[CayleyEdge]) -> Vec<RealWeylGroup> {
    let m = rs.num_roots();
    let mut groups: Vec<RealWeylGroup> = classes.iter().map(|c| real_weyl_group(rs, w, c)).collect();
    let fixes = |g: &[u16], beta: usize| {
        let b = g[beta] as usize;
        b == beta || b == rs.neg(beta)
    };
    loop {
        let mut grew = false;
        for e in edges {
            let hi = invert(&e.conj);
            // from → to, conjugated into the stored representative
            let fwd: Vec<Vec<u16>> = groups[e.from]
                .elements
                .iter()
                .filter(|g| fixes(g, e.beta))
                .map(|g| compose(&e.conj, &compose(g, &hi)))
                .collect();
            let have: HashSet<&Vec<u16>> = groups[e.to].elements.iter().collect();
            let extra: Vec<Vec<u16>> = fwd.into_iter().filter(|g| !have.contains(g)).collect();
            if !extra.is_empty() {
                let grp = &mut groups[e.to];
                grp.generators.extend(extra);
                grp.generators.sort();
                grp.generators.dedup();
                grp.elements = WeylGroup::generate(&grp.generators, m).elements;
                grew = true;
            }
        }
        if !grew {
            return groups;
        }
    }
}

#[derive(Clone, Debug)]
pub struct RealWeylGroup {
    pub cartan: usize,
    pub generators: Vec<Vec<u16>>,
    pub elements: Vec<Vec<u16>>,
}

impl RealWeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_closed(&self) -> bool {
        let set: HashSet<&Vec<u16>> = self.elements.iter().collect();
        self.elements.iter().all(|a| self.generators.iter().all(|g| set.contains(&compose(g, a))))
    }
}

pub fn real_weyl_group(rs: &RootSystem, w: &WeylGroup, c: &CartanClass) -> RealWeylGroup {
    let m = rs.num_roots();
    let mut gens: Vec<Vec<u16>> = Vec::new();
    for &a in c.real.iter().chain(c.imaginary.iter().filter(|&&a| c.is_compact_imaginary(a))) {
        if rs.is_positive(a) {
            gens.push(reflection(rs, a));
        }
    }
    // Complex pairs: α, θα span an sl(2,C) (orthogonal, no sum or
    // difference) or an sl(3,R) with imaginary α+θα. Either way the
    // connected group realizes the reflection of t in the restriction of α,
    // and fixes the rest of h.
    for &a in &c.complex {
        let ta = c.theta[a] as usize;
        let ip = rs.ip_roots_scaled(a, ta);
        match (rs.sum(a, ta), rs.sum(a, rs.neg(ta))) {
            (None, None) if ip == 0 => gens.push(compose(&reflection(rs, a), &reflection(rs, ta))),
            (Some(b), None) if ip < 0 => gens.push(reflection(rs, b)),
            _ => {}
        }
    }
    for g in &w.elements {
        let commutes = compose(g, &c.theta) == compose(&c.theta, g);
        if !commutes {
            continue;
        }
        let keeps = |set: &[usize]| set.iter().all(|&a| !rs.is_positive(a) || rs.is_positive(g[a] as usize));
        let graded = (0..m).all(|a| c.grading[g[a] as usize] == c.grading[a]);
        if keeps(&c.imaginary) && keeps(&c.real) && graded {
            gens.push(g.clone());
        }
    }
    gens.sort();
    gens.dedup();
    let elements = WeylGroup::generate(&gens, m).elements;
    RealWeylGroup { cartan: c.id, generators: gens, elements }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealEmbeddingRow {
    pub ambient_label: String,
    pub subalgebra_complex_type: String,
    pub real_sublabel: String,
    pub multiplicity: usize,
    pub flag: char,
}

/// Everything about a real form that does not depend on the target.
pub struct RealFormContext {
    pub form: RealFormSpec,
    pub rs: RootSystem,
    pub weyl: WeylGroup,
    pub classes: Vec<CartanClass>,
    pub real_weyl: Vec<RealWeylGroup>,
}

impl RealFormContext {
    /// Fails with a budget error when |W| exceeds `weyl_limit`.
    pub fn new(form: &RealFormSpec, rs: &RootSystem, weyl_limit: u128) -> Result<Self> {
        let weyl = WeylGroup::enumerate(rs, weyl_limit)?;
        let (classes, edges) = cartan_classes_with_edges(form, rs, &weyl);
        let real_weyl = real_weyl_groups(rs, &weyl, &classes, &edges);
        Ok(RealFormContext { form: form.clone(), rs: rs.clone(), weyl, classes, real_weyl })
    }
}

/// Double cosets W(g,h)\W/S seen as W(g,h)-orbits on the W-orbit of Ψ.
#[derive(Clone, Debug)]
pub struct DoubleCosets {
    pub weyl_order: usize,
    pub real_weyl_order: usize,
    pub stabilizer_order: usize,
    /// (minimal representative w·Ψ, size of its W(g,h)-orbit)
    pub cosets: Vec<(Vec<usize>, usize)>,
}

impl DoubleCosets {
    /// Σ |W(g,h)| |S| / |Stab(w·Ψ)| over the representatives.
    pub fn partition_sum(&self) -> usize {
        self.cosets
            .iter()
            .map(|(_, orbit)| {
                let stab = self.real_weyl_order / orbit;
                self.real_weyl_order * self.stabilizer_order / stab
            })
            .sum()
    }
}

pub fn double_cosets(ctx: &RealFormContext, class: usize, psi: &[usize], orbit_limit: usize) -> Result<DoubleCosets> {
    let rs = &ctx.rs;
    let mut start = psi.to_vec();
    start.sort();
    let mut orbit: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for i in 0..rs.rank() {
            let y = RootSystem::apply_perm(rs.simple_reflection(i), &x);
            if orbit.insert(y.clone()) {
                if orbit.len() > orbit_limit {
                    return Err(Error::Budget(format!("W-orbit of the target exceeds {orbit_limit}")));
                }
                queue.push_back(y);
            }
        }
    }
    let h = &ctx.real_weyl[class];
    let mut remaining: BTreeSet<Vec<usize>> = orbit.iter().cloned().collect();
    let mut cosets = Vec::new();
    while let Some(rep) = remaining.pop_first() {
        let mut size = 1;
        let mut queue = VecDeque::from([rep.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in &h.generators {
                let y = RootSystem::apply_perm(g, &x);
                if remaining.remove(&y) {
                    size += 1;
                    queue.push_back(y);
                }
            }
        }
        cosets.push((rep, size));
    }
    Ok(DoubleCosets {
        weyl_order: ctx.weyl.order(),
        real_weyl_order: h.order(),
        stabilizer_order: ctx.weyl.order() / orbit.len(),
        cosets,
    })
}

pub fn is_sigma_stable(c: &CartanClass, psi: &[usize]) -> bool {
    RootSystem::apply_perm(&c.theta, psi) == psi
}

/// Roots of the normalizer of the subalgebra spanned by h-parts and the
/// root spaces of Ψ. With the full Cartan inside, that is Ψ; otherwise the
/// roots strongly orthogonal to Ψ join.
pub fn normalizer_roots(rs: &RootSystem, psi: &[usize], contains_cartan: bool) -> Vec<usize> {
    let set: HashSet<usize> = psi.iter().copied().collect();
    let mut out: Vec<usize> = psi.to_vec();
    if !contains_cartan {
        for g in 0..rs.num_roots() {
            if !set.contains(&g) && psi.iter().all(|&a| rs.ip_roots_scaled(g, a) == 0 && rs.sum(g, a).is_none()) {
                out.push(g);
            }
        }
    }
    out.sort();
    out
}

/// h is maximally noncompact in the normalizer iff no normalizer root is
/// noncompact imaginary.
pub fn is_strongly_regular(rs: &RootSystem, c: &CartanClass, psi: &[usize], contains_cartan: bool) -> bool {
    normalizer_roots(rs, psi, contains_cartan).iter().all(|&a| !c.is_noncompact(a))
}

/// Real label of the subalgebra g_Ψ (+ h when `contains_cartan`) of the
/// real form attached to the Cartan class.
pub fn real_label(rs: &RootSystem, c: &CartanClass, psi: &[usize], contains_cartan: bool) -> Result<RealLabel> {
    let comps = components(rs, psi);
    let mut summands = Vec::new();
    let mut done: HashSet<Vec<usize>> = HashSet::new();
    for comp in &comps {
        if done.contains(comp) {
            continue;
        }
        let image = RootSystem::apply_perm(&c.theta, comp);
        let ty = classify_subsystem(comp, rs)?.components[0];
        done.insert(comp.clone());
        if image != *comp {
            done.insert(image);
            summands.push(complex_label(ty));
            continue;
        }
        let compact = comp.iter().filter(|&&a| c.is_compact_imaginary(a)).count();
        let moved = comp.iter().filter(|&&a| c.theta[a] as usize != a).count();
        let dim_k = fixed_dim(rs, &c.theta, comp) + compact + moved / 2;
        let character = ty.dim() as i64 - 2 * dim_k as i64;
        let label = label_for_character(ty, character)
            .ok_or(Error::NoCensusMatch { k_type: format!("{ty} component"), character })?;
        summands.push(label);
    }
    if contains_cartan {
        let compact_center = c.compact_dim - if psi.is_empty() { 0 } else { fixed_dim(rs, &c.theta, psi) };
        let span = if psi.is_empty() { 0 } else { rank(&psi.iter().map(|&a| rs.root(a).iter().map(|&x| q(x as i64)).collect()).collect::<Vec<Vec<Q>>>()) };
        let center = rs.rank() - span;
        summands.extend(std::iter::repeat_n("u(1)".to_string(), compact_center));
        summands.extend(std::iter::repeat_n("so(1,1)".to_string(), center - compact_center));
    }
    RealLabel::parse(&summands.join("+"))
}

/// Every survivor of the double-coset filters, before aggregation.
#[derive(Clone, Debug, Serialize)]
pub struct Survivor {
    pub cartan: usize,
    pub psi: Vec<usize>,
    pub label: String,
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub weyl_limit: u128,
    pub orbit_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { weyl_limit: 100_000, orbit_limit: 1_000_000 }
    }
}

pub fn survivors(
    ctx: &RealFormContext,
    target: &SubalgebraDescriptor,
    only_cartan: Option<usize>,
    budget: Budget,
) -> std::result::Result<Vec<Survivor>, Partial<Vec<Survivor>>> {
    let contains_cartan = target.toral_rank > 0;
    let mut out = Vec::new();
    for c in &ctx.classes {
        if only_cartan.is_some_and(|id| id != c.id) {
            continue;
        }
        let dc = match double_cosets(ctx, c.id, &target.psi, budget.orbit_limit) {
            Ok(d) => d,
            Err(e) => return Err(Partial { found: out, reason: e.to_string() }),
        };
        for (rep, _) in &dc.cosets {
            if !is_sigma_stable(c, rep) || !is_strongly_regular(&ctx.rs, c, rep, contains_cartan) {
                continue;
            }
            let label = match real_label(&ctx.rs, c, rep, contains_cartan) {
                Ok(l) => l.to_string(),
                Err(e) => return Err(Partial { found: out, reason: e.to_string() }),
            };
            out.push(Survivor { cartan: c.id, psi: rep.clone(), label });
        }
    }
    Ok(out)
}

/// Table rows for one maximal target, multiplicities aggregated by label.
pub fn regular_real_embeddings(
    ctx: &RealFormContext,
    target: &SubalgebraDescriptor,
    only_cartan: Option<usize>,
    budget: Budget,
) -> std::result::Result<Vec<RealEmbeddingRow>, Partial<Vec<RealEmbeddingRow>>> {
    let agg = |s: &[Survivor]| {
        let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
        for x in s {
            *counts.entry(&x.label).or_default() += 1;
        }
        counts
            .into_iter()
            .map(|(label, multiplicity)| RealEmbeddingRow {
                ambient_label: ctx.form.label.clone(),
                subalgebra_complex_type: target.type_label.to_string(),
                real_sublabel: label.to_string(),
                multiplicity,
                flag: 'R',
            })
            .collect::<Vec<_>>()
    };
    match survivors(ctx, target, only_cartan, budget) {
        Ok(s) => Ok(agg(&s)),
        Err(p) => Err(Partial { found: agg(&p.found), reason: p.reason }),
    }
}

/// Order of the stabilizer of θ and the grading inside W. Every element
/// realized by the real group lies in it, so it bounds |W(g,h)| from above.
pub fn grading_stabilizer_order(rs: &RootSystem, w: &WeylGroup, c: &CartanClass) -> usize {
    let m = rs.num_roots();
    w.elements
        .iter()
        .filter(|g| compose(g, &c.theta) == compose(&c.theta, g) && (0..m).all(|a| c.grading[g[a] as usize] == c.grading[a]))
        .count()
}

#[doc(hidden)]
pub fn class_summary(ctx: &RealFormContext) -> Vec<(usize, usize, usize)> {
    ctx.classes.iter().map(|c| (c.id, c.noncompact_dim, ctx.real_weyl[c.id].order())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::ChevalleyAlgebra;
    use crate::complexsub::{maximal_reductive_nonsemisimple, maximal_regular_semisimple};
    use crate::realform::enumerate_real_forms;
    use crate::rootsys::Series;

    fn context(s: Series, r: usize, label: &str) -> RealFormContext {
        let rs = RootSystem::new(s, r).unwrap();
        let alg = ChevalleyAlgebra::new(&rs);
        let form = enumerate_real_forms(&alg).into_iter().find(|f| f.label == label).unwrap();
        RealFormContext::new(&form, &rs, 1_000_000).unwrap()
    }

    #[test]
    fn sl2r_classes() {
        let ctx = context(Series::A, 1, "sl(2,R)");
        assert_eq!(ctx.classes.len(), 2);
        assert_eq!(ctx.real_weyl[0].order(), 1);
        assert_eq!(ctx.real_weyl[1].order(), 2);
        let su2 = context(Series::A, 1, "su(2)");
        assert_eq!(su2.classes.len(), 1);
        assert_eq!(su2.real_weyl[0].order(), 2);
    }

    #[test]
    fn split_g2_split_cartan_has_full_weyl_group() {
        let ctx = context(Series::G, 2, "G2(2)");
        let last = ctx.classes.last().unwrap();
        assert_eq!(last.noncompact_dim, 2);
        assert_eq!(ctx.real_weyl[last.id].order(), 12);
        assert!(ctx.real_weyl.iter().all(|h| h.is_closed()));
    }

    #[test]
    fn g22_a2_row() {
        let ctx = context(Series::G, 2, "G2(2)");
        let t = maximal_regular_semisimple(&ctx.rs).items.into_iter().find(|d| d.type_label.to_string() == "A2").unwrap();
        let rows = regular_real_embeddings(&ctx, &t, None, Budget::default()).unwrap();
        let got: Vec<(String, usize)> = rows.into_iter().map(|r| (r.real_sublabel, r.multiplicity)).collect();
        assert_eq!(got, vec![("sl(3,R)".into(), 1), ("su(1,2)".into(), 1)]);
    }

    #[test]
    fn su22_a2_row() {
        let ctx = context(Series::A, 3, "su(2,2)");
        let t = maximal_reductive_nonsemisimple(&ctx.rs).items.into_iter().find(|d| d.type_label.to_string() == "A2+T1").unwrap();
        let rows = regular_real_embeddings(&ctx, &t, None, Budget::default()).unwrap();
        let got: Vec<(String, usize)> = rows.into_iter().map(|r| (r.real_sublabel, r.multiplicity)).collect();
        assert_eq!(got, vec![("su(1,2)+u(1)".into(), 2)]);
    }

    #[test]
    fn compact_form_gives_compact_rows() {
        let ctx = context(Series::B, 3, "so(7)");
        for t in maximal_regular_semisimple(&ctx.rs).items.iter().chain(&maximal_reductive_nonsemisimple(&ctx.rs).items) {
            let rows = regular_real_embeddings(&ctx, t, None, Budget::default()).unwrap();
            assert_eq!(rows.len(), 1);
            assert_eq!(rows[0].multiplicity, 1);
        }
    }

    #[test]
    fn partition_sums() {
        let ctx = context(Series::B, 2, "so(2,3)");
        for t in maximal_regular_semisimple(&ctx.rs).items {
            for c in &ctx.classes {
                let dc = double_cosets(&ctx, c.id, &t.psi, 1_000_000).unwrap();
                assert_eq!(dc.partition_sum(), dc.weyl_order);
            }
        }
    }
}
