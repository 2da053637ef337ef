#![allow(dead_code)]

use liereal::chevalley::ChevalleyAlgebra;
use liereal::complexsub::{maximal_reductive_nonsemisimple, maximal_regular_semisimple};
use liereal::golden::{builtin, Flag, GoldenTable};
use liereal::linalg::{q, rank, Q};
use liereal::pipeline::{maximal_targets, resolve_form};
use liereal::realform::{compact_conjugation, enumerate_real_forms, killing_signature, RealLabel};
use liereal::regreal::{double_cosets, RealFormContext};
use liereal::rootsys::{all_types, RootSystem, Series, TypeLabel};
use liereal::ssub::poly::{groebner_basis, reduce, MonomialOrder, Poly};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

pub fn norm_type(s: &str) -> String {
    TypeLabel::parse(s).unwrap().to_string()
}

pub fn norm_label(s: &str) -> String {
    RealLabel::parse(s).unwrap().to_string()
}

pub fn table(name: &str) -> GoldenTable {
    builtin(name).unwrap_or_else(|| panic!("no table {name}")).unwrap()
}

// maximal Levi-type

/// The maximal reductive non-semisimple rows written out by hand.
pub fn levi_maxima_oracle(series: Series, n: usize) -> BTreeSet<String> {
    let t = |s: &str| norm_type(s);
    let a = |k: usize| if k == 0 { String::new() } else { format!("A{k}+") };
    let mut out = BTreeSet::new();
    match series {
        Series::A => {
            for k in 1..n {
                out.insert(t(&format!("{}{}T1", a(k), a(n - 1 - k))));
            }
        }
        Series::B => {
            out.insert(t(&if n == 2 { "A1+T1".into() } else { format!("B{}+T1", n - 1) }));
        }
        Series::C => {
            out.insert(t(&format!("A{}+T1", n - 1)));
        }
        Series::D => {
            out.insert(t(&format!("A{}+T1", n - 1)));
            out.insert(t(&if n == 4 { "A3+T1".into() } else { format!("D{}+T1", n - 1) }));
        }
        Series::E if n == 6 => {
            out.insert(t("D5+T1"));
        }
        Series::E if n == 7 => {
            out.insert(t("E6+T1"));
        }
        _ => {}
    }
    out
}

pub fn levi_maxima_computed(rs: &RootSystem) -> BTreeSet<String> {
    maximal_reductive_nonsemisimple(rs).items.iter().map(|d| d.type_label.to_string()).collect()
}

// prime-mark deletions

pub fn prime_mark_tables(ty: &str) -> &'static [&'static str] {
    match ty {
        "G2" => &["G22"],
        "F4" => &["F44", "F420"],
        "B3" => &["so25", "so43", "so61"],
        "C3" => &["sp6R", "sp12"],
        "D4" => &["so44", "so35", "so17", "sostar8"],
        _ => &[],
    }
}

/// Complex types of R rows whose real forms carry no abelian summand.
pub fn semisimple_r_rows(names: &[&str]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for name in names {
        for row in table(name).rows {
            if row.flag != Flag::R {
                continue;
            }
            let abelian = row.real_sublabels.iter().any(|l| {
                RealLabel::parse(&l.label).unwrap().summands().iter().any(|s| s == "u(1)" || s == "so(1,1)")
            });
            if !abelian {
                out.insert(norm_type(&row.complex_type));
            }
        }
    }
    out
}

pub fn prime_mark_computed(rs: &RootSystem) -> BTreeSet<String> {
    maximal_regular_semisimple(rs).items.iter().map(|d| d.type_label.to_string()).collect()
}

// properties

/// Exhaustive Jacobi identity on the basis, with integer structure constants.
pub fn jacobi_holds(alg: &ChevalleyAlgebra) -> bool {
    let d = alg.dim();
    let bracket_vec = |x: &BTreeMap<usize, i64>, j: usize| -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&i, &c) in x {
            for &(k, s) in alg.basis_bracket(i, j) {
                *out.entry(k).or_insert(0) += c * s as i64;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    };
    let unit = |i: usize| BTreeMap::from([(i, 1i64)]);
    for a in 0..d {
        for b in a + 1..d {
            let ab = bracket_vec(&unit(a), b);
            for c in b + 1..d {
                // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                let mut sum = bracket_vec(&ab, c);
                for (k, v) in bracket_vec(&bracket_vec(&unit(b), c), a) {
                    *sum.entry(k).or_insert(0) += v;
                }
                for (k, v) in bracket_vec(&bracket_vec(&unit(c), a), b) {
                    *sum.entry(k).or_insert(0) += v;
                }
                if sum.values().any(|v| *v != 0) {
                    return false;
                }
            }
        }
    }
    true
}

/// θ² = 1, θ an automorphism commuting with τ, and σ = θτ an involution
/// commuting with τ, for every census form of the given types.
pub fn involution_checks(max_rank: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for t in all_types(max_rank) {
        let alg = ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap());
        let tau = compact_conjugation(&alg);
        for f in enumerate_real_forms(&alg) {
            let sigma = f.sigma(&tau);
            let ok = f.theta.is_involutive()
                && f.theta.commutes_with(&tau)
                && sigma.is_involutive()
                && sigma.commutes_with(&tau)
                && f.theta.is_automorphism(&alg);
            if !ok {
                bad.push(f.label);
            }
        }
    }
    bad
}

/// Killing form signature of each census form against its character.
pub fn signature_checks(max_rank: usize) -> Vec<String> {
    let mut bad = Vec::new();
    for t in all_types(max_rank) {
        let alg = ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap());
        for f in enumerate_real_forms(&alg) {
            let (pos, neg) = killing_signature(&alg, &f.theta);
            if pos + neg != alg.dim() || pos as i64 - neg as i64 != f.character {
                bad.push(format!("{} ({pos},{neg}) vs {}", f.label, f.character));
            }
        }
    }
    bad
}

/// Double-coset partition sums for every form, Cartan class and maximal
/// target up to the given rank. Returns (runs, failures).
pub fn partition_checks(max_rank: usize) -> (usize, Vec<String>) {
    let mut runs = 0;
    let mut bad = Vec::new();
    for t in all_types(max_rank) {
        let rs = RootSystem::from_type(t).unwrap();
        let alg = ChevalleyAlgebra::new(&rs);
        for f in enumerate_real_forms(&alg) {
            let ctx = RealFormContext::new(&f, &rs, 1_000_000).unwrap();
            for target in maximal_targets(&rs) {
                for c in &ctx.classes {
                    let dc = double_cosets(&ctx, c.id, &target.psi, 10_000_000).unwrap();
                    runs += 1;
                    if dc.partition_sum() != dc.weyl_order {
                        bad.push(format!("{} class {} {}", f.label, c.id, target.type_label));
                    }
                }
            }
        }
    }
    (runs, bad)
}

// GB battery

fn p(n: usize, terms: &[(&[u32], i64)]) -> Poly {
    Poly::from_terms(
        n,
        MonomialOrder::DegRevLex,
        terms.iter().map(|(m, c)| (m.to_vec(), q(*c))).collect(),
    )
}

/// Twenty fixed polynomial systems.
pub fn gb_battery() -> Vec<(usize, Vec<Poly>)> {
    let mut v: Vec<(usize, Vec<Poly>)> = vec![
        // circle and line
        (2, vec![p(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[0, 0], -1)]), p(2, &[(&[1, 0], 1), (&[0, 1], -1)])]),
        // twisted cubic
        (3, vec![p(3, &[(&[2, 0, 0], 1), (&[0, 1, 0], -1)]), p(3, &[(&[3, 0, 0], 1), (&[0, 0, 1], -1)])]),
        // cyclic 3
        (
            3,
            vec![
                p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], 1)]),
                p(3, &[(&[1, 1, 0], 1), (&[0, 1, 1], 1), (&[1, 0, 1], 1)]),
                p(3, &[(&[1, 1, 1], 1), (&[0, 0, 0], -1)]),
            ],
        ),
        // unit ideal
        (2, vec![p(2, &[(&[1, 1], 1), (&[0, 0], -1)]), p(2, &[(&[1, 0], 1)])]),
        // x^2 - y, y^2 - x
        (2, vec![p(2, &[(&[2, 0], 1), (&[0, 1], -1)]), p(2, &[(&[0, 2], 1), (&[1, 0], -1)])]),
        // idempotents
        (2, vec![p(2, &[(&[2, 0], 1), (&[1, 0], -1)]), p(2, &[(&[0, 2], 1), (&[0, 1], -1)])]),
        // monomial ideal
        (3, vec![p(3, &[(&[1, 1, 0], 1)]), p(3, &[(&[0, 1, 1], 1)]), p(3, &[(&[1, 0, 1], 1)])]),
        // sphere, plane, cylinder
        (
            3,
            vec![
                p(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1), (&[0, 0, 0], -4)]),
                p(3, &[(&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 1], -1)]),
                p(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 0], -2)]),
            ],
        ),
        // a 2x2 orthogonal involution family: a^2 + bc - 1, (a + d) b, (a + d) c, d^2 + bc - 1
        (
            4,
            vec![
                p(4, &[(&[2, 0, 0, 0], 1), (&[0, 1, 1, 0], 1), (&[0, 0, 0, 0], -1)]),
                p(4, &[(&[1, 1, 0, 0], 1), (&[0, 1, 0, 1], 1)]),
                p(4, &[(&[1, 0, 1, 0], 1), (&[0, 0, 1, 1], 1)]),
                p(4, &[(&[0, 0, 0, 2], 1), (&[0, 1, 1, 0], 1), (&[0, 0, 0, 0], -1)]),
            ],
        ),
        // single univariate
        (1, vec![p(1, &[(&[3], 1), (&[1], -2), (&[0], 1)])]),
        // two univariates with common factor
        (1, vec![p(1, &[(&[2], 1), (&[0], -1)]), p(1, &[(&[3], 1), (&[0], -1)])]),
        // Cayley-type: x y - 1, x - y
        (2, vec![p(2, &[(&[1, 1], 1), (&[0, 0], -1)]), p(2, &[(&[1, 0], 1), (&[0, 1], -1)])]),
    ];
    // pseudo-random sparse quadrics in 3 variables, fixed seed
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    while v.len() < 20 {
        let n = 3;
        let k = rng.gen_range(2..=3);
        let polys = (0..k)
            .map(|_| {
                let terms: Vec<(Vec<u32>, Q)> = (0..3)
                    .map(|_| {
                        let mut m = vec![0u32; n];
                        for _ in 0..rng.gen_range(0..=2) {
                            m[rng.gen_range(0..n)] += 1;
                        }
                        (m, q(rng.gen_range(-3i64..=3)))
                    })
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                Poly::from_terms(n, MonomialOrder::DegRevLex, terms)
            })
            .filter(|p| !p.is_zero())
            .collect::<Vec<_>>();
        if !polys.is_empty() {
            v.push((n, polys));
        }
    }
    v
}

/// For each system and order: the reduced basis does not depend on the
/// generator order; every generator and random ideal combinations reduce
/// to zero; every basis element has zero remainder against a basis built
/// from the original generators plus itself (it lies in the ideal).
pub fn gb_checks() -> Vec<String> {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (idx, (n, sys)) in gb_battery().into_iter().enumerate() {
        for order in [MonomialOrder::Lex, MonomialOrder::DegRevLex] {
            let sys: Vec<Poly> = sys.iter().map(|p| p.with_order(order)).collect();
            let gb = groebner_basis(&sys, order, 100_000).unwrap();
            let mut rev = sys.clone();
            rev.reverse();
            let mut rot = sys.clone();
            rot.rotate_left(1);
            for other in [rev, rot] {
                if groebner_basis(&other, order, 100_000).unwrap() != gb {
                    bad.push(format!("system {idx} {order:?}: order dependence"));
                }
            }
            for g in &sys {
                if !reduce(g, &gb).is_zero() {
                    bad.push(format!("system {idx} {order:?}: generator not reduced to zero"));
                }
            }
            // random members of the ideal
            for _ in 0..5 {
                let mut f = Poly::zero(n, order);
                for g in &sys {
                    let m: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
                    f = f.add(&g.mul_term(&m, &q(rng.gen_range(-4i64..=4))));
                }
                if !reduce(&f, &gb).is_zero() {
                    bad.push(format!("system {idx} {order:?}: ideal member not reduced to zero"));
                }
            }
            // adding a basis element to the generators leaves the basis unchanged
            for g in &gb {
                let mut ext = sys.clone();
                ext.push(g.clone());
                if groebner_basis(&ext, order, 100_000).unwrap() != gb {
                    bad.push(format!("system {idx} {order:?}: basis element outside the ideal"));
                }
            }
            if !brute_force_members(n, &sys, &gb, order) {
                bad.push(format!("system {idx} {order:?}: brute-force span disagrees"));
            }
        }
    }
    bad
}

fn monomials_up_to(n: usize, deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; n]];
    for _ in 0..deg {
        let mut next = out.clone();
        for m in &out {
            for i in 0..n {
                let mut x = m.clone();
                x[i] += 1;
                next.push(x);
            }
        }
        next.sort();
        next.dedup();
        out = next;
    }
    out
}

/// Truncated Macaulay matrix: the span of m·f over generators f and
/// monomials m with deg(m·f) ≤ `deg`, as dense rows over the monomials.
fn macaulay_rank(n: usize, sys: &[Poly], deg: u32, extra: Option<&Poly>) -> usize {
    let cols = monomials_up_to(n, deg);
    let col_of: BTreeMap<&Vec<u32>, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dense = |f: &Poly| -> Vec<Q> {
        let mut row = vec![Q::zero(); cols.len()];
        for (m, c) in f.terms() {
            row[col_of[m]] = c.clone();
        }
        row
    };
    let mut rows = Vec::new();
    for f in sys {
        for m in &cols {
            let g = f.mul_term(m, &q(1));
            if g.total_degree() <= deg {
                rows.push(dense(&g));
            }
        }
    }
    if let Some(x) = extra {
        rows.push(dense(x));
    }
    rank(&rows)
}

/// Membership by linear algebra alone, independent of any reduction: each
/// basis element must appear in a truncated span of the generators (degree
/// bound raised until it does, up to a cap), and a polynomial with nonzero
/// normal form must stay outside every truncated span tried.
pub fn brute_force_members(n: usize, sys: &[Poly], gb: &[Poly], order: MonomialOrder) -> bool {
    let top = sys.iter().chain(gb).map(|p| p.total_degree()).max().unwrap_or(0);
    let in_span = |x: &Poly, deg: u32| macaulay_rank(n, sys, deg, Some(x)) == macaulay_rank(n, sys, deg, None);
    for g in gb {
        if !(top..=top + 3).any(|d| in_span(g, d)) {
            return false;
        }
    }
    let lts: Vec<&Vec<u32>> = gb.iter().map(|g| g.lm()).collect();
    if let Some(m) = monomials_up_to(n, 2).into_iter().find(|m| !lts.iter().any(|l| l.iter().zip(m).all(|(a, b)| a <= b))) {
        let x = Poly::from_terms(n, order, vec![(m, q(1))]);
        if reduce(&x, gb).is_zero() || in_span(&x, top + 2) {
            return false;
        }
    }
    true
}

// helpers

pub fn resolve_ctx(label: &str) -> RealFormContext {
    let r = resolve_form(label).unwrap();
    RealFormContext::new(&r.form, &r.rs, 1_000_000).unwrap()
}
