//! Sparse multivariate polynomials over ℚ and reduced Gröbner bases
//! (Buchberger with the normal selection strategy).

use crate::error::{Error, Result};
use crate::linalg::Q;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Monomial = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// x0 > x1 > ... lexicographically.
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::DegRevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for i in (0..a.len()).rev() {
                        if a[i] != b[i] {
                            return b[i].cmp(&a[i]);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Terms sorted strictly decreasing in `order`; no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub order: MonomialOrder,
    terms: Vec<(Monomial, Q)>,
}

impl Poly {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Poly {
        Poly { nvars, order, terms: vec![] }
    }

    pub fn constant(nvars: usize, order: MonomialOrder, c: Q) -> Poly {
        Poly::from_terms(nvars, order, vec![(vec![0; nvars], c)])
    }

    pub fn var(nvars: usize, order: MonomialOrder, i: usize) -> Poly {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::from_terms(nvars, order, vec![(m, Q::one())])
    }

    pub fn from_terms(nvars: usize, order: MonomialOrder, terms: Vec<(Monomial, Q)>) -> Poly {
        let mut terms: Vec<(Monomial, Q)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut merged: Vec<(Monomial, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Poly { nvars, order, terms: merged }
    }

    pub fn terms(&self) -> &[(Monomial, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Q {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.iter().sum()).max().unwrap_or(0)
    }

    /// Re-sort under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        Poly::from_terms(self.nvars, order, self.terms.clone())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = Q::one() / self.lc();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.order);
        }
        Poly { nvars: self.nvars, order: self.order, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// c · x^m · self
    pub fn mul_term(&self, m: &[u32], c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.order);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, x)| (t.iter().zip(m).map(|(a, b)| a + b).collect(), x * c))
            .collect();
        Poly { nvars: self.nvars, order: self.order, terms }
    }

    /// self + c · other, merging sorted term lists.
    pub fn add_scaled(&self, other: &Poly, c: &Q) -> Poly {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == other.terms.len() {
                Ordering::Greater
            } else {
                order.cmp(&self.terms[i].0, &other.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = &other.terms[j].1 * c;
                    if !v.is_zero() {
                        out.push((other.terms[j].0.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = &self.terms[i].1 + &other.terms[j].1 * c;
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { nvars: self.nvars, order, terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &-Q::one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero(self.nvars, self.order);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.iter().any(|(m, _)| m[i] > 0)).collect()
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.clone();
                for (x, &e) in point.iter().zip(m) {
                    for _ in 0..e {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// Substitute x_i := value.
    pub fn substitute(&self, i: usize, value: &Q) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                let mut v = c.clone();
                for _ in 0..m[i] {
                    v *= value;
                }
                m2[i] = 0;
                (m2, v)
            })
            .collect();
        Poly::from_terms(self.nvars, self.order, terms)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else if c.is_one() {
                    vars.join("*")
                } else {
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Full reduction of `p` modulo `g` (every term, not only the leading one).
pub fn reduce(p: &Poly, g: &[Poly]) -> Poly {
    let mut rem = Poly::zero(p.nvars, p.order);
    let mut p = p.clone();
    while !p.is_zero() {
        let (m, c) = p.terms[0].clone();
        match g.iter().find(|q| divides(q.lm(), &m)) {
            Some(q) => {
                let shift: Monomial = m.iter().zip(q.lm()).map(|(a, b)| a - b).collect();
                let coef = -(&c / q.lc());
                p = p.add_scaled(&q.mul_term(&shift, &Q::one()), &coef);
            }
            None => {
                rem.terms.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    rem
}

fn s_poly(a: &Poly, b: &Poly) -> Poly {
    let l = lcm(a.lm(), b.lm());
    let sa: Monomial = l.iter().zip(a.lm()).map(|(x, y)| x - y).collect();
    let sb: Monomial = l.iter().zip(b.lm()).map(|(x, y)| x - y).collect();
    a.mul_term(&sa, &(Q::one() / a.lc())).sub(&b.mul_term(&sb, &(Q::one() / b.lc())))
}

/// Reduced Gröbner basis, sorted by decreasing leading monomial. `budget`
/// bounds the number of S-polynomial reductions.
pub fn groebner_basis(polys: &[Poly], order: MonomialOrder, budget: usize) -> Result<Vec<Poly>> {
    let Some(nvars) = polys.first().map(|p| p.nvars) else {
        return Ok(vec![]);
    };
    let mut g: Vec<Poly> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for p in polys {
        let r = reduce(&p.with_order(order), &g);
        if !r.is_zero() {
            let r = r.monic();
            if r.is_constant() {
                return Ok(vec![Poly::constant(nvars, order, Q::one())]);
            }
            g.push(r);
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    let mut steps = 0;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, (a, b)), (_, (c, d))| order.cmp(&lcm(g[*a].lm(), g[*b].lm()), &lcm(g[*c].lm(), g[*d].lm())))
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let l = lcm(g[i].lm(), g[j].lm());
        // product criterion
        if g[i].lm().iter().zip(g[j].lm()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // chain criterion
        if (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lm(), &l)
                && !pairs.contains(&(i.min(k), i.max(k)))
                && !pairs.contains(&(j.min(k), j.max(k)))
        }) {
            continue;
        }
        steps += 1;
        if steps > budget {
            return Err(Error::Budget(format!("Gröbner basis needs more than {budget} reductions")));
        }
        let r = reduce(&s_poly(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let r = r.monic();
            if r.is_constant() {
                return Ok(vec![Poly::constant(nvars, order, Q::one())]);
            }
            g.push(r);
            let k = g.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    Ok(interreduce(g))
}

fn interreduce(g: Vec<Poly>) -> Vec<Poly> {
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        out.push(reduce(&minimal[i], &others).monic());
    }
    out.sort_by(|a, b| a.order.cmp(b.lm(), a.lm()));
    out
}

pub fn is_unit_ideal(gb: &[Poly]) -> bool {
    gb.len() == 1 && gb[0].is_constant() && !gb[0].is_zero()
}

/// Krull dimension of the ideal from the leading monomials of a Gröbner
/// basis: the size of a largest set of variables containing the support of
/// no leading monomial. None for the unit ideal.
pub fn dimension(gb: &[Poly], nvars: usize) -> Option<usize> {
    if is_unit_ideal(gb) {
        return None;
    }
    let lms: Vec<u64> = gb
        .iter()
        .map(|p| p.lm().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    (0u64..(1 << nvars))
        .filter(|s| lms.iter().all(|&m| m & !s != 0))
        .map(|s| s.count_ones() as usize)
        .max()
}

/// A largest independent variable set, as in `dimension`.
pub fn independent_set(gb: &[Poly], nvars: usize) -> Vec<usize> {
    let lms: Vec<u64> = gb
        .iter()
        .map(|p| p.lm().iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    let best = (0u64..(1 << nvars))
        .filter(|s| lms.iter().all(|&m| m & !s != 0))
        .max_by_key(|s| (s.count_ones(), std::cmp::Reverse(*s)))
        .unwrap_or(0);
    (0..nvars).filter(|i| best & (1 << i) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn p(nv: usize, order: MonomialOrder, terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_terms(nv, order, terms.iter().map(|(m, c)| (m.to_vec(), q(*c))).collect())
    }

    #[test]
    fn single_generator() {
        let x = Poly::var(1, MonomialOrder::DegRevLex, 0);
        assert_eq!(groebner_basis(std::slice::from_ref(&x), MonomialOrder::DegRevLex, 100).unwrap(), vec![x]);
    }

    #[test]
    fn membership_lex() {
        let lex = MonomialOrder::Lex;
        let f1 = p(2, lex, &[(&[2, 0], 1), (&[0, 0], -1)]);
        let f2 = p(2, lex, &[(&[0, 1], 1), (&[1, 0], -1)]);
        let gb = groebner_basis(&[f1, f2], lex, 100).unwrap();
        let g = p(2, lex, &[(&[2, 1], 1), (&[0, 1], -1)]);
        assert!(reduce(&g, &gb).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let o = MonomialOrder::DegRevLex;
        let x = Poly::var(1, o, 0);
        let gb = groebner_basis(&[x.clone(), x.sub(&Poly::constant(1, o, q(1)))], o, 100).unwrap();
        assert!(is_unit_ideal(&gb));
    }

    #[test]
    fn dimensions() {
        let o = MonomialOrder::DegRevLex;
        let f = p(3, o, &[(&[1, 1, 0], 1), (&[0, 0, 1], -1)]);
        let gb = groebner_basis(&[f], o, 100).unwrap();
        assert_eq!(dimension(&gb, 3), Some(2));
    }
}
