//! Exact real solutions of zero-dimensional systems: lex Gröbner basis,
//! then back-substitution with real roots in ℚ or one quadratic field ℚ(√d).

use super::poly::{groebner_basis, is_unit_ideal, MonomialOrder, Poly};
use crate::error::Result;
use crate::linalg::{q, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

/// a + b√d; `d` is zero for plain rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadNum {
    pub a: Q,
    pub b: Q,
    pub d: Q,
}

impl QuadNum {
    pub fn rational(a: Q) -> QuadNum {
        QuadNum { a, b: Q::zero(), d: Q::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn field(&self, other: &QuadNum) -> Q {
        if self.d.is_zero() {
            other.d.clone()
        } else {
            self.d.clone()
        }
    }

    pub fn inv(&self) -> QuadNum {
        let n = &self.a * &self.a - &self.d * &self.b * &self.b;
        QuadNum { a: &self.a / &n, b: -(&self.b / &n), d: self.d.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * self.d.to_f64().unwrap().sqrt()
    }
}

impl Add for &QuadNum {
    type Output = QuadNum;
    fn add(self, o: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a + &o.a, b: &self.b + &o.b, d: self.field(o) }
    }
}

impl Sub for &QuadNum {
    type Output = QuadNum;
    fn sub(self, o: &QuadNum) -> QuadNum {
        QuadNum { a: &self.a - &o.a, b: &self.b - &o.b, d: self.field(o) }
    }
}

impl Mul for &QuadNum {
    type Output = QuadNum;
    fn mul(self, o: &QuadNum) -> QuadNum {
        let d = self.field(o);
        QuadNum { a: &self.a * &o.a + &d * &self.b * &o.b, b: &self.a * &o.b + &self.b * &o.a, d }
    }
}

impl Neg for &QuadNum {
    type Output = QuadNum;
    fn neg(self) -> QuadNum {
        QuadNum { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }
}

/// Univariate polynomial, coefficient i for x^i, no trailing zeros.
type UPoly = Vec<QuadNum>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn urem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead_inv = b.last().unwrap().inv();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&c * bi);
        }
        r = trim(r);
    }
    r
}

fn ugcd(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = urem(&a, &b);
        a = b;
        b = r;
    }
    if let Some(l) = a.last().cloned() {
        let inv = l.inv();
        a = a.iter().map(|c| c * &inv).collect();
    }
    a
}

// ---------- real roots of rational univariate polynomials ----------

fn eval_q(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn deriv(p: &[Q]) -> Vec<Q> {
    p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect()
}

fn trim_q(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn rem_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &c * bi;
        }
        r = trim_q(r);
    }
    r
}

fn gcd_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim_q(a.to_vec()), trim_q(b.to_vec()));
    while !b.is_empty() {
        let r = rem_q(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn div_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let mut quo = vec![Q::zero(); a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / b.last().unwrap();
        for (i, bi) in b.iter().enumerate() {
            r[i + shift] -= &c * bi;
        }
        quo[shift] = c;
        r = trim_q(r);
    }
    trim_q(quo)
}

fn sturm(p: &[Q]) -> Vec<Vec<Q>> {
    let mut seq = vec![p.to_vec(), deriv(p)];
    loop {
        let n = seq.len();
        let r = rem_q(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<Q>], x: &Q) -> usize {
    let signs: Vec<i32> = seq
        .iter()
        .map(|p| {
            let v = eval_q(p, x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Squarefree part scaled to integer primitive coefficients; returns it
/// with its leading coefficient.
fn integer_squarefree(p: &[Q]) -> (Vec<Q>, BigInt) {
    let g = gcd_q(p, &deriv(p));
    let sf = if g.len() > 1 { div_q(p, &g) } else { p.to_vec() };
    let den = sf.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = sf.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.into_iter().map(|c| c / &content).collect();
    let lead = ints.last().unwrap().abs();
    (ints.into_iter().map(Q::from_integer).collect(), lead)
}

/// Disjoint isolating intervals (lo, hi] for the real roots, each shrunk
/// below `width`.
fn isolate(p: &[Q], width: &Q) -> Vec<(Q, Q)> {
    let seq = sturm(p);
    let lead = p.last().unwrap().abs();
    let bound = Q::one() + p[..p.len() - 1].iter().map(|c| c.abs() / &lead).fold(Q::zero(), |a, b| if b > a { b } else { a });
    let mut stack = vec![(-bound.clone(), bound)];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && &hi - &lo < *width {
            out.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / q(2);
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort();
    out
}

/// Continued-fraction convergents of x with denominator at most `max_den`.
fn convergents(x: &Q, max_den: &BigInt) -> Vec<Q> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    for _ in 0..200 {
        let a = r.floor().to_integer();
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        if &k > max_den {
            break;
        }
        out.push(Q::new(h.clone(), k.clone()));
        h0 = h1;
        h1 = h;
        k0 = k1;
        k1 = k;
        let frac = &r - Q::from_integer(a);
        if frac.is_zero() {
            break;
        }
        r = Q::one() / frac;
    }
    out
}

/// Real roots in ℚ, plus real roots of rational quadratic factors.
pub fn real_roots(p: &[Q]) -> (Vec<Q>, Vec<QuadNum>) {
    let p = trim_q(p.to_vec());
    if p.len() <= 1 {
        return (vec![], vec![]);
    }
    let (sf, lead) = integer_squarefree(&p);
    let lead_q = Q::from_integer(lead.clone());
    let bound = Q::one() + sf[..sf.len() - 1].iter().map(|c| c.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a });
    let width = Q::one() / (q(16) * &lead_q * &lead_q * (&bound + Q::one()) * (&bound + Q::one()));
    let intervals = isolate(&sf, &width);
    let mut rational = Vec::new();
    let mut rest = Vec::new();
    for (lo, hi) in intervals {
        let mid = (&lo + &hi) / q(2);
        let hit = convergents(&mid, &lead).into_iter().chain([hi.clone()]).find(|c| c > &lo && c <= &hi && eval_q(&sf, c).is_zero());
        match hit {
            Some(r) => rational.push(r),
            None => rest.push(mid),
        }
    }
    let mut quad = Vec::new();
    let mut used = vec![false; rest.len()];
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if used[i] || used[j] {
                continue;
            }
            let s_guess = &rest[i] + &rest[j];
            let p_guess = &rest[i] * &rest[j];
            'pair: for s in convergents(&s_guess, &lead) {
                for pr in convergents(&p_guess, &lead) {
                    let f = vec![pr.clone(), -s.clone(), Q::one()];
                    if rem_q(&sf, &f).is_empty() {
                        let d = &s * &s - q(4) * &pr;
                        let half = Q::new(1.into(), 2.into());
                        quad.push(QuadNum { a: &s * &half, b: -half.clone(), d: d.clone() });
                        quad.push(QuadNum { a: &s * &half, b: half.clone(), d });
                        used[i] = true;
                        used[j] = true;
                        break 'pair;
                    }
                }
            }
        }
    }
    rational.sort();
    (rational, quad)
}

/// Outcome of solving a zero-dimensional system.
#[derive(Clone, Debug, Default)]
pub struct Solutions {
    pub points: Vec<Vec<QuadNum>>,
    /// Branches whose coordinates needed more than one quadratic extension.
    pub undetermined: usize,
}

/// All real solutions of a zero-dimensional system reachable within ℚ or
/// one ℚ(√d). Returns None when the system is not zero-dimensional.
pub fn solve_zero_dim(system: &[Poly], budget: usize) -> Result<Option<Solutions>> {
    let Some(nvars) = system.first().map(|p| p.nvars) else {
        return Ok(Some(Solutions { points: vec![vec![]], undetermined: 0 }));
    };
    let gb = groebner_basis(system, MonomialOrder::Lex, budget)?;
    if is_unit_ideal(&gb) {
        return Ok(Some(Solutions::default()));
    }
    if super::poly::dimension(&gb, nvars) != Some(0) {
        return Ok(None);
    }
    let mut sols = Solutions::default();
    let mut partial = vec![None; nvars];
    back_substitute(&gb, nvars, nvars, &mut partial, &mut sols);
    sols.points.retain(|pt| system.iter().all(|p| eval_quad(p, pt).is_zero()));
    Ok(Some(sols))
}

pub fn eval_quad(p: &Poly, point: &[QuadNum]) -> QuadNum {
    let mut acc = QuadNum::rational(Q::zero());
    for (m, c) in p.terms() {
        let mut v = QuadNum::rational(c.clone());
        for (x, &e) in point.iter().zip(m) {
            for _ in 0..e {
                v = &v * x;
            }
        }
        acc = &acc + &v;
    }
    acc
}

fn back_substitute(gb: &[Poly], nvars: usize, k: usize, partial: &mut Vec<Option<QuadNum>>, sols: &mut Solutions) {
    if k == 0 {
        sols.points.push(partial.iter().map(|v| v.clone().unwrap()).collect());
        return;
    }
    let var = k - 1;
    // univariate images in x_var of the polynomials living in x_var..x_{n-1}
    let mut g: UPoly = vec![];
    for p in gb {
        if p.support().iter().any(|&i| i < var) {
            continue;
        }
        let mut u: UPoly = vec![];
        for (m, c) in p.terms() {
            let mut v = QuadNum::rational(c.clone());
            for i in var + 1..nvars {
                for _ in 0..m[i] {
                    v = &v * partial[i].as_ref().unwrap();
                }
            }
            let e = m[var] as usize;
            while u.len() <= e {
                u.push(QuadNum::rational(Q::zero()));
            }
            u[e] = &u[e] + &v;
        }
        g = if g.is_empty() { trim(u) } else { ugcd(g, u) };
    }
    let g = trim(g);
    if g.is_empty() {
        // free variable in a zero-dimensional ideal cannot happen
        sols.undetermined += 1;
        return;
    }
    if g.len() == 1 {
        return;
    }
    let roots: Vec<QuadNum> = if g.iter().all(|c| c.is_rational()) {
        let coeffs: Vec<Q> = g.iter().map(|c| c.a.clone()).collect();
        let (rat, quad) = real_roots(&coeffs);
        let current = partial.iter().flatten().find(|v| !v.is_rational()).map(|v| v.d.clone());
        let mut roots: Vec<QuadNum> = rat.into_iter().map(QuadNum::rational).collect();
        for r in quad {
            match &current {
                Some(d) if *d != r.d => sols.undetermined += 1,
                _ => roots.push(r),
            }
        }
        roots
    } else if g.len() == 2 {
        vec![-&(&g[0] * &g[1].inv())]
    } else {
        sols.undetermined += 1;
        vec![]
    };
    for r in roots {
        partial[var] = Some(r);
        back_substitute(gb, nvars, var, partial, sols);
    }
    partial[var] = None;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    #[test]
    fn rational_and_quadratic_roots() {
        // (x - 1/2)(x + 3)(x^2 - 2)
        let p = vec![q(3), q(-5), qr(-7, 2), qr(5, 2), q(1)];
        let (rat, quad) = real_roots(&p);
        assert_eq!(rat, vec![q(-3), qr(1, 2)]);
        assert_eq!(quad.len(), 2);
        assert!(quad.iter().all(|r| r.d == q(8)));
        // x^2 + 1 has no real roots
        assert_eq!(real_roots(&[q(1), q(0), q(1)]), (vec![], vec![]));
    }

    #[test]
    fn circle_meets_line() {
        let o = MonomialOrder::DegRevLex;
        let x = Poly::var(2, o, 0);
        let y = Poly::var(2, o, 1);
        let one = Poly::constant(2, o, q(1));
        let circle = x.mul(&x).add(&y.mul(&y)).sub(&one);
        let line = x.sub(&y);
        let s = solve_zero_dim(&[circle, line], 1000).unwrap().unwrap();
        assert_eq!(s.points.len(), 2);
        assert!(s.points.iter().all(|p| (p[0].to_f64() - p[1].to_f64()).abs() < 1e-12));
    }
}
