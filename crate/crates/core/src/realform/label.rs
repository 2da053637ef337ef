//! Real form label grammar and normalization.
//!
//! Labels are `+`-joined summands such as `su(1,2)+u(1)`. Signatures are
//! written with p <= q, and low-rank isomorphic aliases are rewritten to a
//! single representative so that comparisons are order- and alias-insensitive.

use crate::error::{Error, Result};
use crate::rootsys::{Series, SimpleType};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RealLabel {
    summands: Vec<String>,
}

const EXCEPTIONAL: &[&str] = &[
    "G2(2)", "G2c", "F4(4)", "F4(-20)", "F4c", "E6(6)", "E6(2)", "E6(-14)", "E6(-26)", "E6c", "E7(7)", "E7(-5)", "E7(-25)",
    "E7c", "E8(8)", "E8(-24)", "E8c", "G2(C)", "F4(C)", "E6(C)", "E7(C)", "E8(C)",
];

fn args(s: &str, head: &str) -> Option<Vec<String>> {
    let rest = s.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(rest.split(',').map(|x| x.trim().to_string()).collect())
}

fn num(s: &str) -> Option<usize> {
    s.parse().ok()
}

/// Normalize one summand; may expand into several (e.g. so(4) -> su(2)+su(2))
/// or vanish (su(1)).
fn normalize_summand(raw: &str) -> Result<Vec<String>> {
    let s: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.replace("⊕", "+");
    let bad = || Error::LabelToken(raw.to_string());
    if EXCEPTIONAL.contains(&s.as_str()) {
        return Ok(vec![s]);
    }
    if let Some(a) = args(&s, "so*") {
        let n = a.first().and_then(|x| num(x)).ok_or_else(bad)?;
        return Ok(match n {
            2 => vec!["u(1)".into()],
            4 => vec!["su(2)".into(), "sl(2,R)".into()],
            6 => vec!["su(1,3)".into()],
            _ if n % 2 == 0 => vec![format!("so*({n})")],
            _ => return Err(bad()),
        });
    }
    if s == "u(1)" {
        return Ok(vec![s]);
    }
    for head in ["su", "sl", "so", "sp"] {
        let Some(a) = args(&s, head) else { continue };
        return match (head, a.as_slice()) {
            ("sl", [n, f]) => {
                let n = num(n).ok_or_else(bad)?;
                match (f.as_str(), n) {
                    (_, 1) if f == "R" || f == "C" => Ok(vec![]),
                    ("H", 1) => Ok(vec!["su(2)".into()]),
                    ("R" | "H" | "C", _) => Ok(vec![format!("sl({n},{f})")]),
                    _ => Err(bad()),
                }
            }
            ("su", [n]) => {
                let n = num(n).ok_or_else(bad)?;
                Ok(if n <= 1 { vec![] } else { vec![format!("su({n})")] })
            }
            ("su", [p, qq]) => {
                let (mut p, mut qq) = (num(p).ok_or_else(bad)?, num(qq).ok_or_else(bad)?);
                if p > qq {
                    std::mem::swap(&mut p, &mut qq);
                }
                if p == 0 {
                    return normalize_summand(&format!("su({qq})"));
                }
                Ok(if (p, qq) == (1, 1) { vec!["sl(2,R)".into()] } else { vec![format!("su({p},{qq})")] })
            }
            ("so", [n]) => so_compact(num(n).ok_or_else(bad)?),
            ("so", [p, f]) if f == "C" => {
                let n = num(p).ok_or_else(bad)?;
                Ok(match n {
                    3 => vec!["sl(2,C)".into()],
                    4 => vec!["sl(2,C)".into(), "sl(2,C)".into()],
                    6 => vec!["sl(4,C)".into()],
                    _ => vec![format!("so({n},C)")],
                })
            }
            ("so", [p, qq]) => {
                let (mut p, mut qq) = (num(p).ok_or_else(bad)?, num(qq).ok_or_else(bad)?);
                if p > qq {
                    std::mem::swap(&mut p, &mut qq);
                }
                if p == 0 {
                    return so_compact(qq);
                }
                Ok(match (p, qq) {
                    (1, 1) => vec!["so(1,1)".into()],
                    (1, 2) => vec!["sl(2,R)".into()],
                    (1, 3) => vec!["sl(2,C)".into()],
                    (2, 2) => vec!["sl(2,R)".into(), "sl(2,R)".into()],
                    (2, 4) => vec!["su(2,2)".into()],
                    (1, 5) => vec!["sl(2,H)".into()],
                    (3, 3) => vec!["sl(4,R)".into()],
                    (2, 6) => vec!["so*(8)".into()],
                    _ => vec![format!("so({p},{qq})")],
                })
            }
            ("sp", [n]) => {
                let n = num(n).ok_or_else(bad)?;
                Ok(match n {
                    0 => vec![],
                    1 => vec!["su(2)".into()],
                    2 => vec!["so(5)".into()],
                    _ => vec![format!("sp({n})")],
                })
            }
            ("sp", [n, f]) if f == "R" || f == "C" => {
                let n = num(n).ok_or_else(bad)?;
                Ok(match (n, f.as_str()) {
                    (1, "R") => vec!["sl(2,R)".into()],
                    (2, "R") => vec!["so(2,3)".into()],
                    (1, "C") => vec!["sl(2,C)".into()],
                    (2, "C") => vec!["so(5,C)".into()],
                    _ => vec![format!("sp({n},{f})")],
                })
            }
            ("sp", [p, qq]) => {
                let (mut p, mut qq) = (num(p).ok_or_else(bad)?, num(qq).ok_or_else(bad)?);
                if p > qq {
                    std::mem::swap(&mut p, &mut qq);
                }
                if p == 0 {
                    return normalize_summand(&format!("sp({qq})"));
                }
                Ok(if (p, qq) == (1, 1) { vec!["so(1,4)".into()] } else { vec![format!("sp({p},{qq})")] })
            }
            _ => Err(bad()),
        };
    }
    Err(bad())
}

fn so_compact(n: usize) -> Result<Vec<String>> {
    Ok(match n {
        0 | 1 => vec![],
        2 => vec!["u(1)".into()],
        3 => vec!["su(2)".into()],
        4 => vec!["su(2)".into(), "su(2)".into()],
        6 => vec!["su(4)".into()],
        _ => vec![format!("so({n})")],
    })
}

fn is_abelian(s: &str) -> bool {
    s == "u(1)" || s == "so(1,1)"
}

impl RealLabel {
    pub fn parse(s: &str) -> Result<RealLabel> {
        let s = s.replace("⊕", "+");
        let mut summands = Vec::new();
        for part in split_top(&s) {
            if part.trim().is_empty() {
                return Err(Error::LabelToken(s.to_string()));
            }
            summands.extend(normalize_summand(part)?);
        }
        Ok(Self::from_summands(summands))
    }

    pub fn from_summands(mut summands: Vec<String>) -> RealLabel {
        summands.sort_by(|a, b| is_abelian(a).cmp(&is_abelian(b)).then_with(|| a.cmp(b)));
        RealLabel { summands }
    }

    pub fn summands(&self) -> &[String] {
        &self.summands
    }

    pub fn join(parts: &[RealLabel]) -> RealLabel {
        Self::from_summands(parts.iter().flat_map(|p| p.summands.clone()).collect())
    }
}

/// Split on '+' outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for RealLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.summands.join("+"))
    }
}

impl std::str::FromStr for RealLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// One real form of a simple type: its label and the type of its maximal
/// compact subalgebra.
#[derive(Clone, Debug)]
pub struct FormData {
    pub label: String,
    pub dim_k: usize,
    pub k_type: Vec<SimpleType>,
    pub k_torus: usize,
}

fn so_type(m: usize) -> (Vec<SimpleType>, usize) {
    match m {
        0 | 1 => (vec![], 0),
        2 => (vec![], 1),
        _ if m % 2 == 0 => (SimpleType::component(Series::D, m / 2), 0),
        _ => (SimpleType::component(Series::B, (m - 1) / 2), 0),
    }
}

fn so_dim(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Every real form of a simple type (isomorphism classes, one label each),
/// with the character determined by dim k. The first entry is compact.
pub fn forms_of(t: SimpleType) -> Vec<FormData> {
    let n = t.rank;
    let st = SimpleType::component;
    let mut v: Vec<FormData> = Vec::new();
    let mut push = |label: String, k: Vec<SimpleType>, torus: usize| {
        let dim_k = k.iter().map(|c| c.dim()).sum::<usize>() + torus;
        let label = RealLabel::parse(&label).map(|l| l.to_string()).unwrap_or(label);
        if v.iter().any(|f| f.label == label) {
            return;
        }
        v.push(FormData { label, dim_k, k_type: k, k_torus: torus });
    };
    match t.series {
        Series::A => {
            let m = n + 1;
            push(format!("su({m})"), st(Series::A, n), 0);
            let (k, tor) = so_type(m);
            push(format!("sl({m},R)"), k, tor);
            if m % 2 == 0 {
                push(format!("sl({},H)", m / 2), st(Series::C, m / 2), 0);
            }
            for p in 1..=m / 2 {
                let q = m - p;
                let mut k = st(Series::A, p - 1);
                k.extend(st(Series::A, q - 1));
                push(format!("su({p},{q})"), k, 1);
            }
        }
        Series::B | Series::D => {
            let m = if t.series == Series::B { 2 * n + 1 } else { 2 * n };
            let (k, tor) = so_type(m);
            push(format!("so({m})"), k, tor);
            if t.series == Series::D {
                push(format!("so*({m})"), st(Series::A, n - 1), 1);
            }
            for p in 1..=m / 2 {
                let (mut k, t1) = so_type(p);
                let (k2, t2) = so_type(m - p);
                k.extend(k2);
                push(format!("so({p},{})", m - p), k, t1 + t2);
            }
        }
        Series::C => {
            push(format!("sp({n})"), st(Series::C, n), 0);
            push(format!("sp({n},R)"), st(Series::A, n - 1), 1);
            for p in 1..=n / 2 {
                let mut k = st(Series::C, p);
                k.extend(st(Series::C, n - p));
                push(format!("sp({p},{})", n - p), k, 0);
            }
        }
        Series::G => {
            push("G2c".into(), st(Series::G, 2), 0);
            push("G2(2)".into(), vec![st(Series::A, 1)[0]; 2], 0);
        }
        Series::F => {
            push("F4c".into(), st(Series::F, 4), 0);
            push("F4(4)".into(), [st(Series::A, 1), st(Series::C, 3)].concat(), 0);
            push("F4(-20)".into(), st(Series::B, 4), 0);
        }
        Series::E => match n {
            6 => {
                push("E6c".into(), st(Series::E, 6), 0);
                push("E6(6)".into(), st(Series::C, 4), 0);
                push("E6(2)".into(), [st(Series::A, 1), st(Series::A, 5)].concat(), 0);
                push("E6(-14)".into(), st(Series::D, 5), 1);
                push("E6(-26)".into(), st(Series::F, 4), 0);
            }
            7 => {
                push("E7c".into(), st(Series::E, 7), 0);
                push("E7(7)".into(), st(Series::A, 7), 0);
                push("E7(-5)".into(), [st(Series::A, 1), st(Series::D, 6)].concat(), 0);
                push("E7(-25)".into(), st(Series::E, 6), 1);
            }
            _ => {
                push("E8c".into(), st(Series::E, 8), 0);
                push("E8(8)".into(), st(Series::D, 8), 0);
                push("E8(-24)".into(), [st(Series::A, 1), st(Series::E, 7)].concat(), 0);
            }
        },
    }
    // so(p,q) dims were computed from k types; check against the closed form
    for f in &v {
        debug_assert!(f.dim_k <= t.dim());
    }
    let _ = so_dim;
    v
}

pub fn character_of(t: SimpleType, f: &FormData) -> i64 {
    t.dim() as i64 - 2 * f.dim_k as i64
}

/// Label of the real form of type `t` with the given character.
pub fn label_for_character(t: SimpleType, character: i64) -> Option<String> {
    forms_of(t).into_iter().find(|f| character_of(t, f) == character).map(|f| f.label)
}

/// Label of the complex simple algebra of type `t` viewed as a real algebra.
pub fn complex_label(t: SimpleType) -> String {
    match t.series {
        Series::A => format!("sl({},C)", t.rank + 1),
        Series::B => RealLabel::parse(&format!("so({},C)", 2 * t.rank + 1)).unwrap().to_string(),
        Series::C => RealLabel::parse(&format!("sp({},C)", t.rank)).unwrap().to_string(),
        Series::D => RealLabel::parse(&format!("so({},C)", 2 * t.rank)).unwrap().to_string(),
        _ => format!("{}(C)", t),
    }
}

/// Type of a simple real form label (for summands of computed labels).
pub fn type_of_label(label: &str) -> Option<SimpleType> {
    crate::rootsys::all_types(8)
        .into_iter()
        .chain([SimpleType { series: Series::B, rank: 2 }, SimpleType { series: Series::A, rank: 1 }])
        .find(|&t| forms_of(t).iter().any(|f| f.label == label) || complex_label(t) == label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::all_types;

    #[test]
    fn normalization() {
        assert_eq!(RealLabel::parse("so(4,1)").unwrap().to_string(), "so(1,4)");
        assert_eq!(RealLabel::parse("so(6,3)").unwrap().to_string(), "so(3,6)");
        assert_eq!(RealLabel::parse("u(1)+su(1,2)").unwrap().to_string(), "su(1,2)+u(1)");
        assert_eq!(RealLabel::parse("su(1,2)⊕u(1)").unwrap().to_string(), "su(1,2)+u(1)");
        assert_eq!(RealLabel::parse("su(1,1)").unwrap().to_string(), "sl(2,R)");
        assert_eq!(RealLabel::parse("so(2,6)").unwrap().to_string(), "so*(8)");
        assert!(RealLabel::parse("xyz(3)").is_err());
        assert!(RealLabel::parse("su(2)+").is_err());
    }

    #[test]
    fn normalization_is_idempotent() {
        for s in ["so(6,3)+so(1,1)", "sl(2,R)+su(2)+u(1)", "E7(-25)+sl(2,R)", "so*(8)+so(1,7)", "sp(2,R)"] {
            let once = RealLabel::parse(s).unwrap().to_string();
            assert_eq!(RealLabel::parse(&once).unwrap().to_string(), once);
        }
    }

    #[test]
    fn characters_identify_forms() {
        for t in all_types(8) {
            let forms = forms_of(t);
            let mut chars: Vec<i64> = forms.iter().map(|f| character_of(t, f)).collect();
            assert_eq!(chars[0], -(t.dim() as i64));
            assert!(chars.contains(&(t.rank as i64)), "{t} has a split form");
            chars.sort();
            chars.dedup();
            assert_eq!(chars.len(), forms.len(), "{t}");
        }
        let a2 = SimpleType::new(Series::A, 2).unwrap();
        assert_eq!(label_for_character(a2, 2).unwrap(), "sl(3,R)");
    }
}
