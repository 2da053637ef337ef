//! Golden tables of maximal subalgebras and the diff against computed rows.

use crate::error::{Error, Result};
use crate::realform::RealLabel;
use crate::rootsys::TypeLabel;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

mod index {
    include!(concat!(env!("OUT_DIR"), "/golden_index.rs"));
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Flag {
    R,
    S,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::R => "R",
            Flag::S => "S",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenLabel {
    pub label: String,
    pub multiplicity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub complex_type: String,
    pub flag: Flag,
    pub real_sublabels: Vec<GoldenLabel>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dynkin_index: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub source: String,
    pub caption: String,
    pub ambient_label: String,
    pub rows: Vec<GoldenRow>,
}

/// Parse and normalize a golden table.
pub fn parse_golden(text: &str) -> Result<GoldenTable> {
    let mut t: GoldenTable =
        serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), column: e.column(), msg: e.to_string() })?;
    t.ambient_label = RealLabel::parse(&t.ambient_label)?.to_string();
    for row in &mut t.rows {
        row.complex_type = TypeLabel::parse(&row.complex_type)?.to_string();
        for l in &mut row.real_sublabels {
            l.label = RealLabel::parse(&l.label)?.to_string();
            if l.multiplicity == 0 {
                return Err(Error::Parse { line: 0, column: 0, msg: format!("zero multiplicity for {}", l.label) });
            }
        }
    }
    Ok(t)
}

pub fn load_golden(path: impl AsRef<Path>) -> Result<GoldenTable> {
    parse_golden(&std::fs::read_to_string(path)?)
}

/// Names (file stems) of the tables shipped with the crate.
pub fn builtin_names() -> Vec<&'static str> {
    index::TABLES.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Option<Result<GoldenTable>> {
    index::TABLES.iter().find(|(n, _)| *n == name).map(|(_, t)| parse_golden(t))
}

pub fn builtin_tables() -> Result<Vec<GoldenTable>> {
    index::TABLES.iter().map(|(_, t)| parse_golden(t)).collect()
}

/// The shipped table whose ambient label matches `form_label` after
/// normalization.
pub fn golden_for(form_label: &str) -> Result<Option<GoldenTable>> {
    let want = RealLabel::parse(form_label)?.to_string();
    Ok(builtin_tables()?.into_iter().find(|t| t.ambient_label == want))
}

/// Row groups are keyed by the semisimple part of the complex type and the
/// flag; tables sometimes omit the centre of reductive rows.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GroupKey {
    pub complex_type: String,
    pub flag: Flag,
}

impl GroupKey {
    pub fn new(complex_type: &str, flag: Flag) -> Result<GroupKey> {
        Ok(GroupKey { complex_type: TypeLabel::parse(complex_type)?.semisimple().to_string(), flag })
    }
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.complex_type, self.flag)
    }
}

/// One computed (type, label) entry. `multiplicity` is None when only
/// existence is known.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComputedEntry {
    pub complex_type: String,
    pub flag: Flag,
    pub label: String,
    pub multiplicity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDiff {
    pub group: GroupKey,
    pub label: String,
    pub multiplicity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityMismatch {
    pub group: GroupKey,
    pub label: String,
    pub expected: usize,
    pub computed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelMismatch {
    pub group: GroupKey,
    pub expected: String,
    pub computed: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub form: String,
    pub missing_rows: Vec<RowDiff>,
    pub extra_rows: Vec<RowDiff>,
    pub multiplicity_mismatches: Vec<MultiplicityMismatch>,
    pub label_mismatches: Vec<LabelMismatch>,
    /// Golden groups the computation did not cover.
    pub unchecked: Vec<GroupKey>,
    pub verdict: Verdict,
}

impl DiffReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

impl fmt::Display for DiffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify {}: {}", self.form, if self.passed() { "PASS" } else { "FAIL" })?;
        for d in &self.missing_rows {
            writeln!(f, "  missing   {:<24} {}{}", d.group.to_string(), d.label, mult(d.multiplicity))?;
        }
        for d in &self.extra_rows {
            writeln!(f, "  extra     {:<24} {}{}", d.group.to_string(), d.label, mult(d.multiplicity))?;
        }
        for d in &self.multiplicity_mismatches {
            writeln!(f, "  count     {:<24} {} expected {} computed {}", d.group.to_string(), d.label, d.expected, d.computed)?;
        }
        for d in &self.label_mismatches {
            writeln!(f, "  label     {:<24} expected {} computed {}", d.group.to_string(), d.expected, d.computed)?;
        }
        for g in &self.unchecked {
            writeln!(f, "  unchecked {}", g)?;
        }
        Ok(())
    }
}

fn mult(m: Option<usize>) -> String {
    match m {
        Some(k) if k > 1 => format!(" ({k}x)"),
        _ => String::new(),
    }
}

type Groups = BTreeMap<GroupKey, BTreeMap<String, Option<usize>>>;

fn golden_groups(golden: &GoldenTable) -> Result<Groups> {
    let mut g: Groups = BTreeMap::new();
    for row in &golden.rows {
        let e = g.entry(GroupKey::new(&row.complex_type, row.flag)?).or_default();
        for l in &row.real_sublabels {
            let m = e.entry(l.label.clone()).or_insert(Some(0));
            *m = Some(m.unwrap() + l.multiplicity);
        }
    }
    Ok(g)
}

fn computed_groups(computed: &[ComputedEntry]) -> Result<Groups> {
    let mut g: Groups = BTreeMap::new();
    for c in computed {
        let label = RealLabel::parse(&c.label)?.to_string();
        let e = g.entry(GroupKey::new(&c.complex_type, c.flag)?).or_default();
        let m = e.entry(label).or_insert(Some(0));
        *m = match (*m, c.multiplicity) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
    }
    Ok(g)
}

/// Compare every group.
pub fn verify(form: &str, computed: &[ComputedEntry], golden: &GoldenTable) -> Result<DiffReport> {
    verify_covered(form, computed, golden, |_| true)
}

/// Compare the golden groups accepted by `covered`; the rest are listed as
/// unchecked. R groups compare multiplicities; S groups compare existence,
/// except A1 groups whose golden and computed sides both carry counts.
pub fn verify_covered(
    form: &str,
    computed: &[ComputedEntry],
    golden: &GoldenTable,
    covered: impl Fn(&GroupKey) -> bool,
) -> Result<DiffReport> {
    let gold = golden_groups(golden)?;
    let comp = computed_groups(computed)?;
    let mut report = DiffReport {
        form: RealLabel::parse(form)?.to_string(),
        missing_rows: vec![],
        extra_rows: vec![],
        multiplicity_mismatches: vec![],
        label_mismatches: vec![],
        unchecked: vec![],
        verdict: Verdict::Pass,
    };
    let keys: BTreeSet<&GroupKey> = gold.keys().chain(comp.keys()).collect();
    let empty = BTreeMap::new();
    for key in keys {
        if gold.contains_key(key) && !covered(key) {
            report.unchecked.push(key.clone());
            continue;
        }
        let g = gold.get(key).unwrap_or(&empty);
        let c = comp.get(key).unwrap_or(&empty);
        let counts_matter = key.flag == Flag::R || key.complex_type == "A1";
        let mut missing = Vec::new();
        let mut extra = Vec::new();
        for (label, gm) in g {
            match c.get(label) {
                None => missing.push(RowDiff { group: key.clone(), label: label.clone(), multiplicity: *gm }),
                Some(cm) => {
                    if let (true, Some(e), Some(k)) = (counts_matter, gm, cm) {
                        if e != k && (key.flag == Flag::R || *e > 1) {
                            report.multiplicity_mismatches.push(MultiplicityMismatch {
                                group: key.clone(),
                                label: label.clone(),
                                expected: *e,
                                computed: *k,
                            });
                        }
                    }
                }
            }
        }
        for (label, cm) in c {
            if !g.contains_key(label) {
                extra.push(RowDiff { group: key.clone(), label: label.clone(), multiplicity: *cm });
            }
        }
        if missing.len() == 1 && extra.len() == 1 {
            report.label_mismatches.push(LabelMismatch {
                group: key.clone(),
                expected: missing.remove(0).label,
                computed: extra.remove(0).label,
            });
        }
        report.missing_rows.extend(missing);
        report.extra_rows.extend(extra);
    }
    if !(report.missing_rows.is_empty()
        && report.extra_rows.is_empty()
        && report.multiplicity_mismatches.is_empty()
        && report.label_mismatches.is_empty())
    {
        report.verdict = Verdict::Fail;
    }
    Ok(report)
}

/// Golden rows flattened into entries, as if computed.
pub fn entries_of(golden: &GoldenTable) -> Vec<ComputedEntry> {
    golden
        .rows
        .iter()
        .flat_map(|r| {
            r.real_sublabels.iter().map(move |l| ComputedEntry {
                complex_type: r.complex_type.clone(),
                flag: r.flag,
                label: l.label.clone(),
                multiplicity: Some(l.multiplicity),
            })
        })
        .collect()
}
