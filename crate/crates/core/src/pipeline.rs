//! End-to-end runs: resolve a real form label, compute its maximal regular
//! rows (and S rows for shipped embeddings), and diff against the tables.

use crate::chevalley::ChevalleyAlgebra;
use crate::complexsub::{maximal_reductive_nonsemisimple, maximal_regular_semisimple, SubalgebraDescriptor};
use crate::error::{Error, Partial, Result};
use crate::golden::{golden_for, verify_covered, ComputedEntry, DiffReport, Flag, GroupKey};
use crate::realform::label::type_of_label;
use crate::realform::{enumerate_real_forms, RealFormSpec, RealLabel};
use crate::regreal::{regular_real_embeddings, Budget, RealEmbeddingRow, RealFormContext};
use crate::rootsys::RootSystem;
use crate::ssub::{builtin_embeddings, EmbeddingData, SOptions, SProblem};

pub struct ResolvedForm {
    pub rs: RootSystem,
    pub alg: ChevalleyAlgebra,
    pub form: RealFormSpec,
}

/// Find the census entry for a real form label such as "so(4,3)" or "G2(2)".
pub fn resolve_form(label: &str) -> Result<ResolvedForm> {
    let norm = RealLabel::parse(label)?;
    let [single] = norm.summands() else {
        return Err(Error::UnknownLabel(label.to_string()));
    };
    let ty = type_of_label(single).ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    let rs = RootSystem::from_type(ty)?;
    let alg = ChevalleyAlgebra::new(&rs);
    let form = enumerate_real_forms(&alg)
        .into_iter()
        .find(|f| f.label == *single)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    Ok(ResolvedForm { rs, alg, form })
}

/// Maximal regular targets: prime-mark semisimple ones, then Levi ones.
pub fn maximal_targets(rs: &RootSystem) -> Vec<SubalgebraDescriptor> {
    let mut v = maximal_regular_semisimple(rs).items;
    v.extend(maximal_reductive_nonsemisimple(rs).items);
    v
}

pub type RowsResult = std::result::Result<Vec<RealEmbeddingRow>, Partial<Vec<RealEmbeddingRow>>>;

/// Run every target in order on the current thread.
pub fn serial_rows(ctx: &RealFormContext, targets: &[SubalgebraDescriptor], budget: Budget) -> Vec<RowsResult> {
    targets.iter().map(|t| regular_real_embeddings(ctx, t, None, budget)).collect()
}

/// Concatenate per-target results, stopping at the first partial one.
pub fn collect_rows(results: Vec<RowsResult>) -> RowsResult {
    let mut out = Vec::new();
    for r in results {
        match r {
            Ok(rows) => out.extend(rows),
            Err(p) => {
                out.extend(p.found);
                return Err(Partial { found: out, reason: p.reason });
            }
        }
    }
    Ok(out)
}

pub fn regular_rows(ctx: &RealFormContext, budget: Budget) -> RowsResult {
    collect_rows(serial_rows(ctx, &maximal_targets(&ctx.rs), budget))
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub budget: Budget,
    pub include_s: bool,
    pub s: SOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { budget: Budget::default(), include_s: true, s: SOptions::default() }
    }
}

/// Computed entries for a form: all R rows and the S rows of the shipped
/// embeddings into its complex type. Also returns the S groups covered.
pub fn compute_entries(
    resolved: &ResolvedForm,
    opts: &VerifyOptions,
) -> std::result::Result<(Vec<ComputedEntry>, Vec<GroupKey>), Partial<Vec<ComputedEntry>>> {
    compute_entries_with(resolved, opts, |ctx, targets| serial_rows(ctx, targets, opts.budget))
}

/// As `compute_entries`, with the per-target regular runs delegated to
/// `run` (which must return results in target order).
pub fn compute_entries_with<F>(
    resolved: &ResolvedForm,
    opts: &VerifyOptions,
    run: F,
) -> std::result::Result<(Vec<ComputedEntry>, Vec<GroupKey>), Partial<Vec<ComputedEntry>>>
where
    F: Fn(&RealFormContext, &[SubalgebraDescriptor]) -> Vec<RowsResult>,
{
    let ctx = RealFormContext::new(&resolved.form, &resolved.rs, opts.budget.weyl_limit)
        .map_err(|e| Partial { found: vec![], reason: e.to_string() })?;
    let to_entry = |r: RealEmbeddingRow| ComputedEntry {
        complex_type: r.subalgebra_complex_type,
        flag: Flag::R,
        label: r.real_sublabel,
        multiplicity: Some(r.multiplicity),
    };
    let mut entries: Vec<ComputedEntry> = match collect_rows(run(&ctx, &maximal_targets(&ctx.rs))) {
        Ok(rows) => rows.into_iter().map(to_entry).collect(),
        Err(p) => return Err(Partial { found: p.found.into_iter().map(to_entry).collect(), reason: p.reason }),
    };
    let mut covered = Vec::new();
    if opts.include_s {
        for emb in builtin_embeddings().map_err(|e| Partial { found: entries.clone(), reason: e.to_string() })? {
            if emb.ambient_type != resolved.rs.label() || !emb.maximal {
                continue;
            }
            let fail = |e: Error| Partial { found: entries.clone(), reason: e.to_string() };
            let labels = s_sublabels_in(&emb, &resolved.form.label, &opts.s).map_err(fail)?;
            covered.push(GroupKey::new(&emb.sub_type, Flag::S).map_err(fail)?);
            for l in labels {
                entries.push(ComputedEntry { complex_type: emb.sub_type.clone(), flag: Flag::S, label: l, multiplicity: None });
            }
        }
    }
    Ok((entries, covered))
}

/// Run the pipelines for `label` and diff against its golden table.
pub fn verify_form(label: &str, opts: &VerifyOptions) -> Result<DiffReport> {
    verify_form_with(label, opts, |ctx, targets| serial_rows(ctx, targets, opts.budget))
}

pub fn verify_form_with<F>(label: &str, opts: &VerifyOptions, run: F) -> Result<DiffReport>
where
    F: Fn(&RealFormContext, &[SubalgebraDescriptor]) -> Vec<RowsResult>,
{
    let resolved = resolve_form(label)?;
    let golden = golden_for(&resolved.form.label)?
        .ok_or_else(|| Error::UnknownLabel(format!("{label} (no table)")))?;
    let (entries, covered) = compute_entries_with(&resolved, opts, run).map_err(|p| Error::Budget(p.reason))?;
    verify_covered(&resolved.form.label, &entries, &golden, |k| k.flag == Flag::R || covered.contains(k))
}

/// Real forms of the subalgebra of `emb` that sit inside the ambient form
/// `ambient_label`.
pub fn s_sublabels_in(emb: &EmbeddingData, ambient_label: &str, opts: &SOptions) -> Result<Vec<String>> {
    let problem = SProblem::new(emb)?;
    let mut out = std::collections::BTreeSet::new();
    for report in problem.run_all(opts)? {
        if report.labels.iter().any(|l| l == ambient_label) {
            out.insert(report.sub_form);
        }
    }
    Ok(out.into_iter().collect())
}
