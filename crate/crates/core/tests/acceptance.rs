//! One PASS/FAIL line per acceptance criterion. Run with `--nocapture` to
//! see the lines; each test also fails on its own criterion.

mod common;

use common::*;
use liereal::golden::{Flag, GoldenTable};
use liereal::pipeline::{compute_entries, resolve_form, s_sublabels_in, verify_form, VerifyOptions};
use liereal::realform::enumerate_real_forms;
use liereal::regreal::Budget;
use liereal::chevalley::ChevalleyAlgebra;
use liereal::rootsys::{all_types, RootSystem};
use liereal::ssub::{builtin_embeddings, SOptions};
use liereal::Error;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

// Pinned wall-clock tolerances, one per criterion.
const T1: Duration = Duration::from_secs(1);
const T2: Duration = Duration::from_secs(1);
const T3: Duration = Duration::from_secs(10);
const T4: Duration = Duration::from_secs(300);
const T5: Duration = Duration::from_secs(600);
const T6: Duration = Duration::from_secs(600);

fn report(n: u32, what: &str, ok: bool, elapsed: Duration, limit: Option<Duration>, detail: &[String]) {
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let verdict = if ok && in_time { "PASS" } else { "FAIL" };
    let limit = limit.map_or(String::new(), |l| format!(" / {:.0?}", l));
    println!("criterion {n}: {verdict} {what} ({:.2?}{limit})", elapsed);
    for d in detail {
        println!("    {d}");
    }
    assert!(ok, "criterion {n} failed: {detail:?}");
    assert!(in_time, "criterion {n} over time: {elapsed:?}");
}

#[test]
fn criterion_1_levi_maxima() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for t in all_types(8) {
        let rs = RootSystem::from_type(t).unwrap();
        let got = levi_maxima_computed(&rs);
        let want = levi_maxima_oracle(t.series, t.rank);
        if got != want {
            bad.push(format!("{}: computed {got:?} expected {want:?}", rs.label()));
        }
    }
    report(1, "maximal reductive non-semisimple, rank <= 8", bad.is_empty(), start.elapsed(), Some(T1), &bad);
}

#[test]
fn criterion_2_prime_marks() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for ty in ["G2", "F4", "B3", "C3", "D4"] {
        let got = prime_mark_computed(&RootSystem::parse(ty).unwrap());
        let want = semisimple_r_rows(prime_mark_tables(ty));
        if got != want {
            bad.push(format!("{ty}: computed {got:?} expected {want:?}"));
        }
    }
    // the worked examples, spelled out
    let f4: BTreeSet<String> = ["A2+A2", "A1+C3", "B4"].iter().map(|s| norm_type(s)).collect();
    let g2: BTreeSet<String> = ["A2", "A1+A1"].iter().map(|s| norm_type(s)).collect();
    if prime_mark_computed(&RootSystem::parse("F4").unwrap()) != f4 {
        bad.push("F4 example".into());
    }
    if prime_mark_computed(&RootSystem::parse("G2").unwrap()) != g2 {
        bad.push("G2 example".into());
    }
    report(2, "prime-mark deletions for G2 F4 B3 C3 D4", bad.is_empty(), start.elapsed(), Some(T2), &bad);
}

#[test]
fn criterion_3_census() {
    let start = Instant::now();
    let expected: &[(&str, &[&str])] = &[
        ("A1", &["su(2)", "sl(2,R)"]),
        ("A2", &["su(3)", "su(1,2)", "sl(3,R)"]),
        ("D4", &["so(8)", "so(1,7)", "so(2,6)", "so(3,5)", "so(4,4)", "so*(8)"]),
        ("G2", &["G2c", "G2(2)"]),
        ("F4", &["F4c", "F4(-20)", "F4(4)"]),
        ("E6", &["E6c", "E6(-26)", "E6(-14)", "E6(2)", "E6(6)"]),
    ];
    let mut bad = Vec::new();
    for (ty, labels) in expected {
        let alg = ChevalleyAlgebra::new(&RootSystem::parse(ty).unwrap());
        let got: Vec<String> = enumerate_real_forms(&alg).into_iter().map(|f| f.label).collect();
        let got_set: BTreeSet<&str> = got.iter().map(|s| s.as_str()).collect();
        let want_set: BTreeSet<&str> = labels.iter().copied().collect();
        if got.len() != labels.len() || got_set != want_set {
            bad.push(format!("{ty}: computed {} {got:?} expected {} {labels:?}", got.len(), labels.len()));
        }
    }
    // the rest of the census up to rank 6 must run inside the same budget
    for t in all_types(6) {
        let alg = ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap());
        if enumerate_real_forms(&alg).is_empty() {
            bad.push(format!("{t}: empty census"));
        }
    }
    report(3, "real-form census", bad.is_empty(), start.elapsed(), Some(T3), &bad);
}

#[test]
fn criterion_4_rank_three_tables() {
    let start = Instant::now();
    let forms = [
        "su(1,2)", "sl(3,R)", "so(2,3)", "so(4,1)", "G2(2)", "su(1,3)", "su(2,2)", "sl(2,H)", "sl(4,R)", "so(2,5)",
        "so(4,3)", "so(6,1)", "sp(1,2)", "sp(3,R)",
    ];
    let opts = VerifyOptions { include_s: false, ..VerifyOptions::default() };
    let mut bad = Vec::new();
    for f in forms {
        let r = verify_form(f, &opts).unwrap();
        if !r.passed() {
            bad.push(r.to_string().trim_end().replace('\n', "\n    "));
        }
    }
    report(4, "R rows of 14 rank <= 3 tables", bad.is_empty(), start.elapsed(), Some(T4), &bad);
}

fn golden_count(t: &GoldenTable, ty: &str, label: &str) -> usize {
    let key = norm_type(ty);
    t.rows
        .iter()
        .filter(|r| r.flag == Flag::R && semisimple_key(&r.complex_type) == semisimple_key(&key))
        .flat_map(|r| &r.real_sublabels)
        .filter(|l| l.label == norm_label(label))
        .map(|l| l.multiplicity)
        .sum()
}

fn semisimple_key(s: &str) -> String {
    liereal::rootsys::TypeLabel::parse(s).unwrap().semisimple().to_string()
}

fn computed_count(form: &str, ty: &str, label: &str) -> usize {
    let resolved = resolve_form(form).unwrap();
    let opts = VerifyOptions { include_s: false, ..VerifyOptions::default() };
    let (entries, _) = compute_entries(&resolved, &opts).unwrap();
    entries
        .iter()
        .filter(|e| semisimple_key(&e.complex_type) == semisimple_key(ty))
        .filter(|e| norm_label(&e.label) == norm_label(label))
        .map(|e| e.multiplicity.unwrap())
        .sum()
}

#[test]
fn criterion_5_rank_four_spot_checks() {
    let start = Instant::now();
    let checks = [
        ("so(4,4)", "so44", "A3+T1", "su(2,2)+u(1)", 6),
        ("so(4,4)", "so44", "A1+A1+A1+A1", "sl(2,C)+sl(2,C)", 3),
        ("F4(4)", "F44", "B4", "so(4,5)", 1),
    ];
    let mut bad = Vec::new();
    for (form, tab, ty, label, stated) in checks {
        let golden = golden_count(&table(tab), ty, label);
        let got = computed_count(form, ty, label);
        if golden != stated || got != golden {
            bad.push(format!("{form} {ty} {label}: computed {got} table {golden} stated {stated}"));
        }
    }
    report(5, "so(4,4) and F4(4) rows", bad.is_empty(), start.elapsed(), Some(T5), &bad);
}

fn golden_s_labels(tab: &str, ty: &str) -> BTreeSet<String> {
    table(tab)
        .rows
        .iter()
        .filter(|r| r.flag == Flag::S && norm_type(&r.complex_type) == norm_type(ty))
        .flat_map(|r| r.real_sublabels.iter().map(|l| l.label.clone()))
        .collect()
}

#[test]
fn criterion_6_s_flagships() {
    let start = Instant::now();
    let embs = builtin_embeddings().unwrap();
    let get = |name: &str| embs.iter().find(|e| e.name == name).unwrap().clone();
    let cases = [
        ("A1-principal-A2", "sl(3,R)", "sl3R", "A1"),
        ("A1-principal-A2", "su(1,2)", "su12", "A1"),
        ("B2-A3", "su(2,2)", "su22", "B2"),
        ("B2-A3", "sl(4,R)", "sl4R", "B2"),
        ("B2-A3", "sl(2,H)", "sl2H", "B2"),
    ];
    let mut bad = Vec::new();
    for (emb, form, tab, ty) in cases {
        let t = Instant::now();
        let got: BTreeSet<String> =
            s_sublabels_in(&get(emb), &norm_label(form), &SOptions::default()).unwrap().into_iter().collect();
        let want = golden_s_labels(tab, ty);
        if got != want {
            bad.push(format!("{emb} in {form}: computed {got:?} table {want:?}"));
        }
        if t.elapsed() > T6 {
            bad.push(format!("{emb} in {form}: {:?}", t.elapsed()));
        }
    }
    // the stated sets, independent of the transcription
    let stated: [(&str, &[&str]); 5] = [
        ("sl3R", &["sl(2,R)", "su(2)"]),
        ("su12", &["sl(2,R)"]),
        ("su22", &["so(2,3)", "so(4,1)"]),
        ("sl4R", &["so(2,3)"]),
        ("sl2H", &["so(5)", "so(4,1)"]),
    ];
    for ((_, _, tab, ty), (_, labels)) in cases.iter().zip(stated) {
        let want: BTreeSet<String> = labels.iter().map(|l| norm_label(l)).collect();
        if golden_s_labels(tab, ty) != want {
            bad.push(format!("{tab}: transcription differs from {want:?}"));
        }
    }
    report(6, "S rows for principal A1 in A2 and B2 in A3", bad.is_empty(), start.elapsed(), None, &bad);
}

#[test]
fn criterion_7_properties() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for t in all_types(4) {
        let alg = ChevalleyAlgebra::new(&RootSystem::from_type(t).unwrap());
        if !jacobi_holds(&alg) {
            bad.push(format!("Jacobi fails for {t}"));
        }
    }
    bad.extend(involution_checks(4).into_iter().map(|l| format!("involution checks fail for {l}")));
    bad.extend(signature_checks(4));
    let (runs, pbad) = partition_checks(4);
    bad.extend(pbad.into_iter().map(|s| format!("partition sum: {s}")));
    bad.extend(gb_checks());
    let what = format!("Jacobi, involutions, signatures, {runs} partition sums, 20 GB systems");
    report(7, &what, bad.is_empty() && runs > 0, start.elapsed(), None, &bad);
}

#[test]
fn criterion_8_desk_scale_limits() {
    // Declared out of CI scope. What is checked: the default budget refuses
    // E7 and E8 cleanly rather than running away.
    let start = Instant::now();
    let mut bad = Vec::new();
    for form in ["E7(7)", "E8(8)"] {
        match verify_form(form, &VerifyOptions::default()) {
            Err(Error::Budget(_)) => {}
            other => bad.push(format!("{form}: expected a budget error, got {:?}", other.map(|r| r.verdict))),
        }
    }
    report(8, "E7/E8 stay behind the budget", bad.is_empty(), start.elapsed(), None, &bad);
}

/// Extended spot check: the A2+A2+A2 row of the E6(6) table.
#[test]
#[ignore]
fn extended_e6_split_a2_cubed() {
    let start = Instant::now();
    let resolved = resolve_form("E6(6)").unwrap();
    let opts = VerifyOptions {
        include_s: false,
        budget: Budget { weyl_limit: 10_000_000, orbit_limit: 100_000_000 },
        ..VerifyOptions::default()
    };
    let (entries, _) = compute_entries(&resolved, &opts).unwrap();
    let got: BTreeSet<(String, usize)> = entries
        .iter()
        .filter(|e| semisimple_key(&e.complex_type) == norm_type("A2+A2+A2"))
        .map(|e| (norm_label(&e.label), e.multiplicity.unwrap()))
        .collect();
    let want: BTreeSet<(String, usize)> = table("e66")
        .rows
        .iter()
        .filter(|r| r.flag == Flag::R && norm_type(&r.complex_type) == norm_type("A2+A2+A2"))
        .flat_map(|r| r.real_sublabels.iter().map(|l| (l.label.clone(), l.multiplicity)))
        .collect();
    let detail = vec![format!("computed {got:?} table {want:?}")];
    report(8, "extended: E6(6) A2+A2+A2 row", got == want && !want.is_empty(), start.elapsed(), None, &detail);
}
