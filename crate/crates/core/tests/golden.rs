mod common;

use liereal::golden::{builtin_names, builtin_tables, entries_of, golden_for, parse_golden, verify, Flag};
use liereal::realform::RealLabel;
use liereal::rootsys::TypeLabel;

#[test]
fn manifest_has_every_table() {
    assert_eq!(builtin_names().len(), 131);
    assert_eq!(builtin_tables().unwrap().len(), 131);
}

#[test]
fn every_label_and_type_parses() {
    for t in builtin_tables().unwrap() {
        RealLabel::parse(&t.ambient_label).unwrap();
        for row in &t.rows {
            TypeLabel::parse(&row.complex_type).unwrap_or_else(|e| panic!("{}: {e}", t.source));
            for l in &row.real_sublabels {
                assert!(l.multiplicity >= 1, "{}", t.source);
                RealLabel::parse(&l.label).unwrap_or_else(|e| panic!("{}: {e}", t.source));
            }
        }
    }
}

#[test]
fn tables_verify_against_themselves() {
    for t in builtin_tables().unwrap() {
        let r = verify(&t.ambient_label, &entries_of(&t), &t).unwrap();
        assert!(r.passed(), "{}\n{r}", t.source);
    }
}

#[test]
fn lookup_is_order_insensitive() {
    let a = golden_for("so(4,1)").unwrap().unwrap();
    let b = golden_for("so(1,4)").unwrap().unwrap();
    assert_eq!(a, b);
    assert_eq!(common::norm_label("so(6,3)"), "so(3,6)");
}

#[test]
fn perturbed_multiplicity_is_caught() {
    let mut t = common::table("su22");
    let row = t.rows.iter_mut().find(|r| r.flag == Flag::R).unwrap();
    let golden = common::table("su22");
    row.real_sublabels[0].multiplicity += 1;
    let r = verify("su(2,2)", &entries_of(&t), &golden).unwrap();
    assert!(!r.passed());
    assert_eq!(r.multiplicity_mismatches.len(), 1);
}

#[test]
fn rejects_malformed_json() {
    assert!(parse_golden("{\"source\": 1}").is_err());
}
