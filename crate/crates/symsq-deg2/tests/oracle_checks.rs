//! Frozen-value and independent-oracle checks: every derived quantity with
//! a second route is pinned here against that route, and the outcomes of
//! the reference cross-checks are frozen so any drift in either direction
//! fails loudly.

use std::collections::BTreeSet;

use symsq_deg2::{
    fixture_tables, invariants_irreducible, macbeath_nu, nu_oracle, printed_reference,
    search_families, verify_family, verify_printed_row, CandidateTuple, CurveAction,
    GroupElement, SearchBounds, UNEXPECTED_LABEL,
};

/// The admissible-profile enumeration in its deterministic output order.
const FROZEN_CANDIDATE_ORDER: [(u32, u32, u32, u32); 28] = [
    (0, 0, 0, 0),
    (0, 0, 0, 4),
    (0, 0, 0, 8),
    (0, 0, 0, 12),
    (0, 0, 4, 0),
    (0, 0, 4, 4),
    (0, 0, 4, 8),
    (0, 0, 8, 0),
    (0, 0, 8, 4),
    (0, 0, 12, 0),
    (0, 2, 0, 0),
    (0, 2, 0, 4),
    (0, 2, 0, 8),
    (0, 2, 4, 0),
    (0, 2, 4, 4),
    (0, 2, 8, 0),
    (0, 4, 0, 0),
    (2, 0, 2, 0),
    (2, 0, 2, 4),
    (2, 0, 2, 8),
    (2, 0, 6, 0),
    (2, 0, 6, 4),
    (2, 0, 10, 0),
    (2, 2, 2, 0),
    (4, 0, 0, 0),
    (4, 0, 0, 4),
    (4, 0, 4, 0),
    (4, 2, 0, 0),
];

#[test]
fn candidate_enumeration_order_is_frozen() {
    let got: Vec<(u32, u32, u32, u32)> = symsq_deg2::enumerate_candidates_l_ge4()
        .into_iter()
        .map(|c| (c.t, c.r, c.s, c.k))
        .collect();
    assert_eq!(got, FROZEN_CANDIDATE_ORDER.to_vec());
}

#[test]
fn candidate_tuples_serialize_by_field_name() {
    let tuple = CandidateTuple {
        t: 2,
        r: 0,
        s: 6,
        k: 4,
    };
    let json = serde_json::to_string(&tuple).expect("candidate tuples serialize");
    let back: CandidateTuple = serde_json::from_str(&json).expect("and deserialize");
    assert_eq!(back, tuple);
    assert!(json.contains("\"t\":2"), "field names survive: {json}");
}

#[test]
fn every_stored_record_recomputes_cleanly_from_its_vector() {
    let records = fixture_tables().expect("the reference tables must build");
    assert_eq!(records.len(), 17);
    for record in &records {
        let report = verify_family(record).expect("recomputation must run");
        assert!(
            report.clean(),
            "record {} drifted from its recomputation: {:?}",
            record.label,
            report.diffs
        );
        assert_eq!(
            report.elements_cross_checked,
            record.group.order() - 1,
            "every non-identity element of {} is cross-checked",
            record.label
        );
    }
}

#[test]
fn printed_row_cross_check_outcomes_are_frozen() {
    let records = fixture_tables().expect("the reference tables must build");
    for row in printed_reference() {
        let report = verify_printed_row(&row, &records).expect("the cross-check must run");
        let diff_fields: Vec<&str> = report.diffs.iter().map(|d| d.field.as_str()).collect();
        match row.label {
            "D10.1" => {
                assert!(report.vector_valid, "the D10.1 printed vector is valid");
                assert_eq!(
                    diff_fields,
                    vec!["signature"],
                    "D10.1 carries exactly the transposed-signature defect"
                );
            }
            "D10.3" => {
                assert!(
                    !report.vector_valid,
                    "the D10.3 printed vector fails generation"
                );
                let detail = report.vector_detail.as_deref().unwrap_or_default();
                assert!(
                    detail.contains("proper subgroup"),
                    "the failure is a generation failure, not product-one: {detail}"
                );
                assert!(diff_fields.is_empty(), "no column defects on D10.3");
            }
            "D4.1" | "D4.2" | "D4.3" => {
                assert!(report.vector_valid, "{} vector is valid", row.label);
                assert_eq!(
                    diff_fields,
                    vec!["g_C"],
                    "{} carries exactly the halved-denominator genus defect",
                    row.label
                );
                let diff = &report.diffs[0];
                assert_eq!(diff.stored, "4", "{} stored value", row.label);
                assert_eq!(diff.recomputed, "2", "{} recomputed value", row.label);
            }
            _ => {
                assert!(
                    report.clean(),
                    "row {} must be defect-free, found {:?} (vector valid: {})",
                    row.label,
                    diff_fields,
                    report.vector_valid
                );
            }
        }
    }
}

#[test]
fn the_two_families_beyond_the_reference_tables_certify_independently() {
    let search = search_families(3, &SearchBounds::default()).expect("the search must run");
    let extras: Vec<_> = search
        .families
        .iter()
        .filter(|f| f.label == UNEXPECTED_LABEL)
        .collect();
    let profiles: BTreeSet<(u32, u32, u32, u32, u32)> = extras
        .iter()
        .map(|f| (f.pair.t, f.pair.r, f.pair.s, f.pair.k, f.pair.p))
        .collect();
    assert_eq!(
        profiles,
        BTreeSet::from([(0, 0, 8, 0, 12), (2, 0, 10, 0, 6)]),
        "exactly two families beyond the tables, at these profiles"
    );

    for record in extras {
        record
            .vector
            .validate()
            .expect("the extra family's vector must satisfy product-one and generation");
        let action =
            CurveAction::new(record.vector.clone()).expect("the action must build");
        let derived = invariants_irreducible(
            &action,
            GroupElement::reflection(1),
            GroupElement::reflection(0),
        )
        .expect("the pair invariants must derive");
        assert_eq!(
            derived, record.pair,
            "an independent rebuild reproduces every stored invariant"
        );
        for gamma in record.group.elements() {
            if gamma.is_identity() {
                continue;
            }
            assert_eq!(
                macbeath_nu(&action, gamma).unwrap(),
                nu_oracle(&action, gamma).unwrap(),
                "fixed-point routes agree on {gamma}"
            );
        }
        let report = verify_family(record).expect("the standard verifier must run");
        assert!(
            report.clean(),
            "the extra family passes the same verification as the listed ten: {:?}",
            report.diffs
        );
    }
}

#[test]
fn fixed_point_routes_agree_on_every_reference_action() {
    for record in fixture_tables().expect("the reference tables must build") {
        let action = CurveAction::new(record.vector.clone()).expect("the action must build");
        for gamma in record.group.elements() {
            if gamma.is_identity() {
                continue;
            }
            let formula = macbeath_nu(&action, gamma).unwrap();
            let oracle = nu_oracle(&action, gamma).unwrap();
            assert_eq!(
                formula, oracle,
                "family {}, element {gamma}: formula {formula} vs oracle {oracle}",
                record.label
            );
        }
    }
}

#[test]
fn corrected_generating_vector_for_the_bielliptic_order_ten_family_checks_out() {
    let records = fixture_tables().expect("the reference tables must build");
    let stored = records.iter().find(|r| r.label == "D10.3").unwrap();
    stored
        .vector
        .validate()
        .expect("the stored replacement vector validates");
    assert_eq!(
        (
            stored.pair.t,
            stored.pair.r,
            stored.pair.s,
            stored.pair.k,
            stored.pair.p
        ),
        (2, 0, 6, 0, 10),
        "and reproduces the profile the defective printed row states"
    );

    let printed = printed_reference()
        .into_iter()
        .find(|row| row.label == "D10.3")
        .unwrap();
    let printed_vector = symsq_deg2::GeneratingVector::from_branch(printed.group, printed.vector);
    let err = printed_vector
        .validate()
        .expect_err("the printed tuple is not a generating vector");
    let message = err.to_string();
    assert!(
        message.contains("proper subgroup"),
        "the printed tuple fails generation, not product-one: {message}"
    );
}
