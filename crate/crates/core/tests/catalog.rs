use aisemiring::algebra::{validate, Law};
use aisemiring::catalog::{self, CatalogError, Claim, ListFilter, Status};
use aisemiring::eval::{Evaluator, DEFAULT_BUDGET};
use aisemiring::iso;
use aisemiring::par::Execution;

#[test]
fn pinned_order_three_entries_are_unique() {
    for name in ["S5", "S9", "S13", "S14", "S15"] {
        let found = catalog::pinned_candidates(name).unwrap();
        assert_eq!(found.len(), 1, "{name} has {} candidates", found.len());
        assert_eq!(catalog::get(name).unwrap().order(), 3);
    }
}

#[test]
fn order_three_entries_are_pairwise_distinct() {
    let names = ["S2", "S4", "S5", "S6", "S9", "S10", "S13", "S14", "S15", "S7"];
    let algebras: Vec<_> = names.iter().map(|n| catalog::get(n).unwrap()).collect();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            assert!(!iso::are_isomorphic(&algebras[i], &algebras[j]), "{} ≅ {}", names[i], names[j]);
        }
    }
}

#[test]
fn printed_s4_57_is_not_a_semiring() {
    let mul = catalog::parse_order4_rows(catalog::ORDER4_57_AS_PRINTED);
    let report = validate(&catalog::order4_addition(), &mul).unwrap();
    assert!(!report.is_valid());
    assert!(report.violation(Law::RightDistributive).is_some());
    // The corrected table is the left-zero band.
    let s = catalog::get("S_(4,57)").unwrap();
    assert!((0..4).all(|a| (0..4).all(|b| s.mul(a, b) == a)));
}

#[test]
fn order_four_examples() {
    let s = catalog::get("S_(4,37)").unwrap();
    let row: Vec<&str> = (0..4).map(|b| s.element_name(s.mul(2, b))).collect();
    assert_eq!(row, ["1", "3", "4", "2"]);
    for k in 1..=58 {
        let s = catalog::order4(k).unwrap();
        assert_eq!(s.add_table(), catalog::order4_addition());
    }
    assert!(catalog::order4(0).is_none() && catalog::order4(59).is_none());
}

#[test]
fn list_filters() {
    let nfb = catalog::list(&ListFilter { status: Some(Status::NonfinitelyBased), order: Some(4), ..Default::default() });
    assert_eq!(nfb.len(), 9);
    let h1 = catalog::list(&ListFilter { order: Some(4), height1: Some(true), ..Default::default() });
    assert_eq!(h1.len(), 58);
    let two = catalog::list(&ListFilter { order: Some(2), ..Default::default() });
    assert_eq!(two.len(), 6);
    for e in catalog::list(&ListFilter::default()) {
        if e.has_basis {
            assert_eq!(e.status, Status::FinitelyBased, "{}", e.name);
        }
    }
}

#[test]
fn unknown_names_are_errors() {
    assert!(matches!(catalog::get("S_(4,0)"), Err(CatalogError::Unknown(_))));
    assert!(matches!(catalog::get("S3"), Err(CatalogError::Unknown(_))));
    assert!(matches!(catalog::resolve("@prod:S7"), Err(CatalogError::BadReference(_))));
}

#[test]
fn classify_prefers_order_four_names() {
    let s = catalog::get("S_(4,15)").unwrap().permuted(&[3, 1, 0, 2]);
    assert_eq!(catalog::classify(&s).as_deref(), Some("S_(4,15)"));
    let ie = catalog::resolve("@ie:S2").unwrap();
    assert_eq!(catalog::classify(&ie).as_deref(), Some("S_(4,15)"));
    assert_eq!(catalog::classify(&catalog::resolve("@m:a").unwrap()).as_deref(), Some("S7"));
    assert!(catalog::classify(&catalog::resolve("@prod:S7,S7").unwrap()).is_none());
}

#[test]
fn derived_entries_come_from_their_seeds() {
    let s10 = catalog::get("S10").unwrap();
    let host = catalog::get("S_(4,20)").unwrap();
    let (sub, _) = host.generated_subalgebra(&[2, 3]).unwrap();
    assert!(iso::are_isomorphic(&sub, &s10));
    let s6 = catalog::get("S6").unwrap();
    assert!(iso::are_isomorphic(&s6, &catalog::get("S4").unwrap().dual()));
    // {1,2,4} in S_(4,12) is closed and isomorphic to S6.
    let (sub, _) = catalog::get("S_(4,12)").unwrap().generated_subalgebra(&[0, 1, 3]).unwrap();
    assert_eq!(sub.order(), 3);
    assert!(iso::are_isomorphic(&sub, &s6));
}

#[test]
fn bases_hold_in_both_execution_modes() {
    for mode in [Execution::Sequential, Execution::Parallel] {
        let ev = Evaluator { budget: DEFAULT_BUDGET, execution: mode };
        for name in catalog::basis_names() {
            let s = catalog::get(&name).unwrap();
            assert!(ev.check_basis(&s, &catalog::basis(&name).unwrap()).unwrap().all_hold(), "{name}");
        }
    }
}

#[test]
fn bases_fail_elsewhere() {
    // Each basis pins its own variety: it fails in S7, which none of these contain.
    let s7 = catalog::get("S7").unwrap();
    for name in catalog::basis_names() {
        let ids = catalog::basis(&name).unwrap();
        assert!(!aisemiring::eval::check_basis(&s7, &ids).unwrap().all_hold(), "{name}");
    }
}

#[test]
fn s12_basis_expands_schemes() {
    let ids = catalog::basis("S_(4,12)").unwrap();
    // 15 plain items, 4 + 4 + 4 + 16 + 16 scheme instances.
    assert_eq!(ids.len(), 15 + 4 + 4 + 4 + 16 + 16);
    assert!(ids.iter().any(|i| i.to_string() == "x1^2 + x4^2 ≈ x1^2x4^2"));
}

#[test]
fn entry_collects_claims() {
    let e = catalog::entry("s_{(4,42)}").unwrap();
    assert_eq!(e.name, "S_(4,42)");
    assert!(e.basis.is_some());
    assert!(e.claims.contains(&Claim::Subdirect { s: "S_(4,42)".into(), a: "S2".into(), b: "S13".into() }));
    assert!(e.claims.iter().all(|c| c.mentions("S_(4,42)")));
}

#[test]
fn false_claims_are_reported() {
    let bad = Claim::Isomorphic { a: "S_(4,41)".into(), b: "S_(4,16)".into() };
    assert!(!catalog::verify_claim(&bad).holds);
    let bad = Claim::Subalgebra { host: "S_(4,20)".into(), members: vec!["1".into(), "4".into()], b: "T2".into() };
    assert!(!catalog::verify_claim(&bad).holds);
    let bad = Claim::Embeds { small: "S7".into(), big: "S_(4,1)".into() };
    assert!(!catalog::verify_claim(&bad).holds);
    let err = catalog::verify_claim(&Claim::BasisHolds { s: "S7".into() });
    assert!(!err.holds && err.detail.is_some());
}
