use std::collections::BTreeSet;

use super::*;
use crate::corpus::build_family_str;
use crate::pc::PcPresentation;
use crate::{Element, Error, PcGroup};

fn group(spec: &str) -> PcGroup {
    build_family_str(spec).unwrap().group().unwrap()
}

fn els(g: &PcGroup, v: &[&[i64]]) -> ElemSet {
    v.iter().map(|e| g.element(e).unwrap()).collect()
}

#[test]
fn commutator_sets() {
    let d8 = group("dihedral:8");
    assert_eq!(
        brute_commutator_set(&d8).unwrap(),
        els(&d8, &[&[0, 0, 0], &[0, 0, 1]])
    );
    let h = group("heisenberg:3");
    assert_eq!(
        brute_commutator_set(&h).unwrap(),
        els(&h, &[&[0, 0, 0], &[0, 0, 1], &[0, 0, 2]])
    );
    let c = group("elem_abelian:2,3");
    assert_eq!(brute_commutator_set(&c).unwrap().len(), 1);
}

#[test]
fn brute_queries() {
    let d8 = group("dihedral:8");
    assert_eq!(
        brute_subgroup(&d8, BruteKind::Center, &[], 0).unwrap(),
        els(&d8, &[&[0, 0, 0], &[0, 0, 1]])
    );
    let h = group("heisenberg:3");
    let all: ElemSet = h.elements().unwrap().into_iter().collect();
    assert_eq!(
        brute_subgroup(&h, BruteKind::Power, &[all], 1)
            .unwrap()
            .len(),
        1
    );
    let one = BTreeSet::from([d8.identity()]);
    assert_eq!(
        brute_subgroup(&d8, BruteKind::Close, std::slice::from_ref(&one), 0).unwrap(),
        one
    );
    let w = group("wreath_cyclic:3");
    let orders: Vec<usize> = (1..=5)
        .map(|i| {
            brute_subgroup(&w, BruteKind::LowerCentral, &[], i)
                .unwrap()
                .len()
        })
        .collect();
    assert_eq!(orders, vec![81, 9, 3, 1, 1]);
}

#[test]
fn unknown_query_and_missing_arguments() {
    assert!(matches!(
        "normalizer".parse::<BruteKind>(),
        Err(Error::Input(_))
    ));
    assert_eq!(
        "frattini".parse::<BruteKind>().unwrap(),
        BruteKind::Frattini
    );
    let d8 = group("dihedral:8");
    assert!(matches!(
        brute_subgroup(&d8, BruteKind::Commutator, &[], 0),
        Err(Error::Input(_))
    ));
}

#[test]
fn memo_table_matches_direct_multiplication() {
    let g = group("semidihedral:16");
    let memo = BruteGroup::new(&g).unwrap();
    let plain = BruteGroup::with_memo_limit(&g, 0).unwrap();
    assert!(memo.is_memoised() && !plain.is_memoised());
    for a in &memo.elements {
        for b in &memo.elements {
            assert_eq!(memo.mul(a, b), plain.mul(a, b));
        }
        assert_eq!(memo.mul(a, &memo.inv(a)), g.identity());
    }
}

#[test]
fn sanity_reports() {
    let d8 = group("dihedral:8");
    let r = cayley_sanity(&d8, 0).unwrap();
    assert!(r.passed() && r.exhaustive);
    assert_eq!(r.triples_checked, 512);

    let trivial = PcGroup::new(PcPresentation::new(2, 0).unwrap()).unwrap();
    assert!(cayley_sanity(&trivial, 0).unwrap().passed());

    let w = group("wreath_cyclic:3");
    let r = cayley_sanity(&w, 0).unwrap();
    assert!(r.passed());
    assert_eq!(r.triples_checked, 81u64.pow(3));

    let big = group("dihedral:512");
    let r = cayley_sanity(&big, 3).unwrap();
    assert!(r.passed() && !r.exhaustive);
    assert_eq!(r.triples_checked, SAMPLED_TRIPLES as u64);
}

#[test]
fn diffs_are_clean_on_small_groups() {
    for spec in [
        "dihedral:8",
        "heisenberg:3",
        "quaternion:16",
        "wreath_cyclic:3",
        "unitriangular4:2",
    ] {
        let g = group(spec);
        let r = diff_report(&g, spec, 0).unwrap();
        assert!(
            r.mismatches.is_empty(),
            "{spec}: {:?}",
            r.mismatches.first()
        );
        assert!(r.comparisons > 50);
    }
    let trivial = PcGroup::new(PcPresentation::new(3, 0).unwrap()).unwrap();
    assert!(diff_report(&trivial, "trivial", 0)
        .unwrap()
        .mismatches
        .is_empty());
}

#[test]
fn diff_refuses_large_groups() {
    let g = group("dihedral:512*dihedral:16");
    assert!(matches!(
        diff_report(&g, "big", 0),
        Err(Error::SizeGuard { .. })
    ));
}

#[test]
fn closed_commutators_give_derived_subgroup() {
    for spec in [
        "semidihedral:32",
        "extraspecial:3,1,-",
        "blackburn_metacyclic:2,2,2,1",
    ] {
        let g = group(spec);
        let b = BruteGroup::new(&g).unwrap();
        let k = brute_commutator_set(&g).unwrap();
        let derived: ElemSet = g
            .subgroup_elements(&g.derived_subgroup().unwrap())
            .unwrap()
            .into_iter()
            .collect();
        assert_eq!(b.close(&k), derived, "{spec}");
    }
}

#[test]
fn mismatches_are_reported() {
    let r = DiffReport {
        group: "d8".into(),
        comparisons: 3,
        mismatches: vec![Mismatch {
            operation: "center".into(),
            arguments: "G".into(),
            only_lattice: vec![Element::generator(3, 1)],
            only_oracle: Vec::new(),
        }],
    };
    let e = r.to_entry();
    assert!(e.verdict.is_fail());
    assert_eq!(
        e.counterexample.unwrap()["only_lattice"][0],
        serde_json::json!([0, 1, 0])
    );
}
