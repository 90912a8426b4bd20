use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::corpus::{build_family_str, Verdict};
use crate::oracle::{BruteGroup, ElemSet};
use crate::{Element, Error, PcGroup};

fn group(spec: &str) -> PcGroup {
    build_family_str(spec).unwrap().group().unwrap()
}

fn el(g: &PcGroup, e: &[i64]) -> Element {
    g.element(e).unwrap()
}

fn brute_kx(b: &BruteGroup, x: &Element) -> ElemSet {
    b.elements.iter().map(|h| b.comm(x, h)).collect()
}

fn derived_elems(g: &PcGroup) -> ElemSet {
    g.subgroup_elements(&g.derived_subgroup().unwrap())
        .unwrap()
        .into_iter()
        .collect()
}

#[test]
fn kx_examples() {
    let d8 = group("dihedral:8");
    let k = d8
        .commutator_set_kx(&el(&d8, &[1, 0, 0]), &d8.whole_group())
        .unwrap();
    let got: ElemSet = k.elements.iter(&d8).collect();
    assert_eq!(got, BTreeSet::from([d8.identity(), el(&d8, &[0, 0, 1])]));
    assert!(k.equals(&d8, &d8.derived_subgroup().unwrap()).unwrap());
    assert_eq!(k.generated(&d8).unwrap(), d8.derived_subgroup().unwrap());

    let central = d8
        .commutator_set_kx(&el(&d8, &[0, 0, 1]), &d8.whole_group())
        .unwrap();
    assert_eq!(central.len(), 1);

    let h = group("heisenberg:3");
    let k = h
        .commutator_set_kx(&el(&h, &[1, 0, 0]), &h.whole_group())
        .unwrap();
    let got: ElemSet = k.elements.iter(&h).collect();
    assert_eq!(
        got,
        BTreeSet::from([h.identity(), el(&h, &[0, 0, 1]), el(&h, &[0, 0, 2])])
    );
}

#[test]
fn kx_on_a_proper_subgroup() {
    let g = group("wreath_cyclic:3");
    let b = BruteGroup::new(&g).unwrap();
    let derived = g.derived_subgroup().unwrap();
    let derived_set = derived_elems(&g);
    for x in g.elements().unwrap() {
        let lat: ElemSet = g
            .commutator_set_kx(&x, &derived)
            .unwrap()
            .elements
            .iter(&g)
            .collect();
        let bru: ElemSet = derived_set.iter().map(|h| b.comm(&x, h)).collect();
        assert_eq!(lat, bru);
    }
}

#[test]
fn kx_rejects_foreign_elements() {
    let g = group("dihedral:8");
    let bad = Element::from_exps_unchecked(vec![0, 2, 0]);
    assert!(matches!(
        g.commutator_set_kx(&bad, &g.whole_group()),
        Err(Error::Input(_))
    ));
}

#[test]
fn special_subgroups_of_small_groups() {
    let d8 = group("dihedral:8");
    let sp = d8.special_subgroups().unwrap();
    assert_eq!(sp.c, d8.whole_group());
    let d: ElemSet = sp.d_union().unwrap().iter(&d8).collect();
    assert_eq!(d, BTreeSet::from([d8.identity(), el(&d8, &[0, 0, 1])]));
    assert_eq!(sp.d_of().unwrap().len(), 1);
    assert!(matches!(sp.r_union(), Err(Error::Precondition(_))));

    let h = group("heisenberg:3");
    let sp = h.special_subgroups().unwrap();
    assert_eq!(sp.c, h.whole_group());
    assert_eq!(sp.d_union().unwrap().len(), 3);
    let center: ElemSet = h
        .subgroup_elements(&h.center().unwrap())
        .unwrap()
        .into_iter()
        .collect();
    assert_eq!(sp.d_union().unwrap().iter(&h).collect::<ElemSet>(), center);
    assert!(matches!(sp.r_of(), Err(Error::Precondition(_))));

    let a = group("elem_abelian:2,3");
    assert!(matches!(
        a.special_subgroups().unwrap().d_union(),
        Err(Error::Precondition(_))
    ));
}

// D(T) and R(U) recomputed from their defining conditions over all elements.
#[test]
fn special_subgroups_match_definitions() {
    for spec in [
        "dihedral:16*dihedral:8",
        "semidihedral:32",
        "jordan_semidirect:2,1,3",
        "wreath_cyclic:3",
    ] {
        let g = group(spec);
        let b = BruteGroup::new(&g).unwrap();
        let all = b.all();
        let sp = g.special_subgroups().unwrap();
        let mut union = ElemSet::new();
        for (t, dt) in sp.d_of().unwrap() {
            let t_set: ElemSet = g.subgroup_elements(t).unwrap().into_iter().collect();
            let expect = b.section_centralizer(&all, &t_set);
            let got: ElemSet = g.subgroup_elements(dt).unwrap().into_iter().collect();
            assert_eq!(got, expect, "{spec}");
            union.extend(expect);
        }
        assert_eq!(
            sp.d_union().unwrap().iter(&g).collect::<ElemSet>(),
            union,
            "{spec}"
        );
        if let Ok(family) = sp.r_of() {
            let squares = b.power_subgroup(&all, 1);
            for (u, ru) in family {
                let u_set: ElemSet = g.subgroup_elements(u).unwrap().into_iter().collect();
                let got: ElemSet = g.subgroup_elements(ru).unwrap().into_iter().collect();
                assert_eq!(got, b.section_centralizer(&squares, &u_set), "{spec}");
            }
        }
    }
}

#[test]
fn exhaustive_witnesses() {
    let a = group("elem_abelian:3,2");
    assert_eq!(a.witness_exhaustive().unwrap().len(), 9);

    let d8 = group("dihedral:8");
    let w: ElemSet = d8.witness_exhaustive().unwrap().iter(&d8).collect();
    let z = d8.center().unwrap();
    let expect: ElemSet = d8
        .elements()
        .unwrap()
        .into_iter()
        .filter(|x| !d8.member(&z, x))
        .collect();
    assert_eq!(w.len(), 6);
    assert_eq!(w, expect);

    let wr = group("wreath_cyclic:3");
    assert!(!wr.witness_exhaustive().unwrap().is_empty());
}

#[test]
fn exhaustive_witnesses_match_brute_force() {
    for spec in [
        "quaternion:16",
        "extraspecial:2,2,-",
        "unitriangular4:2",
        "blackburn_metacyclic:2,2,2,1",
    ] {
        let g = group(spec);
        let b = BruteGroup::new(&g).unwrap();
        let derived = derived_elems(&g);
        let expect: ElemSet = b
            .elements
            .iter()
            .filter(|x| brute_kx(&b, x) == derived)
            .cloned()
            .collect();
        let got: ElemSet = g.witness_exhaustive().unwrap().iter(&g).collect();
        assert_eq!(got, expect, "{spec}");
    }
}

#[test]
fn constructive_witnesses() {
    for spec in ["dihedral:8", "heisenberg:3"] {
        let g = group(spec);
        let (x, trace) = g.witness_constructive().unwrap();
        assert_eq!(trace.branch, Branch::Cyclic);
        let b = BruteGroup::new(&g).unwrap();
        assert_eq!(brute_kx(&b, &x), derived_elems(&g));
        assert!(!g.member(&g.center().unwrap(), &x));
    }
    let ut = group("unitriangular4:2");
    assert!(matches!(
        ut.witness_constructive(),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn constructive_branches_on_the_corpus() {
    let cases = [
        ("wreath_cyclic:3", Branch::OddPrime),
        ("jordan_semidirect:2,1,3", Branch::SmallCommutator),
        ("dihedral:16*dihedral:8", Branch::AvoidDR),
    ];
    for (spec, branch) in cases {
        let g = group(spec);
        let (x, trace) = g.witness_constructive().unwrap();
        assert_eq!(trace.branch, branch, "{spec}");
        assert!(g.witness_exhaustive().unwrap().contains(&g, &x), "{spec}");
        let sp = g.special_subgroups().unwrap();
        assert!(!sp.d_union().unwrap().contains(&g, &x));
    }
}

#[test]
fn branch_labels() {
    let labels: Vec<&str> = [
        Branch::Cyclic,
        Branch::OddPrime,
        Branch::SmallCommutator,
        Branch::LargeTCommutator,
        Branch::InsideC,
        Branch::AvoidDR,
    ]
    .iter()
    .map(|b| b.label())
    .collect();
    assert_eq!(labels, ["a", "b", "c1", "c2", "c3", "d"]);
    assert_eq!(serde_json::to_string(&Branch::InsideC).unwrap(), "\"c3\"");
}

#[test]
fn lemma_examples() {
    let cfg = LemmaConfig::default();
    let d8 = group("dihedral:8");
    assert_eq!(
        d8.verify_lemma("D8", LemmaId::D, cfg).unwrap().verdict,
        Verdict::Pass
    );
    let q8 = group("quaternion:8");
    let r = q8.verify_lemma("Q8", LemmaId::R, cfg).unwrap();
    assert_eq!(r.verdict, Verdict::Vacuous);
    assert!(r.note.as_deref().unwrap_or("").contains("unmet hypothesis"));
    let w = group("wreath_cyclic:3");
    assert_eq!(
        w.verify_lemma("C3 wr C3", LemmaId::C, cfg).unwrap().verdict,
        Verdict::Pass
    );
}

#[test]
fn lemma_ids_parse() {
    for id in LemmaId::ALL {
        assert_eq!(id.to_string().parse::<LemmaId>().unwrap(), id);
    }
    assert!(matches!("lemma_z".parse::<LemmaId>(), Err(Error::Input(_))));
}

#[test]
fn lemma_reports_are_deterministic() {
    let g = group("dihedral:16*dihedral:8");
    let cfg = LemmaConfig {
        seed: 11,
        ..LemmaConfig::default()
    };
    let a = g.verify_lemmas("x", &LemmaId::ALL, cfg).unwrap();
    let b = g.verify_lemmas("x", &LemmaId::ALL, cfg).unwrap();
    let ser = |r: &[LemmaReport]| {
        serde_json::to_string(&r.iter().map(|r| r.to_entry()).collect::<Vec<_>>()).unwrap()
    };
    assert_eq!(ser(&a), ser(&b));
    assert!(a.iter().all(|r| r.verdict != Verdict::Fail));
}

#[test]
fn applicable_two_groups_exercise_r_and_prop_dr() {
    let g = group("dihedral:16*dihedral:8");
    let cfg = LemmaConfig::default();
    for id in [LemmaId::R, LemmaId::PropDR] {
        assert_eq!(
            g.verify_lemma("x", id, cfg).unwrap().verdict,
            Verdict::Pass,
            "{id}"
        );
    }
}

#[test]
fn blackburn_pair_in_a_metacyclic_group() {
    let g = group("blackburn_metacyclic:3,2,2,1");
    let (a, b, m, n, k) = g
        .blackburn_pair(&g.whole_group())
        .unwrap()
        .expect("pair exists");
    assert!(k > 0 && n >= m && m >= 2 * k);
    let p = i64::from(g.p());
    let one = g.identity();
    assert_eq!(g.power(&a, p.pow(m)).unwrap(), one);
    assert_eq!(g.power(&b, p.pow(n + k)).unwrap(), one);
    assert_eq!(
        g.commutator(&a, &b).unwrap(),
        g.power(&b, p.pow(n)).unwrap()
    );
    assert_eq!(g.close(&[a, b]).unwrap(), g.whole_group());
}

#[test]
fn audit_examples() {
    let d8 = group("dihedral:8");
    let r = d8.theorem_a_audit("D8").unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    assert_eq!(r.exhaustive_witnesses, 6);
    assert_eq!(r.constructive_in_exhaustive, Some(true));

    let c2 = group("cyclic:2,1");
    assert_eq!(c2.theorem_a_audit("C2").unwrap().verdict, Verdict::Pass);

    let ut = group("unitriangular4:2");
    let r = ut.theorem_a_audit("UT4(2)").unwrap();
    assert!(!r.in_hypothesis);
    assert_eq!(r.derived_rank, 3);
    assert_eq!(r.verdict, Verdict::Vacuous);
    assert!(r.commutators_generate_derived);
    assert!(r.note.contains("out of hypothesis"));
    let e = r.to_entry();
    assert_eq!(e.details["derived_rank"], 3);
}

const SMALL: &[&str] = &[
    "dihedral:16",
    "quaternion:32",
    "semidihedral:16",
    "heisenberg:3",
    "extraspecial:2,2,+",
    "unitriangular4:2",
    "wreath_cyclic:2",
    "wreath_cyclic:3",
    "blackburn_metacyclic:2,2,2,1",
    "jordan_semidirect:2,1,3",
    "dihedral:16*dihedral:8",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kx_lies_in_derived_subgroup(idx in 0..SMALL.len(), seed in any::<u64>()) {
        let g = group(SMALL[idx]);
        let x = g.unrank((seed % g.order() as u64) as usize);
        let kx = g.commutator_set_kx(&x, &g.whole_group()).unwrap();
        let derived = g.derived_subgroup().unwrap();
        prop_assert!(kx.elements.iter(&g).all(|c| g.member(&derived, &c)));
        prop_assert!(g.is_subgroup_of(&kx.generated(&g).unwrap(), &derived).unwrap());
    }

    #[test]
    fn commutators_generate_derived(idx in 0..SMALL.len()) {
        let g = group(SMALL[idx]);
        let scan = g.commutator_scan().unwrap();
        prop_assert_eq!(g.close_owned(scan.commutators.to_vec(&g)).unwrap(), g.derived_subgroup().unwrap());
        for x in scan.witnesses.iter(&g) {
            prop_assert!(g.commutator_set_kx(&x, &g.whole_group()).unwrap().equals(&g, &g.derived_subgroup().unwrap()).unwrap());
        }
    }

    #[test]
    fn lemma_d_biconditional(idx in 0..SMALL.len(), seed in any::<u64>()) {
        let g = group(SMALL[idx]);
        let sp = g.special_subgroups().unwrap();
        prop_assume!(!sp.derived.is_trivial());
        let x = g.unrank((seed % g.order() as u64) as usize);
        let generated = g.commutator_set_kx(&x, &g.whole_group()).unwrap().generated(&g).unwrap();
        prop_assert_eq!(generated == sp.derived, !sp.d_union().unwrap().contains(&g, &x));
    }
}
