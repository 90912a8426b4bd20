use std::collections::BTreeSet;

use proptest::prelude::*;

use crate::corpus::build_family_str;
use crate::{Element, PcGroup, Subgroup};

fn group(spec: &str) -> PcGroup {
    build_family_str(spec).unwrap().group().unwrap()
}

fn el(g: &PcGroup, e: &[i64]) -> Element {
    g.element(e).unwrap()
}

fn set(g: &PcGroup, s: &Subgroup) -> BTreeSet<Element> {
    g.subgroup_elements(s).unwrap().into_iter().collect()
}

// Closure by repeated multiplication, independent of the echelon code.
fn naive_closure(g: &PcGroup, gens: &[Element]) -> BTreeSet<Element> {
    let mut out: BTreeSet<Element> = BTreeSet::from([g.identity()]);
    loop {
        let mut grew = false;
        for a in out.clone() {
            for b in gens {
                if out.insert(g.mul(&a, b)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return out;
        }
    }
}

#[test]
fn closures_in_d8() {
    let g = group("dihedral:8");
    let z = g.close(&[el(&g, &[0, 0, 1])]).unwrap();
    assert_eq!(z.order(), 2);
    let r = g.close(&[el(&g, &[0, 1, 0])]).unwrap();
    assert_eq!(r.order(), 4);
    assert!(g.contains(&r, &el(&g, &[0, 0, 1])).unwrap());
    assert!(!g.contains(&z, &el(&g, &[0, 1, 0])).unwrap());
    assert!(g.contains(&z, &g.identity()).unwrap());
    assert_eq!(set(&g, &r), naive_closure(&g, &[el(&g, &[0, 1, 0])]));
    assert_eq!(g.close(z.generators()).unwrap(), z);
}

#[test]
fn heisenberg_generated_by_two() {
    let g = group("heisenberg:3");
    let s = g.close(&[el(&g, &[1, 0, 0]), el(&g, &[0, 1, 0])]).unwrap();
    assert_eq!(s.order(), 27);
    assert_eq!(s, g.whole_group());
}

#[test]
fn indices() {
    let g = group("dihedral:8");
    let r = g.close(&[el(&g, &[0, 1, 0])]).unwrap();
    assert_eq!(g.index(&g.whole_group(), &r).unwrap(), 2);
    assert_eq!(g.index(&g.whole_group(), &g.whole_group()).unwrap(), 1);
    assert!(g.index(&r, &g.whole_group()).is_err());
    let h = group("heisenberg:3");
    assert_eq!(h.index(&h.whole_group(), &h.center().unwrap()).unwrap(), 9);
}

#[test]
fn commutator_subgroups() {
    let g = group("dihedral:8");
    let whole = g.whole_group();
    let d = g.commutator_subgroup(&whole, &whole).unwrap();
    assert_eq!(d, g.close(&[el(&g, &[0, 0, 1])]).unwrap());
    assert!(g
        .commutator_subgroup(&whole, &g.trivial_subgroup())
        .unwrap()
        .is_trivial());
    let h = group("heisenberg:3");
    let dh = h.derived_subgroup().unwrap();
    assert_eq!(dh.order(), 3);
    assert!(h.contains(&dh, &el(&h, &[0, 0, 1])).unwrap());
}

#[test]
fn lower_central_series_orders() {
    let orders = |spec: &str| -> Vec<u128> {
        group(spec)
            .lower_central_series()
            .unwrap()
            .iter()
            .map(Subgroup::order)
            .collect()
    };
    assert_eq!(orders("dihedral:8"), [8, 2, 1]);
    assert_eq!(orders("elem_abelian:3,2"), [9, 1]);
    assert_eq!(orders("wreath_cyclic:3"), [81, 9, 3, 1]);
    assert_eq!(orders("dihedral:32"), [32, 8, 4, 2, 1]);
    assert_eq!(group("dihedral:32").gamma(9).unwrap().order(), 1);
}

#[test]
fn power_subgroups() {
    let g = group("dihedral:8");
    let whole = g.whole_group();
    let squares: Vec<Element> = g.elements().unwrap().iter().map(|x| g.mul(x, x)).collect();
    let sq = g.power_subgroup(&whole, 1).unwrap();
    assert_eq!(set(&g, &sq), naive_closure(&g, &squares));
    assert_eq!(sq.order(), 2);
    assert_eq!(g.power_subgroup(&whole, 0).unwrap(), whole);
    let h = group("heisenberg:3");
    assert!(h.power_subgroup(&h.whole_group(), 1).unwrap().is_trivial());
    // generator squares of C2 x C4 miss nothing, but for D8 the generator
    // p-th powers alone give only <g3>; Q8 needs the element scan
    let q = group("quaternion:8");
    assert_eq!(q.power_subgroup(&q.whole_group(), 1).unwrap().order(), 2);
}

#[test]
fn frattini() {
    let g = group("dihedral:8");
    let (phi, d) = g.frattini_rank(&g.whole_group()).unwrap();
    assert_eq!(phi, g.close(&[el(&g, &[0, 0, 1])]).unwrap());
    assert_eq!(d, 2);
    let e = group("elem_abelian:2,3");
    let (phi, d) = e.frattini_rank(&e.whole_group()).unwrap();
    assert!(phi.is_trivial());
    assert_eq!(d, 3);
    let c = group("cyclic:3,2");
    assert_eq!(c.generator_rank(&c.whole_group()).unwrap(), 1);
}

#[test]
fn predicates() {
    let g = group("dihedral:8");
    let flags = g.structure_predicates(&g.whole_group()).unwrap();
    assert!(!flags.is_powerful);
    assert!(!flags.is_abelian);
    assert!(!flags.is_cyclic);
    assert_eq!(flags.exponent, 4);
    let r = g.close(&[el(&g, &[0, 1, 0])]).unwrap();
    let fr = g.structure_predicates(&r).unwrap();
    assert!(fr.is_abelian && fr.is_powerful && fr.is_cyclic && fr.is_normal);
    assert!(!fr.is_powerfully_embedded);
    let h = group("heisenberg:3");
    assert!(!h.is_powerful(&h.whole_group()).unwrap());
    let refl = g.close(&[el(&g, &[1, 0, 0])]).unwrap();
    assert!(!g.is_normal(&refl).unwrap());
}

#[test]
fn section_centralizers() {
    let g = group("dihedral:8");
    let whole = g.whole_group();
    let d = g.derived_subgroup().unwrap();
    let triv = g.trivial_subgroup();
    assert_eq!(g.section_centralizer(&d, &triv).unwrap(), whole);
    assert_eq!(g.section_centralizer(&whole, &whole).unwrap(), whole);
    assert_eq!(g.section_centralizer(&whole, &triv).unwrap(), d);
    let refl = g.close(&[el(&g, &[1, 0, 0])]).unwrap();
    assert!(g.section_centralizer(&refl, &triv).is_err());
    assert!(g.section_centralizer(&triv, &d).is_err());
}

#[test]
fn maximal_normal_counts() {
    let g = group("dihedral:8");
    let d = g.derived_subgroup().unwrap();
    assert_eq!(
        g.maximal_normal_under(&d).unwrap(),
        vec![g.trivial_subgroup()]
    );
    assert!(g.maximal_normal_under(&g.trivial_subgroup()).is_err());

    let w = group("wreath_cyclic:3");
    let dw = w.derived_subgroup().unwrap();
    assert_eq!(
        w.maximal_normal_under(&dw).unwrap(),
        vec![w.gamma(3).unwrap()]
    );

    let hh = group("heisenberg:3*heisenberg:3");
    let dh = hh.derived_subgroup().unwrap();
    let maxes = hh.maximal_normal_under(&dh).unwrap();
    assert_eq!(maxes.len(), 4);
    for t in &maxes {
        assert!(hh.is_normal(t).unwrap());
        assert_eq!(hh.index(&dh, t).unwrap(), 3);
    }
}

#[test]
fn maximal_normal_is_exhaustive() {
    // compare with a scan over all subgroups for small groups
    for spec in [
        "dihedral:16",
        "heisenberg:3",
        "elem_abelian:2,3",
        "quaternion:16*cyclic:2,1",
    ] {
        let g = group(spec);
        let subs = g.all_subgroups().unwrap();
        for n in subs
            .iter()
            .filter(|s| !s.is_trivial() && g.is_normal(s).unwrap())
        {
            let mut expect: Vec<Subgroup> = subs
                .iter()
                .filter(|t| {
                    t.log_order() + 1 == n.log_order()
                        && g.is_subgroup_of(t, n).unwrap()
                        && g.is_normal(t).unwrap()
                })
                .cloned()
                .collect();
            let mut got = g.maximal_normal_under(n).unwrap();
            expect.sort_by(|a, b| a.generators().cmp(b.generators()));
            got.sort_by(|a, b| a.generators().cmp(b.generators()));
            assert_eq!(got, expect, "{spec}");
        }
    }
}

#[test]
fn subgroup_counts() {
    // D8 has 10 subgroups, Q8 has 6, C2^3 has 16
    assert_eq!(group("dihedral:8").all_subgroups().unwrap().len(), 10);
    assert_eq!(group("quaternion:8").all_subgroups().unwrap().len(), 6);
    assert_eq!(group("elem_abelian:2,3").all_subgroups().unwrap().len(), 16);
}

#[test]
fn intersections() {
    let g = group("dihedral:8");
    let r = g.close(&[el(&g, &[0, 1, 0])]).unwrap();
    let s = g.close(&[el(&g, &[1, 0, 0]), el(&g, &[0, 0, 1])]).unwrap();
    assert_eq!(
        g.intersection(&r, &s).unwrap(),
        g.close(&[el(&g, &[0, 0, 1])]).unwrap()
    );
    assert_eq!(g.intersection(&r, &r).unwrap(), r);
    assert!(g
        .intersection(&r, &g.trivial_subgroup())
        .unwrap()
        .is_trivial());
}

#[test]
fn powerful_subgroup_index_bound() {
    // |G^(p^i) : H^(p^i)| <= |G : H| for powerful H <= G, G powerful
    for spec in [
        "cyclic:2,3*cyclic:2,2",
        "blackburn_metacyclic:3,2,2,1",
        "cyclic:3,2*cyclic:3,1",
    ] {
        let g = group(spec);
        let whole = g.whole_group();
        if !g.is_powerful(&whole).unwrap() {
            continue;
        }
        for h in g.all_subgroups().unwrap() {
            if !g.is_powerful(&h).unwrap() {
                continue;
            }
            for i in 0..6 {
                let gp = g.power_subgroup(&whole, i).unwrap();
                let hp = g.power_subgroup(&h, i).unwrap();
                assert!(g.is_subgroup_of(&hp, &gp).unwrap());
                assert!(gp.log_order() - hp.log_order() <= whole.log_order() - h.log_order());
            }
        }
    }
}

fn arb_elements(g: &PcGroup, max: usize) -> impl Strategy<Value = Vec<Element>> {
    let p = g.p() as i64;
    let n = g.rank();
    prop::collection::vec(prop::collection::vec(0..p, n), 0..=max).prop_map(move |vs| {
        vs.into_iter()
            .map(|v| Element::from_exps_unchecked(v.into_iter().map(|e| e as u8).collect()))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn close_matches_naive(gens in arb_elements(&group("semidihedral:16"), 3)) {
        let g = group("semidihedral:16");
        let s = g.close(&gens).unwrap();
        prop_assert_eq!(set(&g, &s), naive_closure(&g, &gens));
        prop_assert_eq!(g.close(s.generators()).unwrap(), s.clone());
        for x in g.elements().unwrap() {
            prop_assert_eq!(g.contains(&s, &x).unwrap(), set(&g, &s).contains(&x));
        }
    }

    #[test]
    fn commutator_subgroup_is_symmetric_for_normal(a in arb_elements(&group("wreath_cyclic:3"), 2), b in arb_elements(&group("wreath_cyclic:3"), 2)) {
        let g = group("wreath_cyclic:3");
        let whole = g.whole_group();
        let na = g.normal_closure(&g.close(&a).unwrap(), &whole).unwrap();
        let nb = g.normal_closure(&g.close(&b).unwrap(), &whole).unwrap();
        prop_assert!(g.is_normal(&na).unwrap());
        let ab = g.commutator_subgroup(&na, &nb).unwrap();
        prop_assert_eq!(&ab, &g.commutator_subgroup(&nb, &na).unwrap());
        let mut comms = Vec::new();
        for x in g.subgroup_elements(&na).unwrap() {
            for y in g.subgroup_elements(&nb).unwrap() {
                comms.push(g.comm(&x, &y));
            }
        }
        prop_assert_eq!(set(&g, &ab), naive_closure(&g, &comms));
    }

    #[test]
    fn intersection_is_set_intersection(a in arb_elements(&group("dihedral:16*cyclic:2,1"), 2), b in arb_elements(&group("dihedral:16*cyclic:2,1"), 2)) {
        let g = group("dihedral:16*cyclic:2,1");
        let s = g.close(&a).unwrap();
        let t = g.close(&b).unwrap();
        let i = g.intersection(&s, &t).unwrap();
        let expect: BTreeSet<Element> = set(&g, &s).intersection(&set(&g, &t)).cloned().collect();
        prop_assert_eq!(set(&g, &i), expect);
    }
}
