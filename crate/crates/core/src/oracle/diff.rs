use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::brute::{BruteGroup, ElemSet};
use crate::corpus::{ReportEntry, Verdict};
use crate::error::{Error, Result};
use crate::lattice::Subgroup;
use crate::pc::{Element, PcGroup};

/// Orders up to this bound get exhaustive associativity checks.
pub const EXHAUSTIVE_ASSOCIATIVITY_ORDER: u128 = 243;
pub const SAMPLED_TRIPLES: usize = 10_000;
/// Orders up to this bound get exhaustive identity and inverse checks.
const EXHAUSTIVE_AXIOM_ORDER: u128 = 1 << 16;

#[derive(Clone, Debug, Serialize)]
pub struct SanityReport {
    pub exhaustive: bool,
    pub triples_checked: u64,
    pub elements_checked: u64,
    /// First triple with `(ab)c != a(bc)`.
    pub associativity_failure: Option<[Element; 3]>,
    /// First element failing `a1 = 1a = a` or `a a^-1 = a^-1 a = 1`.
    pub axiom_failure: Option<Element>,
}

impl SanityReport {
    pub fn passed(&self) -> bool {
        self.associativity_failure.is_none() && self.axiom_failure.is_none()
    }
}

fn random_element(g: &PcGroup, rng: &mut ChaCha8Rng) -> Element {
    Element::from_exps_unchecked(
        (0..g.rank())
            .map(|_| rng.gen_range(0..g.p()) as u8)
            .collect(),
    )
}

/// Group axioms on the multiplication of `g`.
pub fn cayley_sanity(g: &PcGroup, seed: u64) -> Result<SanityReport> {
    let order = g.order();
    let one = g.identity();
    let mut report = SanityReport {
        exhaustive: order <= EXHAUSTIVE_ASSOCIATIVITY_ORDER,
        triples_checked: 0,
        elements_checked: 0,
        associativity_failure: None,
        axiom_failure: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let axioms_ok = |a: &Element| {
        let b = g.pow(a, -1);
        g.mul(a, &one) == *a && g.mul(&one, a) == *a && g.mul(a, &b) == one && g.mul(&b, a) == one
    };
    let sample: Vec<Element> = if order <= EXHAUSTIVE_AXIOM_ORDER {
        g.elements()?
    } else {
        (0..SAMPLED_TRIPLES)
            .map(|_| random_element(g, &mut rng))
            .collect()
    };
    for a in &sample {
        report.elements_checked += 1;
        if !axioms_ok(a) {
            report.axiom_failure = Some(a.clone());
            break;
        }
    }

    if report.exhaustive {
        let b = BruteGroup::new(g)?;
        let n = b.order();
        'outer: for i in 0..n {
            for j in 0..n {
                let ij = b.mul_idx(i, j);
                for k in 0..n {
                    report.triples_checked += 1;
                    if b.mul_idx(ij, k) != b.mul_idx(i, b.mul_idx(j, k)) {
                        report.associativity_failure = Some([
                            b.elements[i].clone(),
                            b.elements[j].clone(),
                            b.elements[k].clone(),
                        ]);
                        break 'outer;
                    }
                }
            }
        }
    } else {
        for _ in 0..SAMPLED_TRIPLES {
            let [a, b, c] = [(); 3].map(|_| random_element(g, &mut rng));
            report.triples_checked += 1;
            if g.mul(&g.mul(&a, &b), &c) != g.mul(&a, &g.mul(&b, &c)) {
                report.associativity_failure = Some([a, b, c]);
                break;
            }
        }
    }
    Ok(report)
}

/// One disagreement between the lattice module and the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct Mismatch {
    pub operation: String,
    pub arguments: String,
    pub only_lattice: Vec<Element>,
    pub only_oracle: Vec<Element>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffReport {
    pub group: String,
    pub comparisons: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DiffReport {
    pub fn to_entry(&self) -> ReportEntry {
        let verdict = if self.mismatches.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let mut e = ReportEntry::new(self.group.clone(), "oracle_diff", verdict);
        e.note = Some(format!(
            "{} comparisons, {} mismatches",
            self.comparisons,
            self.mismatches.len()
        ));
        e.details = json!({ "comparisons": self.comparisons });
        if let Some(m) = self.mismatches.first() {
            e.counterexample = Some(json!({
                "operation": m.operation,
                "arguments": m.arguments,
                "only_lattice": m.only_lattice.iter().map(Element::exps).collect::<Vec<_>>(),
                "only_oracle": m.only_oracle.iter().map(Element::exps).collect::<Vec<_>>(),
                "total_mismatches": self.mismatches.len(),
            }));
        }
        e
    }
}

struct Differ<'a> {
    g: &'a PcGroup,
    b: BruteGroup<'a>,
    comparisons: usize,
    mismatches: Vec<Mismatch>,
}

impl Differ<'_> {
    fn set(&self, s: &Subgroup) -> Result<ElemSet> {
        Ok(self.g.subgroup_elements(s)?.into_iter().collect())
    }

    fn compare(&mut self, op: &str, args: &str, lattice: &ElemSet, oracle: &ElemSet) {
        self.comparisons += 1;
        if lattice != oracle {
            self.mismatches.push(Mismatch {
                operation: op.to_string(),
                arguments: args.to_string(),
                only_lattice: lattice.difference(oracle).cloned().collect(),
                only_oracle: oracle.difference(lattice).cloned().collect(),
            });
        }
    }

    fn compare_sub(
        &mut self,
        op: &str,
        args: &str,
        lattice: &Subgroup,
        oracle: &ElemSet,
    ) -> Result<()> {
        let l = self.set(lattice)?;
        self.compare(op, args, &l, oracle);
        Ok(())
    }

    fn compare_flag(&mut self, op: &str, args: &str, lattice: bool, oracle: bool) {
        self.comparisons += 1;
        if lattice != oracle {
            self.mismatches.push(Mismatch {
                operation: op.to_string(),
                arguments: format!("{args}: lattice {lattice}, oracle {oracle}"),
                only_lattice: Vec::new(),
                only_oracle: Vec::new(),
            });
        }
    }
}

fn fmt_gens(gens: &[Element]) -> String {
    let parts: Vec<String> = gens.iter().map(ToString::to_string).collect();
    format!("<{}>", parts.join(", "))
}

/// Compares every lattice operation and every `K_x(G)` against brute force.
pub fn diff_report(g: &PcGroup, name: &str, seed: u64) -> Result<DiffReport> {
    let limit = super::brute::DEFAULT_MEMO_ORDER as u64;
    if g.order() > u128::from(limit) {
        return Err(Error::SizeGuard {
            what: "oracle diff".into(),
            order: g.order(),
            limit,
        });
    }
    let mut d = Differ {
        g,
        b: BruteGroup::new(g)?,
        comparisons: 0,
        mismatches: Vec::new(),
    };
    let all = d.b.all();
    let whole = g.whole_group();
    let p = g.p();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Closure and membership on generated subgroups.
    let mut gen_sets: Vec<Vec<Element>> = vec![Vec::new()];
    let gens = g.generators();
    for i in 0..gens.len() {
        gen_sets.push(vec![gens[i].clone()]);
        for j in i + 1..gens.len() {
            gen_sets.push(vec![gens[i].clone(), gens[j].clone()]);
        }
    }
    for _ in 0..6 {
        let k = rng.gen_range(1..=2);
        gen_sets.push((0..k).map(|_| random_element(g, &mut rng)).collect());
    }
    let mut generated: Vec<(String, Subgroup, ElemSet)> = Vec::new();
    for s in &gen_sets {
        let label = fmt_gens(s);
        let lat = g.close(s)?;
        let bru = d.b.close(&s.iter().cloned().collect());
        d.compare_sub("close", &label, &lat, &bru)?;
        let members: ElemSet = all.iter().filter(|x| g.member(&lat, x)).cloned().collect();
        d.compare("contains", &label, &members, &bru);
        d.compare_flag("is_normal", &label, g.is_normal(&lat)?, d.b.is_normal(&bru));
        generated.push((label, lat, bru));
    }

    // Named subgroups.
    let derived = g.derived_subgroup()?;
    let bru_derived = d.b.commutator(&all, &all);
    d.compare_sub("derived_subgroup", "G", &derived, &bru_derived)?;
    let center = g.center()?;
    let bru_center = d.b.center();
    d.compare_sub("center", "G", &center, &bru_center)?;

    let lcs = g.lower_central_series()?;
    let bru_lcs = d.b.lower_central_series();
    d.comparisons += 1;
    if lcs.len() != bru_lcs.len() {
        d.mismatches.push(Mismatch {
            operation: "lower_central_series".into(),
            arguments: format!("length: lattice {}, oracle {}", lcs.len(), bru_lcs.len()),
            only_lattice: Vec::new(),
            only_oracle: Vec::new(),
        });
    }
    for (i, (l, o)) in lcs.iter().zip(&bru_lcs).enumerate() {
        d.compare_sub("lower_central_series", &format!("gamma_{}", i + 1), l, o)?;
    }

    let frattini = g.frattini_rank(&whole)?.0;
    d.compare_sub("frattini", "G", &frattini, &d.b.frattini(&all))?;
    let bru_phi_derived = d.b.frattini(&bru_derived);
    d.compare_sub(
        "frattini",
        "G'",
        &g.frattini_rank(&derived)?.0,
        &bru_phi_derived,
    )?;

    let mut named: Vec<(String, Subgroup, ElemSet)> = vec![
        ("G".into(), whole.clone(), all.clone()),
        (
            "1".into(),
            g.trivial_subgroup(),
            BTreeSet::from([g.identity()]),
        ),
        ("G'".into(), derived.clone(), bru_derived.clone()),
        ("Z".into(), center, bru_center),
        ("Phi".into(), frattini, d.b.frattini(&all)),
    ];
    for i in 1..=2 {
        for (base, lat, bru) in [("G", &whole, &all), ("G'", &derived, &bru_derived)] {
            let lat_pow = g.power_subgroup(lat, i)?;
            let bru_pow = d.b.power_subgroup(bru, i);
            let label = format!("{base}^(p^{i})");
            d.compare_sub("power_subgroup", &label, &lat_pow, &bru_pow)?;
            named.push((label, lat_pow, bru_pow));
        }
    }
    for (label, lat, bru) in generated.iter().skip(1).take(gens.len().min(4)) {
        named.push((label.clone(), lat.clone(), bru.clone()));
    }

    for (la, a, ba) in &named {
        d.compare_flag(
            "is_abelian",
            la,
            g.is_abelian(a)?,
            d.b.commutator_set(ba, ba).len() == 1,
        );
        let bru_powerful = if p == 2 {
            d.b.commutator(ba, ba).is_subset(&d.b.power_subgroup(ba, 2))
        } else {
            d.b.commutator(ba, ba).is_subset(&d.b.power_subgroup(ba, 1))
        };
        d.compare_flag("is_powerful", la, g.is_powerful(a)?, bru_powerful);
        for (lb, b, bb) in &named {
            let args = format!("{la}, {lb}");
            d.compare_sub(
                "commutator_subgroup",
                &args,
                &g.commutator_subgroup(a, b)?,
                &d.b.commutator(ba, bb),
            )?;
            let inter: ElemSet = ba.intersection(bb).cloned().collect();
            d.compare_sub("intersection", &args, &g.intersection(a, b)?, &inter)?;
            let mut union = ba.clone();
            union.extend(bb.iter().cloned());
            d.compare_sub("join", &args, &g.join(a, b)?, &d.b.close(&union))?;
            if g.is_normal(a)? && g.is_normal(b)? && g.is_subgroup_of(b, a)? {
                d.compare_sub(
                    "section_centralizer",
                    &args,
                    &g.section_centralizer(a, b)?,
                    &d.b.section_centralizer(ba, bb),
                )?;
            }
        }
    }

    // Maximal G-normal subgroups under G' and (G')^p, with their centralizers.
    let derived_p = g.power_subgroup(&derived, 1)?;
    let bru_derived_p = d.b.power_subgroup(&bru_derived, 1);
    let g2 = g.power_subgroup(&whole, 1)?;
    let bru_g2 = d.b.power_subgroup(&all, 1);
    for (label, lat_n, bru_n, over, bru_over) in [
        ("G'", &derived, &bru_derived, &whole, &all),
        ("(G')^p", &derived_p, &bru_derived_p, &g2, &bru_g2),
    ] {
        if lat_n.is_trivial() {
            continue;
        }
        let lat_max = g.maximal_normal_under(lat_n)?;
        let lat_sets: BTreeSet<ElemSet> =
            lat_max.iter().map(|t| d.set(t)).collect::<Result<_>>()?;
        let bru_sets: BTreeSet<ElemSet> = d.b.maximal_normal_under(bru_n).into_iter().collect();
        d.comparisons += 1;
        if lat_sets != bru_sets {
            d.mismatches.push(Mismatch {
                operation: "maximal_normal_under".into(),
                arguments: format!(
                    "{label}: lattice {} subgroups, oracle {}",
                    lat_sets.len(),
                    bru_sets.len()
                ),
                only_lattice: lat_sets.difference(&bru_sets).flatten().cloned().collect(),
                only_oracle: bru_sets.difference(&lat_sets).flatten().cloned().collect(),
            });
        }
        for t in &lat_max {
            let bru_t = d.set(t)?;
            d.compare_sub(
                "section_centralizer",
                &format!("{label} maximal {}", fmt_gens(t.generators())),
                &g.section_centralizer(over, t)?,
                &d.b.section_centralizer(bru_over, &bru_t),
            )?;
        }
    }

    // K_x(G) for every x, and the commutator set.
    let mut brute_k = ElemSet::new();
    let mut lattice_witnesses = ElemSet::new();
    let mut brute_witnesses = ElemSet::new();
    for x in all.iter() {
        let lat: ElemSet = g.kx_set(x, &whole)?.iter(g).collect();
        let bru: ElemSet = all.iter().map(|h| d.b.comm(x, h)).collect();
        if lat == bru_derived {
            lattice_witnesses.insert(x.clone());
        }
        if bru == bru_derived {
            brute_witnesses.insert(x.clone());
        }
        brute_k.extend(bru.iter().cloned());
        d.compare("commutator_set_kx", &format!("x = {x}"), &lat, &bru);
    }
    let exhaustive: ElemSet = g.witness_exhaustive()?.iter(g).collect();
    d.compare("witness_exhaustive", "G", &exhaustive, &brute_witnesses);
    d.compare(
        "witness_exhaustive",
        "K_x scan",
        &lattice_witnesses,
        &brute_witnesses,
    );
    d.compare_sub("close(K(G))", "G", &derived, &d.b.close(&brute_k))?;

    Ok(DiffReport {
        group: name.to_string(),
        comparisons: d.comparisons,
        mismatches: d.mismatches,
    })
}
