use serde::Serialize;
use serde_json::json;

use super::witness::WitnessTrace;
use crate::corpus::{ReportEntry, Verdict};
use crate::error::Result;
use crate::pc::{Element, PcGroup};

/// Outcome of checking the single-element covering claim on one group.
#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub group: String,
    pub p: u32,
    pub log_order: usize,
    pub derived_order: u128,
    pub derived_rank: usize,
    pub derived_powerful: bool,
    /// `d(G') <= 2`.
    pub in_hypothesis: bool,
    pub exhaustive_witnesses: usize,
    /// Least exhaustive witness, if any.
    pub first_witness: Option<Element>,
    pub constructive: Option<(Element, WitnessTrace)>,
    pub constructive_in_exhaustive: Option<bool>,
    /// `<K(G)> = G'`.
    pub commutators_generate_derived: bool,
    /// `K(G) = G'` as sets.
    pub commutators_cover_derived: bool,
    pub verdict: Verdict,
    pub note: String,
}

impl AuditReport {
    pub fn to_entry(&self) -> ReportEntry {
        let mut e = ReportEntry::new(self.group.clone(), "audit", self.verdict);
        e.note = Some(self.note.clone());
        e.details = json!({
            "p": self.p,
            "log_order": self.log_order,
            "derived_order": self.derived_order.to_string(),
            "derived_rank": self.derived_rank,
            "derived_powerful": self.derived_powerful,
            "in_hypothesis": self.in_hypothesis,
            "exhaustive_witnesses": self.exhaustive_witnesses,
            "first_witness": self.first_witness.as_ref().map(Element::exps),
            "constructive_witness": self.constructive.as_ref().map(|(x, _)| x.exps()),
            "branch": self.constructive.as_ref().map(|(_, t)| t.branch.label()),
            "constructive_in_exhaustive": self.constructive_in_exhaustive,
            "commutators_generate_derived": self.commutators_generate_derived,
            "commutators_cover_derived": self.commutators_cover_derived,
        });
        if self.verdict == Verdict::Fail {
            e.counterexample = Some(json!({
                "constructive_witness": self.constructive.as_ref().map(|(x, _)| x.exps()),
                "exhaustive_witnesses": self.exhaustive_witnesses,
            }));
        }
        e
    }
}

impl PcGroup {
    pub fn theorem_a_audit(&self, name: &str) -> Result<AuditReport> {
        let sp = self.special_subgroups()?;
        let derived_rank = self.generator_rank(&sp.derived)?;
        let derived_powerful = self.is_powerful(&sp.derived)?;
        let scan = self.commutator_scan()?;
        let derived_set = self.element_set(&sp.derived)?;
        let generated = self.close_owned(scan.commutators.to_vec(self))?;
        let commutators_generate_derived = generated == sp.derived;
        let commutators_cover_derived = scan.commutators == derived_set;
        let exhaustive_witnesses = scan.witnesses.len();
        let first_witness = scan.witnesses.indices().next().map(|i| self.unrank(i));
        let in_hypothesis = derived_rank <= 2;

        let (constructive, constructive_in_exhaustive, verdict, note) = if in_hypothesis {
            match self.witness_constructive_with(&sp) {
                Ok((x, trace)) => {
                    let inside = scan.witnesses.contains(self, &x);
                    let ok = inside && exhaustive_witnesses > 0 && commutators_generate_derived;
                    let note = format!(
                        "{exhaustive_witnesses} witnesses; branch {} chose {x}",
                        trace.branch
                    );
                    (
                        Some((x, trace)),
                        Some(inside),
                        if ok { Verdict::Pass } else { Verdict::Fail },
                        note,
                    )
                }
                Err(err) => (
                    None,
                    None,
                    Verdict::Fail,
                    format!("constructive witness failed: {err}"),
                ),
            }
        } else {
            let verdict = if commutators_generate_derived {
                Verdict::Vacuous
            } else {
                Verdict::Fail
            };
            let note = format!(
                "out of hypothesis: d(G') = {derived_rank}; <K(G)> {} G'; K(G) {} G'; {exhaustive_witnesses} witnesses",
                if commutators_generate_derived { "=" } else { "!=" },
                if commutators_cover_derived { "=" } else { "!=" },
            );
            (None, None, verdict, note)
        };

        Ok(AuditReport {
            group: name.to_string(),
            p: self.p(),
            log_order: self.rank(),
            derived_order: sp.derived.order(),
            derived_rank,
            derived_powerful,
            in_hypothesis,
            exhaustive_witnesses,
            first_witness,
            constructive,
            constructive_in_exhaustive,
            commutators_generate_derived,
            commutators_cover_derived,
            verdict,
            note,
        })
    }
}
