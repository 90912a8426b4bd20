//! Commutator sets, the special subgroups of the covering argument, witness
//! search and the per-lemma verifiers.

mod audit;
mod kx;
mod lemmas;
mod special;
mod witness;

pub use audit::AuditReport;
pub use kx::CommutatorSet;
pub use lemmas::{BlackburnPair, LemmaConfig, LemmaId, LemmaReport, PartResult};
pub use special::SpecialSubgroups;
pub use witness::{Branch, CommutatorScan, WitnessTrace};

#[cfg(test)]
mod tests;
