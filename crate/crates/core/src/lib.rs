//! Finite p-group calculus over refined power-commutator presentations.
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod pc;

pub use constructions::{AuditReport, Branch, LemmaConfig, LemmaId, LemmaReport, WitnessTrace};
pub use corpus::{CorpusEntry, FamilySpec, Report, ReportEntry, ReportFormat, Verdict};
pub use error::{Error, Result};
pub use lattice::{StructureFlags, Subgroup};
pub use pc::{Element, ElementSet, PcGroup, PcPresentation};
