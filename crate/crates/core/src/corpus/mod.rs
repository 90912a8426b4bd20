//! Presentation files, built-in families and report output.

pub mod concrete;
mod families;
mod format;
mod report;

pub use families::{
    build_family, build_family_str, build_presentation, default_corpus, expected_invariants,
    measure_invariants, CorpusEntry, ExpectedInvariants, FamilySpec, DEFAULT_CORPUS, FAMILY_NAMES,
};
pub use format::{parse_presentation, serialize_presentation, FORMAT_VERSION};
pub use report::{emit_report, Report, ReportEntry, ReportFormat, Verdict};
