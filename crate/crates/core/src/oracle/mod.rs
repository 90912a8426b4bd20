//! Brute-force recomputation of structural objects by full enumeration.
//!
//! Shares only the multiplication kernel with the rest of the crate.

mod brute;
mod diff;

pub use brute::{
    brute_commutator_set, brute_subgroup, BruteGroup, BruteKind, ElemSet, DEFAULT_MEMO_ORDER,
};
pub use diff::{
    cayley_sanity, diff_report, DiffReport, Mismatch, SanityReport, EXHAUSTIVE_ASSOCIATIVITY_ORDER,
    SAMPLED_TRIPLES,
};

#[cfg(test)]
mod tests;
