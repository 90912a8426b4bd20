//! Exact arithmetic in a finite p-group given by a refined
//! power-commutator presentation.

mod collect;
mod consistency;
mod element;
mod group;
mod presentation;
mod set;

pub use consistency::{check_consistency, ConsistencyReport, OverlapFailure};
pub use element::Element;
pub use group::{ElementIter, PcGroup, Word, DEFAULT_MAX_ORDER};
pub use presentation::{is_prime, PcPresentation, MAX_PRIME};
pub use set::ElementSet;

pub(crate) use group::pow_u128;
