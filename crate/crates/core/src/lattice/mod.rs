//! Subgroups in canonical echelon form and the structural operators on them.

mod normal;
mod ops;
mod subgroup;

pub use ops::StructureFlags;
pub use subgroup::Subgroup;

#[cfg(test)]
mod tests;
