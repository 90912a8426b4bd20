use std::fmt;

use serde::{Deserialize, Serialize};

/// A group element in normal form `g1^e1 ... gn^en`, stored as its exponent
/// vector with every entry in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<u8>);

impl Element {
    pub fn identity(rank: usize) -> Self {
        Element(vec![0; rank])
    }

    /// The `i`-th pc generator (0-based).
    pub fn generator(rank: usize, i: usize) -> Self {
        let mut exps = vec![0; rank];
        exps[i] = 1;
        Element(exps)
    }

    /// Wraps an exponent vector without range checks; use
    /// [`PcGroup::element`](crate::PcGroup::element) for validated input.
    pub fn from_exps_unchecked(exps: Vec<u8>) -> Self {
        Element(exps)
    }

    pub fn exps(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn exps_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    pub fn into_exps(self) -> Vec<u8> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first nonzero exponent, `None` for the identity.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn leading_exponent(&self) -> Option<u8> {
        self.depth().map(|d| self.0[d])
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}
