use crate::error::{Error, Result};

/// Largest prime accepted; exponents are stored in a byte.
pub const MAX_PRIME: u32 = 251;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A refined power-commutator presentation of a finite p-group.
///
/// Generators are `g1..gn` (0-based internally), each of relative order `p`.
/// `g_i^p` is a normal-form word in `g_{i+1}..g_n` and `[g_j, g_i]` for
/// `j > i` is a normal-form word in `g_{j+1}..g_n`. Relations not set are
/// trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcPresentation {
    p: u32,
    rank: usize,
    powers: Vec<Vec<u8>>,
    // comms[j][i] = [g_j, g_i] for i < j
    comms: Vec<Vec<Vec<u8>>>,
}

impl PcPresentation {
    /// The presentation of the elementary abelian group of order `p^rank`.
    pub fn new(p: u32, rank: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::input(format!("p={p} is not prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::input(format!(
                "p={p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        Ok(PcPresentation {
            p,
            rank,
            powers: vec![vec![0; rank]; rank],
            comms: (0..rank).map(|j| vec![vec![0; rank]; j]).collect(),
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Exponent vector of `g_i^p`.
    pub fn power_word(&self, i: usize) -> &[u8] {
        &self.powers[i]
    }

    /// Exponent vector of `[g_j, g_i]`, `j > i`.
    pub fn comm_word(&self, j: usize, i: usize) -> &[u8] {
        assert!(j > i, "commutator relations are indexed by j > i");
        &self.comms[j][i]
    }

    pub fn set_power(&mut self, i: usize, word: Vec<u8>) -> Result<()> {
        if i >= self.rank {
            return Err(Error::input(format!("generator g{} out of range", i + 1)));
        }
        self.check_word(&word, i, &format!("power relation of g{}", i + 1))?;
        self.powers[i] = word;
        Ok(())
    }

    pub fn set_commutator(&mut self, j: usize, i: usize, word: Vec<u8>) -> Result<()> {
        if j >= self.rank || i >= j {
            return Err(Error::input(format!(
                "commutator relation [g{}, g{}] must have {} >= first index > second index",
                j + 1,
                i + 1,
                self.rank
            )));
        }
        self.check_word(&word, j, &format!("relation [g{}, g{}]", j + 1, i + 1))?;
        self.comms[j][i] = word;
        Ok(())
    }

    fn check_word(&self, word: &[u8], above: usize, what: &str) -> Result<()> {
        if word.len() != self.rank {
            return Err(Error::input(format!(
                "{what}: word has length {}, expected {}",
                word.len(),
                self.rank
            )));
        }
        if let Some(e) = word.iter().find(|&&e| u32::from(e) >= self.p) {
            return Err(Error::input(format!(
                "{what}: exponent {e} not below p={}",
                self.p
            )));
        }
        if let Some(k) = word[..=above].iter().position(|&e| e != 0) {
            return Err(Error::input(format!(
                "{what}: involves g{} but must only involve generators after g{}",
                k + 1,
                above + 1
            )));
        }
        Ok(())
    }

    /// Direct product: generators of `self` followed by those of `other`.
    pub fn direct_product(&self, other: &PcPresentation) -> Result<PcPresentation> {
        if self.p != other.p {
            return Err(Error::input(
                "direct product of presentations with different primes",
            ));
        }
        let (n1, n2) = (self.rank, other.rank);
        let mut out = PcPresentation::new(self.p, n1 + n2)?;
        let embed = |w: &[u8], offset: usize| {
            let mut v = vec![0u8; n1 + n2];
            v[offset..offset + w.len()].copy_from_slice(w);
            v
        };
        for i in 0..n1 {
            out.set_power(i, embed(self.power_word(i), 0))?;
            for j in i + 1..n1 {
                out.set_commutator(j, i, embed(self.comm_word(j, i), 0))?;
            }
        }
        for i in 0..n2 {
            out.set_power(n1 + i, embed(other.power_word(i), n1))?;
            for j in i + 1..n2 {
                out.set_commutator(n1 + j, n1 + i, embed(other.comm_word(j, i), n1))?;
            }
        }
        Ok(out)
    }
}
