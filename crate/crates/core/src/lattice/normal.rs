use std::collections::{BTreeSet, HashSet};

use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::pc::{Element, ElementSet, PcGroup};

impl PcGroup {
    /// All `T` normal in `G` with `T < N` maximal, i.e. `|N : T| = p`.
    ///
    /// Every such `T` contains `M = [N, G] N^p`, and they are the preimages of
    /// the hyperplanes of the `F_p`-space `N / M`. Hyperplanes are listed by
    /// their normalised defining functional in lexicographic order.
    pub fn maximal_normal_under(&self, n: &Subgroup) -> Result<Vec<Subgroup>> {
        self.check_owned(&[n])?;
        if n.is_trivial() {
            return Err(Error::input(
                "maximal normal subgroups of the trivial subgroup",
            ));
        }
        if !self.is_normal(n)? {
            return Err(Error::input("N must be normal in G"));
        }
        let m = self.join(
            &self.commutator_subgroup(n, &self.whole_group())?,
            &self.power_subgroup(n, 1)?,
        )?;
        // basis of N / M from the canonical generators of N
        let mut basis: Vec<Element> = Vec::new();
        let mut span = m.clone();
        for x in n.generators() {
            if !self.member(&span, x) {
                basis.push(x.clone());
                let gens: Vec<Element> = span
                    .generators()
                    .iter()
                    .chain(std::iter::once(x))
                    .cloned()
                    .collect();
                span = self.close_owned(gens)?;
            }
        }
        let r = basis.len();
        let p = self.p() as u8;
        let mut out = Vec::new();
        for phi in normalised_functionals(p, r) {
            let lead = phi.iter().position(|&c| c != 0).unwrap();
            let mut gens = m.generators().to_vec();
            for (j, &c) in phi.iter().enumerate() {
                if j == lead {
                    continue;
                }
                // kernel vector e_j - c e_lead
                let mut v = basis[j].clone();
                if c != 0 {
                    self.mul_assign(&mut v, &self.pow(&basis[lead], -i64::from(c)));
                }
                gens.push(v);
            }
            out.push(self.close_owned(gens)?);
        }
        Ok(out)
    }

    /// Every subgroup of `G`, found by extending known subgroups one element
    /// at a time. Sorted by order, then canonical generators.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        let elems = self.elements()?;
        let mut seen: HashSet<Subgroup> = HashSet::new();
        let mut frontier = vec![self.trivial_subgroup()];
        seen.insert(self.trivial_subgroup());
        while let Some(s) = frontier.pop() {
            let members = self.subgroup_elements(&s)?;
            let mut covered = ElementSet::from_elements(self, &members);
            for x in &elems {
                if covered.contains(self, x) {
                    continue;
                }
                // <S, y> = <S, x> for every y in x^k S, k prime to p
                let mut xk = x.clone();
                for _ in 1..self.p() {
                    for m in &members {
                        covered.insert(self, &self.mul(&xk, m));
                    }
                    self.mul_assign(&mut xk, x);
                }
                let mut gens = s.generators().to_vec();
                gens.push(x.clone());
                let t = self.close_owned(gens)?;
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        let mut all: Vec<Subgroup> = seen.into_iter().collect();
        all.sort_by(|a, b| {
            a.log_order()
                .cmp(&b.log_order())
                .then_with(|| a.generators().cmp(b.generators()))
        });
        Ok(all)
    }
}

/// Nonzero vectors of `F_p^r` whose first nonzero entry is 1, in
/// lexicographic order. There are `(p^r - 1) / (p - 1)` of them.
fn normalised_functionals(p: u8, r: usize) -> Vec<Vec<u8>> {
    let mut out = BTreeSet::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = (p as usize).pow(free as u32);
        for mut idx in 0..count {
            let mut v = vec![0u8; r];
            v[lead] = 1;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = (idx % p as usize) as u8;
                idx /= p as usize;
            }
            out.insert(v);
        }
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn functional_count() {
        assert_eq!(normalised_functionals(3, 2).len(), 4);
        assert_eq!(normalised_functionals(2, 3).len(), 7);
        assert_eq!(normalised_functionals(5, 1), vec![vec![1]]);
        let f = normalised_functionals(3, 2);
        assert!(f.windows(2).all(|w| w[0] < w[1]));
    }
}
