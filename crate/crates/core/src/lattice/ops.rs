use serde::Serialize;

use super::subgroup::Subgroup;
use crate::error::{Error, Result};
use crate::pc::{Element, ElementSet, PcGroup};

/// Structural flags of a subgroup `H <= G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub is_abelian: bool,
    pub is_normal: bool,
    /// `H' <= H^p` (p odd) or `H' <= H^4` (p = 2).
    pub is_powerful: bool,
    /// `[H, G] <= H^p` (p odd) or `[H, G] <= H^4` (p = 2).
    pub is_powerfully_embedded: bool,
    pub is_cyclic: bool,
    pub exponent: u128,
}

impl PcGroup {
    /// `|A : B|`, requiring `B <= A`.
    pub fn index(&self, a: &Subgroup, b: &Subgroup) -> Result<u128> {
        if !self.is_subgroup_of(b, a)? {
            return Err(Error::input("index requires B to be a subgroup of A"));
        }
        Ok(crate::pc::pow_u128(self.p(), a.log_order() - b.log_order()))
    }

    /// The subgroup generated by both arguments.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_owned(&[a, b])?;
        self.close(a.generators().iter().chain(b.generators()))
    }

    /// Smallest subgroup containing `s` and normalised by `by`.
    pub fn normal_closure(&self, s: &Subgroup, by: &Subgroup) -> Result<Subgroup> {
        self.check_owned(&[s, by])?;
        self.conjugation_fixpoint(s.clone(), by.generators())
    }

    fn conjugation_fixpoint(&self, mut s: Subgroup, conjugators: &[Element]) -> Result<Subgroup> {
        loop {
            let mut extra = Vec::new();
            for x in s.generators() {
                for c in conjugators {
                    let y = self.conj(x, c);
                    if !self.member(&s, &y) && !extra.contains(&y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(s);
            }
            let mut gens = s.generators().to_vec();
            gens.extend(extra);
            s = self.close_owned(gens)?;
        }
    }

    pub fn is_normal(&self, s: &Subgroup) -> Result<bool> {
        self.check_owned(&[s])?;
        Ok(s.generators()
            .iter()
            .all(|x| (0..self.rank()).all(|i| self.member(s, &self.conj(x, &self.generator(i))))))
    }

    /// `[A, B]`: generated by commutators of generators, closed under
    /// conjugation by `<A, B>`.
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        self.check_owned(&[a, b])?;
        let mut comms = Vec::new();
        for x in a.generators() {
            for y in b.generators() {
                comms.push(self.comm(x, y));
            }
        }
        let s = self.close_owned(comms)?;
        let conjugators: Vec<Element> = a
            .generators()
            .iter()
            .chain(b.generators())
            .cloned()
            .collect();
        self.conjugation_fixpoint(s, &conjugators)
    }

    pub fn derived_subgroup(&self) -> Result<Subgroup> {
        let g = self.whole_group();
        self.commutator_subgroup(&g, &g)
    }

    /// `[G = γ1, γ2, ..., 1]`.
    pub fn lower_central_series(&self) -> Result<Vec<Subgroup>> {
        let g = self.whole_group();
        let mut series = vec![g.clone()];
        while !series.last().unwrap().is_trivial() {
            let next = self.commutator_subgroup(series.last().unwrap(), &g)?;
            if next == *series.last().unwrap() {
                return Err(Error::InvariantViolation(
                    "lower central series stalled in a p-group".into(),
                ));
            }
            series.push(next);
        }
        Ok(series)
    }

    /// `γ_i(G)`, 1-based; `γ_i = 1` beyond the class.
    pub fn gamma(&self, i: usize) -> Result<Subgroup> {
        let series = self.lower_central_series()?;
        Ok(series
            .get(i.saturating_sub(1))
            .cloned()
            .unwrap_or_else(|| self.trivial_subgroup()))
    }

    /// Nilpotency class; 0 for the trivial group.
    pub fn nilpotency_class(&self) -> Result<usize> {
        Ok(self.lower_central_series()?.len() - 1)
    }

    /// `H^(p^i) = <h^(p^i) : h in H>`, by enumerating every element of `H`.
    pub fn power_subgroup(&self, h: &Subgroup, i: u32) -> Result<Subgroup> {
        self.check_owned(&[h])?;
        if i == 0 {
            return Ok(h.clone());
        }
        let mut seen = ElementSet::empty(self);
        let mut powers = Vec::new();
        for x in self.subgroup_elements(h)? {
            let y = self.pow_p_power(&x, i);
            if !y.is_identity() && seen.insert(self, &y) {
                powers.push(y);
            }
        }
        self.close_owned(powers)
    }

    /// `H^p` for odd p, `H^4` for p = 2; the power subgroup in the
    /// powerful-group conditions.
    pub fn powerful_power(&self, h: &Subgroup) -> Result<Subgroup> {
        self.power_subgroup(h, if self.p() == 2 { 2 } else { 1 })
    }

    /// `Φ(H) = H^p [H, H]` and `d(H) = log_p |H : Φ(H)|`.
    pub fn frattini_rank(&self, h: &Subgroup) -> Result<(Subgroup, usize)> {
        let hp = self.power_subgroup(h, 1)?;
        let hh = self.commutator_subgroup(h, h)?;
        let phi = self.join(&hp, &hh)?;
        let d = h.log_order() - phi.log_order();
        Ok((phi, d))
    }

    /// Minimum number of generators of `H`.
    pub fn generator_rank(&self, h: &Subgroup) -> Result<usize> {
        Ok(self.frattini_rank(h)?.1)
    }

    pub fn exponent(&self, h: &Subgroup) -> Result<u128> {
        let mut exp = 1;
        for x in self.subgroup_elements(h)? {
            exp = exp.max(self.order_of(&x));
        }
        Ok(exp)
    }

    pub fn is_abelian(&self, h: &Subgroup) -> Result<bool> {
        self.check_owned(&[h])?;
        let gens = h.generators();
        Ok(gens
            .iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| self.comm(a, b).is_identity())))
    }

    pub fn is_powerful(&self, h: &Subgroup) -> Result<bool> {
        let derived = self.commutator_subgroup(h, h)?;
        let pw = self.powerful_power(h)?;
        self.is_subgroup_of(&derived, &pw)
    }

    pub fn is_powerfully_embedded(&self, h: &Subgroup) -> Result<bool> {
        let hg = self.commutator_subgroup(h, &self.whole_group())?;
        let pw = self.powerful_power(h)?;
        self.is_subgroup_of(&hg, &pw)
    }

    pub fn structure_predicates(&self, h: &Subgroup) -> Result<StructureFlags> {
        Ok(StructureFlags {
            is_abelian: self.is_abelian(h)?,
            is_normal: self.is_normal(h)?,
            is_powerful: self.is_powerful(h)?,
            is_powerfully_embedded: self.is_powerfully_embedded(h)?,
            is_cyclic: self.generator_rank(h)? <= 1,
            exponent: self.exponent(h)?,
        })
    }

    /// `{g in G : [l, g] in N for all l in L}` for `N <= L`, both normal.
    pub fn section_centralizer(&self, l: &Subgroup, n: &Subgroup) -> Result<Subgroup> {
        self.check_owned(&[l, n])?;
        if !self.is_subgroup_of(n, l)? {
            return Err(Error::input("section centralizer requires N <= L"));
        }
        if !self.is_normal(l)? || !self.is_normal(n)? {
            return Err(Error::input(
                "section centralizer requires L and N normal in G",
            ));
        }
        let mut members = Vec::new();
        for g in self.enumerate_elements()? {
            if l.generators()
                .iter()
                .all(|x| self.member(n, &self.comm(x, &g)))
            {
                members.push(g);
            }
        }
        self.close_owned(members)
    }

    pub fn center(&self) -> Result<Subgroup> {
        self.section_centralizer(&self.whole_group(), &self.trivial_subgroup())
    }

    /// Intersection by filtering the elements of the smaller subgroup.
    pub fn intersection(&self, s: &Subgroup, t: &Subgroup) -> Result<Subgroup> {
        self.check_owned(&[s, t])?;
        let (small, big) = if s.log_order() <= t.log_order() {
            (s, t)
        } else {
            (t, s)
        };
        let common: Vec<Element> = self
            .subgroup_elements(small)?
            .into_iter()
            .filter(|x| self.member(big, x))
            .collect();
        self.close_owned(common)
    }
}
