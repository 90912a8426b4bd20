use rayon::prelude::*;

use crate::error::Result;
use crate::lattice::Subgroup;
use crate::pc::{Element, ElementSet, PcGroup};

/// `K_x(H) = {[x, h] : h in H}` as an element set.
#[derive(Clone, Debug)]
pub struct CommutatorSet {
    pub x: Element,
    pub domain: Subgroup,
    pub elements: ElementSet,
}

impl CommutatorSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `[x, H]`, the subgroup generated by the set.
    pub fn generated(&self, g: &PcGroup) -> Result<Subgroup> {
        g.close_owned(self.elements.to_vec(g))
    }

    /// Whether the set is literally the element set of `target`.
    pub fn equals(&self, g: &PcGroup, target: &Subgroup) -> Result<bool> {
        if self.elements.len() as u128 != target.order() {
            return Ok(false);
        }
        Ok(self.elements.iter(g).all(|c| g.member(target, &c)))
    }
}

impl PcGroup {
    pub fn commutator_set_kx(&self, x: &Element, h: &Subgroup) -> Result<CommutatorSet> {
        self.validate(x)?;
        let elements = self.kx_set(x, h)?;
        Ok(CommutatorSet {
            x: x.clone(),
            domain: h.clone(),
            elements,
        })
    }

    pub(crate) fn kx_set(&self, x: &Element, h: &Subgroup) -> Result<ElementSet> {
        let mut set = ElementSet::empty(self);
        for y in self.subgroup_elements(h)? {
            set.insert(self, &self.comm(x, &y));
        }
        Ok(set)
    }

    /// `K_x(G)` for every `x`, in lexicographic order of `x`.
    ///
    /// Refused unless `|G|^2` fits the size guard.
    pub(crate) fn all_kx_sets<T: Send>(
        &self,
        f: impl Fn(&Element, ElementSet) -> T + Sync,
    ) -> Result<Vec<T>> {
        self.guard("commutator scan (|G|^2)", 2 * self.rank())?;
        let elems = self.elements()?;
        let inverses: Vec<Element> = elems.par_iter().map(|y| self.inv(y)).collect();
        Ok(elems
            .par_iter()
            .zip(&inverses)
            .map(|(x, x_inv)| {
                let mut set = ElementSet::empty(self);
                for (y, y_inv) in elems.iter().zip(&inverses) {
                    set.insert(self, &self.comm_with_inverses(x, x_inv, y, y_inv));
                }
                f(x, set)
            })
            .collect())
    }
}
