use crate::error::{Error, Result};
use crate::lattice::Subgroup;
use crate::pc::{ElementSet, PcGroup};

/// The subgroups the covering arguments are built from.
///
/// `C = C_G(G'/(G')^p)` and `C* = C_G(G'/(G')^(p^2))`. For each
/// `T max_G G'`, `D(T)/T = Z(G/T)`; for each `U max_G (G')^2` (p = 2),
/// `R(U)/U = C_{G/U}(G^2/U)`. The unions `D` and `R` are element sets.
#[derive(Clone, Debug)]
pub struct SpecialSubgroups {
    pub derived: Subgroup,
    /// `(G')^p`.
    pub derived_p: Subgroup,
    /// `(G')^(p^2)`.
    pub derived_p2: Subgroup,
    pub c: Subgroup,
    pub c_star: Subgroup,
    d: Option<(Vec<(Subgroup, Subgroup)>, ElementSet)>,
    r: std::result::Result<(Vec<(Subgroup, Subgroup)>, ElementSet), String>,
}

impl SpecialSubgroups {
    /// Pairs `(T, D(T))`.
    pub fn d_of(&self) -> Result<&[(Subgroup, Subgroup)]> {
        self.d
            .as_ref()
            .map(|d| d.0.as_slice())
            .ok_or_else(|| Error::precondition("D is only defined for nonabelian groups"))
    }

    pub fn d_union(&self) -> Result<&ElementSet> {
        self.d
            .as_ref()
            .map(|d| &d.1)
            .ok_or_else(|| Error::precondition("D is only defined for nonabelian groups"))
    }

    /// Pairs `(U, R(U))`.
    pub fn r_of(&self) -> Result<&[(Subgroup, Subgroup)]> {
        self.r
            .as_ref()
            .map(|r| r.0.as_slice())
            .map_err(|e| Error::precondition(e.clone()))
    }

    pub fn r_union(&self) -> Result<&ElementSet> {
        self.r
            .as_ref()
            .map(|r| &r.1)
            .map_err(|e| Error::precondition(e.clone()))
    }
}

impl PcGroup {
    pub fn special_subgroups(&self) -> Result<SpecialSubgroups> {
        let g = self.whole_group();
        let derived = self.derived_subgroup()?;
        let derived_p = self.power_subgroup(&derived, 1)?;
        let derived_p2 = self.power_subgroup(&derived, 2)?;
        let c = self.section_centralizer(&derived, &derived_p)?;
        let c_star = self.section_centralizer(&derived, &derived_p2)?;

        let d = if derived.is_trivial() {
            None
        } else {
            let mut pairs = Vec::new();
            let mut union = ElementSet::empty(self);
            for t in self.maximal_normal_under(&derived)? {
                let dt = self.section_centralizer(&g, &t)?;
                union.union_with(&self.element_set(&dt)?);
                pairs.push((t, dt));
            }
            Some((pairs, union))
        };

        let r = if self.p() != 2 {
            Err("R is only defined for p = 2".to_string())
        } else {
            let derived_2 = &derived_p;
            if derived_2.is_trivial() {
                Err("R is only defined when (G')^2 != 1".to_string())
            } else {
                let g2 = self.power_subgroup(&g, 1)?;
                let mut pairs = Vec::new();
                let mut union = ElementSet::empty(self);
                for u in self.maximal_normal_under(derived_2)? {
                    let ru = self.section_centralizer(&g2, &u)?;
                    union.union_with(&self.element_set(&ru)?);
                    pairs.push((u, ru));
                }
                Ok((pairs, union))
            }
        };

        Ok(SpecialSubgroups {
            derived,
            derived_p,
            derived_p2,
            c,
            c_star,
            d,
            r,
        })
    }
}
