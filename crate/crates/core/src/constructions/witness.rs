use std::fmt;

use serde::Serialize;

use super::special::SpecialSubgroups;
use crate::error::{Error, Result};
use crate::pc::{Element, ElementSet, PcGroup};

type Filter<'a> = Box<dyn Fn(&Element) -> bool + 'a>;

/// Which recipe produced a constructive witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// `G'` cyclic: `G' = <[x, y]>` with `y in C*`.
    #[serde(rename = "a")]
    Cyclic,
    /// p odd: least `x` outside `D` with `G = <x> C`.
    #[serde(rename = "b")]
    OddPrime,
    /// p = 2, `C != G`, `[G', C] <= T^2`: least `x` outside `C`.
    #[serde(rename = "c1")]
    SmallCommutator,
    /// p = 2, `C != G`, `[T, G]` not in `T^2`.
    #[serde(rename = "c2")]
    LargeTCommutator,
    /// p = 2, `C != G`, remaining case: `x in C \ D`.
    #[serde(rename = "c3")]
    InsideC,
    /// p = 2, `C = G`: least `x` outside `D u R`.
    #[serde(rename = "d")]
    AvoidDR,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Cyclic => "a",
            Branch::OddPrime => "b",
            Branch::SmallCommutator => "c1",
            Branch::LargeTCommutator => "c2",
            Branch::InsideC => "c3",
            Branch::AvoidDR => "d",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessTrace {
    pub branch: Branch,
    /// Auxiliary elements named by the recipe (`y`, `t`, `g`).
    pub auxiliary: Vec<(String, Element)>,
}

/// Result of scanning `K_x(G)` over all `x`.
#[derive(Clone, Debug)]
pub struct CommutatorScan {
    /// `{x : K_x(G) = G'}`.
    pub witnesses: ElementSet,
    /// `K(G)`, all commutators.
    pub commutators: ElementSet,
}

impl PcGroup {
    /// `{x in G : K_x(G) = G'}` by exhaustive scan.
    pub fn witness_exhaustive(&self) -> Result<ElementSet> {
        Ok(self.commutator_scan()?.witnesses)
    }

    pub fn commutator_scan(&self) -> Result<CommutatorScan> {
        let derived = self.element_set(&self.derived_subgroup()?)?;
        let rows = self.all_kx_sets(|x, kx| (self.rank_of(x), kx == derived, kx))?;
        let mut witnesses = ElementSet::empty(self);
        let mut commutators = ElementSet::empty(self);
        for (idx, is_witness, kx) in rows {
            if is_witness {
                witnesses.insert_index(idx);
            }
            commutators.union_with(&kx);
        }
        Ok(CommutatorScan {
            witnesses,
            commutators,
        })
    }

    /// A witness chosen by the covering recipe that applies to `G`, checked
    /// against `K_x(G) = G'` before it is returned.
    pub fn witness_constructive(&self) -> Result<(Element, WitnessTrace)> {
        let sp = self.special_subgroups()?;
        self.witness_constructive_with(&sp)
    }

    pub fn witness_constructive_with(
        &self,
        sp: &SpecialSubgroups,
    ) -> Result<(Element, WitnessTrace)> {
        let d = self.generator_rank(&sp.derived)?;
        if d > 2 {
            return Err(Error::precondition(format!("d(G') = {d} exceeds 2")));
        }
        let (x, trace) = if d <= 1 {
            self.recipe_cyclic(sp)?
        } else if self.p() != 2 {
            self.recipe_odd(sp)?
        } else if sp.c != self.whole_group() {
            self.recipe_case_one(sp)?
        } else {
            self.recipe_case_two(sp)?
        };
        let kx = self.kx_set(&x, &self.whole_group())?;
        if kx != self.element_set(&sp.derived)? {
            return Err(Error::InvariantViolation(format!(
                "branch {} chose x = {x}, but K_x(G) != G'",
                trace.branch
            )));
        }
        Ok((x, trace))
    }

    fn not_found(&self, branch: Branch) -> Error {
        Error::InvariantViolation(format!("branch {branch}: no element satisfies the recipe"))
    }

    /// Least `x` admitting `y in C*` with `G' = <[x, y]>`.
    pub(crate) fn recipe_cyclic(&self, sp: &SpecialSubgroups) -> Result<(Element, WitnessTrace)> {
        let cstar = self.with_inverses(self.subgroup_elements(&sp.c_star)?);
        for x in self.enumerate_elements()? {
            if let Some(y) = self.cyclic_partner(sp, &x, &cstar) {
                return Ok((
                    x,
                    WitnessTrace {
                        branch: Branch::Cyclic,
                        auxiliary: vec![("y".into(), y)],
                    },
                ));
            }
        }
        Err(self.not_found(Branch::Cyclic))
    }

    /// Some `y in C*` with `[x, y]` generating the cyclic group `G'`.
    /// `cstar` pairs each element of `C*` with its inverse.
    pub(crate) fn cyclic_partner(
        &self,
        sp: &SpecialSubgroups,
        x: &Element,
        cstar: &[(Element, Element)],
    ) -> Option<Element> {
        if sp.derived.is_trivial() {
            return Some(self.identity());
        }
        let x_inv = self.inv(x);
        cstar
            .iter()
            .find(|(y, y_inv)| {
                !self.member(&sp.derived_p, &self.comm_with_inverses(x, &x_inv, y, y_inv))
            })
            .map(|(y, _)| y.clone())
    }

    pub(crate) fn with_inverses(&self, elems: Vec<Element>) -> Vec<(Element, Element)> {
        elems
            .into_iter()
            .map(|y| {
                let y_inv = self.inv(&y);
                (y, y_inv)
            })
            .collect()
    }

    fn recipe_odd(&self, sp: &SpecialSubgroups) -> Result<(Element, WitnessTrace)> {
        let d_union = sp.d_union()?;
        let whole = self.whole_group();
        for x in self.enumerate_elements()? {
            if d_union.contains(self, &x) {
                continue;
            }
            let mut gens = sp.c.generators().to_vec();
            gens.push(x.clone());
            if self.close_owned(gens)? == whole {
                return Ok((
                    x,
                    WitnessTrace {
                        branch: Branch::OddPrime,
                        auxiliary: Vec::new(),
                    },
                ));
            }
        }
        Err(self.not_found(Branch::OddPrime))
    }

    fn recipe_case_one(&self, sp: &SpecialSubgroups) -> Result<(Element, WitnessTrace)> {
        let whole = self.whole_group();
        let derived_2 = &sp.derived_p;
        let t = self.join(&self.gamma(3)?, derived_2)?;
        let t2 = self.power_subgroup(&t, 1)?;
        let outside_c = |x: &Element| !self.member(&sp.c, x);
        let in_gap = |c: &Element| self.member(derived_2, c) && !self.member(&t2, c);

        let gc = self.commutator_subgroup(&sp.derived, &sp.c)?;
        if self.is_subgroup_of(&gc, &t2)? {
            let x = self
                .enumerate_elements()?
                .find(|x| outside_c(x))
                .ok_or_else(|| self.not_found(Branch::SmallCommutator))?;
            return Ok((
                x,
                WitnessTrace {
                    branch: Branch::SmallCommutator,
                    auxiliary: Vec::new(),
                },
            ));
        }

        let tg = self.commutator_subgroup(&t, &whole)?;
        let (branch, pool, candidates): (Branch, Vec<Element>, Filter) =
            if !self.is_subgroup_of(&tg, &t2)? {
                (
                    Branch::LargeTCommutator,
                    self.subgroup_elements(&t)?,
                    Box::new(outside_c),
                )
            } else {
                let d_union = sp.d_union()?;
                (
                    Branch::InsideC,
                    self.subgroup_elements(&sp.derived)?,
                    Box::new(move |x: &Element| !outside_c(x) && !d_union.contains(self, x)),
                )
            };
        let aux_name = if branch == Branch::LargeTCommutator {
            "t"
        } else {
            "g"
        };
        for x in self.enumerate_elements()? {
            if !candidates(&x) {
                continue;
            }
            if let Some(u) = pool.iter().find(|u| in_gap(&self.comm(&x, u))) {
                return Ok((
                    x,
                    WitnessTrace {
                        branch,
                        auxiliary: vec![(aux_name.into(), u.clone())],
                    },
                ));
            }
        }
        Err(self.not_found(branch))
    }

    fn recipe_case_two(&self, sp: &SpecialSubgroups) -> Result<(Element, WitnessTrace)> {
        let d_union = sp.d_union()?;
        let r_union = sp.r_union().ok();
        let x = self
            .enumerate_elements()?
            .find(|x| !d_union.contains(self, x) && !r_union.is_some_and(|r| r.contains(self, x)))
            .ok_or_else(|| self.not_found(Branch::AvoidDR))?;
        Ok((
            x,
            WitnessTrace {
                branch: Branch::AvoidDR,
                auxiliary: Vec::new(),
            },
        ))
    }
}
