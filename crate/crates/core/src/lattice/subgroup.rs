use crate::error::{Error, Result};
use crate::pc::{pow_u128, Element, ElementSet, PcGroup};

/// A subgroup of a [`PcGroup`], held as its canonical generating sequence.
///
/// The sequence has strictly increasing depths, each generator has leading
/// exponent 1, and every generator has exponent 0 at the depths of the other
/// generators. Two subgroups of the same group are equal iff their sequences
/// are identical, and `|S| = p^len`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    group: u64,
    p: u32,
    gens: Vec<Element>,
}

impl Subgroup {
    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    /// `log_p |S|`.
    pub fn log_order(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> u128 {
        pow_u128(self.p, self.gens.len())
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    /// Depths of the canonical generators.
    pub fn depths(&self) -> Vec<usize> {
        self.gens
            .iter()
            .map(|g| g.depth().expect("nontrivial generator"))
            .collect()
    }
}

/// Echelon table indexed by depth, used while closing a generating set.
struct Echelon {
    table: Vec<Option<Element>>,
}

impl Echelon {
    fn new(rank: usize) -> Self {
        Echelon {
            table: vec![None; rank],
        }
    }

    fn sift(&self, g: &PcGroup, mut x: Element) -> Element {
        let p = g.p() as u8;
        while let Some(d) = x.depth() {
            match &self.table[d] {
                Some(t) => {
                    let e = x.exps()[d];
                    let k = i64::from(p - e);
                    x = g.mul(&x, &g.pow(t, k));
                }
                None => break,
            }
        }
        x
    }

    fn len(&self) -> usize {
        self.table.iter().filter(|t| t.is_some()).count()
    }
}

fn inverse_mod(e: u8, p: u32) -> i64 {
    let e = i64::from(e);
    let p = i64::from(p);
    (1..p).find(|k| (k * e) % p == 1).expect("p prime")
}

impl PcGroup {
    fn check_owner(&self, s: &Subgroup) -> Result<()> {
        if s.group != self.fingerprint() {
            return Err(Error::input("subgroup belongs to a different group"));
        }
        Ok(())
    }

    pub(crate) fn check_owned(&self, subgroups: &[&Subgroup]) -> Result<()> {
        subgroups.iter().try_for_each(|s| self.check_owner(s))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.fingerprint(),
            p: self.p(),
            gens: Vec::new(),
        }
    }

    pub fn whole_group(&self) -> Subgroup {
        Subgroup {
            group: self.fingerprint(),
            p: self.p(),
            gens: self.generators(),
        }
    }

    /// The subgroup generated by `gens`, in canonical form.
    pub fn close<'a>(&self, gens: impl IntoIterator<Item = &'a Element>) -> Result<Subgroup> {
        let mut queue = Vec::new();
        for x in gens {
            self.validate(x)?;
            queue.push(x.clone());
        }
        queue.reverse();
        self.close_queue(queue)
    }

    pub(crate) fn close_owned(&self, gens: Vec<Element>) -> Result<Subgroup> {
        let mut queue = gens;
        queue.reverse();
        self.close_queue(queue)
    }

    fn close_queue(&self, mut queue: Vec<Element>) -> Result<Subgroup> {
        let p = self.p();
        let mut ech = Echelon::new(self.rank());
        while let Some(x) = queue.pop() {
            let r = ech.sift(self, x);
            let Some(d) = r.depth() else { continue };
            let r = self.pow(&r, inverse_mod(r.exps()[d], p));
            self.guard("subgroup", ech.len() + 1)?;
            queue.push(self.pow(&r, i64::from(p)));
            for t in ech.table.iter().flatten() {
                queue.push(self.comm(&r, t));
            }
            ech.table[d] = Some(r);
        }
        Ok(self.canonical(ech))
    }

    fn canonical(&self, ech: Echelon) -> Subgroup {
        let p = self.p() as u8;
        let mut gens: Vec<Element> = ech.table.into_iter().flatten().collect();
        let depths: Vec<usize> = gens.iter().map(|t| t.depth().unwrap()).collect();
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                let e = gens[a].exps()[depths[b]];
                if e != 0 {
                    let fix = self.pow(&gens[b], i64::from(p - e));
                    gens[a] = self.mul(&gens[a], &fix);
                }
            }
        }
        Subgroup {
            group: self.fingerprint(),
            p: self.p(),
            gens,
        }
    }

    /// Membership by sifting through the canonical sequence.
    pub fn contains(&self, s: &Subgroup, a: &Element) -> Result<bool> {
        self.check_owner(s)?;
        self.validate(a)?;
        Ok(self.member(s, a))
    }

    pub(crate) fn member(&self, s: &Subgroup, a: &Element) -> bool {
        let p = self.p() as u8;
        let mut x = a.clone();
        let mut next = 0;
        while let Some(d) = x.depth() {
            while next < s.gens.len() && s.gens[next].depth().unwrap() < d {
                next += 1;
            }
            match s.gens.get(next) {
                Some(t) if t.depth() == Some(d) => {
                    let k = i64::from(p - x.exps()[d]);
                    x = self.mul(&x, &self.pow(t, k));
                }
                _ => return false,
            }
        }
        true
    }

    /// `B <= A`.
    pub fn is_subgroup_of(&self, b: &Subgroup, a: &Subgroup) -> Result<bool> {
        self.check_owned(&[a, b])?;
        Ok(b.log_order() <= a.log_order() && b.gens.iter().all(|x| self.member(a, x)))
    }

    /// All elements `s_1^e_1 ... s_m^e_m`, ordered by the exponent tuple.
    pub fn subgroup_elements(&self, s: &Subgroup) -> Result<Vec<Element>> {
        self.check_owner(s)?;
        self.guard("subgroup", s.log_order())?;
        let p = self.p() as usize;
        let mut out = Vec::with_capacity(p.pow(s.log_order() as u32));
        self.expand(&s.gens, self.identity(), &mut out);
        Ok(out)
    }

    fn expand(&self, gens: &[Element], prefix: Element, out: &mut Vec<Element>) {
        let Some((first, rest)) = gens.split_first() else {
            out.push(prefix);
            return;
        };
        let mut cur = prefix;
        for e in 0..self.p() {
            if e > 0 {
                self.mul_assign(&mut cur, first);
            }
            self.expand(rest, cur.clone(), out);
        }
    }

    pub fn element_set(&self, s: &Subgroup) -> Result<ElementSet> {
        Ok(ElementSet::from_elements(self, &self.subgroup_elements(s)?))
    }
}
