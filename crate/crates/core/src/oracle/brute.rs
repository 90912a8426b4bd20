use std::collections::{BTreeSet, VecDeque};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pc::{Element, PcGroup};

pub type ElemSet = BTreeSet<Element>;

/// Default largest order with a memoised multiplication table.
pub const DEFAULT_MEMO_ORDER: usize = 1 << 12;

/// A group as a list of elements with (optionally memoised) multiplication.
///
/// Only the collection kernel of [`PcGroup`] is used; everything above it
/// is plain enumeration.
pub struct BruteGroup<'a> {
    pub group: &'a PcGroup,
    pub elements: Vec<Element>,
    table: Option<Vec<u32>>,
}

impl<'a> BruteGroup<'a> {
    pub fn new(group: &'a PcGroup) -> Result<Self> {
        Self::with_memo_limit(group, DEFAULT_MEMO_ORDER)
    }

    pub fn with_memo_limit(group: &'a PcGroup, memo_limit: usize) -> Result<Self> {
        let elements = group.elements()?;
        let n = elements.len();
        let table = (n <= memo_limit).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(group.rank_of(&group.mul(a, b)) as u32);
                }
            }
            t
        });
        Ok(BruteGroup {
            group,
            elements,
            table,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_memoised(&self) -> bool {
        self.table.is_some()
    }

    pub fn index(&self, a: &Element) -> usize {
        self.group.rank_of(a)
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        match &self.table {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index(&self.group.mul(&self.elements[i], &self.elements[j])),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.elements[self.mul_idx(self.index(a), self.index(b))].clone()
    }

    /// Inverse by search over the cyclic subgroup.
    pub fn inv(&self, a: &Element) -> Element {
        let i = self.index(a);
        let mut prev = 0;
        let mut cur = i;
        while cur != 0 {
            prev = cur;
            cur = self.mul_idx(cur, i);
        }
        self.elements[prev].clone()
    }

    pub fn comm(&self, a: &Element, b: &Element) -> Element {
        let ab = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&self.mul(&ab, a), b)
    }

    pub fn power(&self, a: &Element, k: u64) -> Element {
        let mut r = self.elements[0].clone();
        for _ in 0..k {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn all(&self) -> ElemSet {
        self.elements.iter().cloned().collect()
    }

    /// Closure under multiplication, by breadth-first search.
    pub fn close(&self, gens: &ElemSet) -> ElemSet {
        let mut seen: ElemSet = BTreeSet::from([self.elements[0].clone()]);
        let mut queue: VecDeque<Element> = VecDeque::from([self.elements[0].clone()]);
        while let Some(a) = queue.pop_front() {
            for s in gens {
                let b = self.mul(&a, s);
                if seen.insert(b.clone()) {
                    queue.push_back(b);
                }
            }
        }
        seen
    }

    pub fn commutator_set(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        let mut out = ElemSet::new();
        for x in a {
            for y in b {
                out.insert(self.comm(x, y));
            }
        }
        out
    }

    pub fn commutator(&self, a: &ElemSet, b: &ElemSet) -> ElemSet {
        self.close(&self.commutator_set(a, b))
    }

    pub fn center(&self) -> ElemSet {
        self.elements
            .iter()
            .filter(|z| {
                self.elements
                    .iter()
                    .all(|g| self.mul(z, g) == self.mul(g, z))
            })
            .cloned()
            .collect()
    }

    pub fn power_subgroup(&self, h: &ElemSet, i: u32) -> ElemSet {
        let e = u64::from(self.group.p()).pow(i);
        self.close(&h.iter().map(|x| self.power(x, e)).collect())
    }

    pub fn section_centralizer(&self, l: &ElemSet, n: &ElemSet) -> ElemSet {
        self.elements
            .iter()
            .filter(|g| l.iter().all(|x| n.contains(&self.comm(x, g))))
            .cloned()
            .collect()
    }

    pub fn frattini(&self, h: &ElemSet) -> ElemSet {
        let mut gens = self.power_subgroup(h, 1);
        gens.extend(self.commutator_set(h, h));
        self.close(&gens)
    }

    pub fn lower_central_series(&self) -> Vec<ElemSet> {
        let all = self.all();
        let mut series = vec![all.clone()];
        while series.last().unwrap().len() > 1 {
            let next = self.commutator(series.last().unwrap(), &all);
            if next.len() == series.last().unwrap().len() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_normal(&self, s: &ElemSet) -> bool {
        s.iter().all(|x| {
            self.elements
                .iter()
                .all(|g| s.contains(&self.mul(&self.mul(&self.inv(g), x), g)))
        })
    }

    /// All `T` normal in `G` with `T < N` of index p, from a breadth-first
    /// walk over the subgroups of `N` of order at most `|N| / p`.
    pub fn maximal_normal_under(&self, n: &ElemSet) -> Vec<ElemSet> {
        let p = self.group.p() as usize;
        let target = n.len() / p;
        let trivial: ElemSet = BTreeSet::from([self.elements[0].clone()]);
        let mut seen: BTreeSet<ElemSet> = BTreeSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        let mut out = BTreeSet::new();
        while let Some(s) = queue.pop_front() {
            if s.len() == target {
                if self.is_normal(&s) {
                    out.insert(s);
                }
                continue;
            }
            for x in n {
                if s.contains(x) {
                    continue;
                }
                let mut gens = s.clone();
                gens.insert(x.clone());
                let t = self.close(&gens);
                if t.len() <= target && seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        out.into_iter().collect()
    }
}

/// `K(G) = {[a, b] : a, b in G}` by a double loop.
pub fn brute_commutator_set(g: &PcGroup) -> Result<ElemSet> {
    let b = BruteGroup::new(g)?;
    let all = b.all();
    Ok(b.commutator_set(&all, &all))
}

/// The structural objects the oracle can recompute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteKind {
    /// `<args[0]>`.
    Close,
    Center,
    /// `args[0]^(p^i)`.
    Power,
    /// `{g : [l, g] in N for all l}` with `L = args[0]`, `N = args[1]`.
    Centralizer,
    Derived,
    /// `[args[0], args[1]]`.
    Commutator,
    /// `Phi(args[0])`.
    Frattini,
    /// `gamma_i(G)`, 1-based.
    LowerCentral,
    Intersection,
}

impl FromStr for BruteKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "close" => BruteKind::Close,
            "center" => BruteKind::Center,
            "power" => BruteKind::Power,
            "centralizer" => BruteKind::Centralizer,
            "derived" => BruteKind::Derived,
            "commutator" => BruteKind::Commutator,
            "frattini" => BruteKind::Frattini,
            "lower_central" => BruteKind::LowerCentral,
            "intersection" => BruteKind::Intersection,
            _ => return Err(Error::input(format!("unknown oracle query `{s}`"))),
        })
    }
}

/// Recomputes one object as a raw element set.
pub fn brute_subgroup(g: &PcGroup, kind: BruteKind, args: &[ElemSet], i: u32) -> Result<ElemSet> {
    let b = BruteGroup::new(g)?;
    let arg = |k: usize| {
        args.get(k).ok_or_else(|| {
            Error::input(format!(
                "oracle query {kind:?} needs {} set argument(s)",
                k + 1
            ))
        })
    };
    Ok(match kind {
        BruteKind::Close => b.close(arg(0)?),
        BruteKind::Center => b.center(),
        BruteKind::Power => b.power_subgroup(arg(0)?, i),
        BruteKind::Centralizer => b.section_centralizer(arg(0)?, arg(1)?),
        BruteKind::Derived => b.commutator(&b.all(), &b.all()),
        BruteKind::Commutator => b.commutator(arg(0)?, arg(1)?),
        BruteKind::Frattini => b.frattini(arg(0)?),
        BruteKind::LowerCentral => {
            let series = b.lower_central_series();
            let idx = (i as usize).max(1) - 1;
            series
                .get(idx)
                .cloned()
                .unwrap_or_else(|| BTreeSet::from([b.elements[0].clone()]))
        }
        BruteKind::Intersection => arg(0)?.intersection(arg(1)?).cloned().collect(),
    })
}
