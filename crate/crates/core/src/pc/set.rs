use super::element::Element;
use super::group::PcGroup;

/// A set of elements of one group, stored as a bitmap over lexicographic
/// ranks. Iteration is in lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: Vec<u64>,
    len: usize,
    universe: usize,
}

impl ElementSet {
    /// An empty set able to hold every element of `group`.
    pub fn empty(group: &PcGroup) -> Self {
        let universe = usize::try_from(group.order()).expect("group order fits in memory");
        ElementSet {
            bits: vec![0; universe.div_ceil(64)],
            len: 0,
            universe,
        }
    }

    pub fn from_elements<'a>(
        group: &PcGroup,
        elems: impl IntoIterator<Item = &'a Element>,
    ) -> Self {
        let mut set = Self::empty(group);
        for e in elems {
            set.insert_index(group.rank_of(e));
        }
        set
    }

    pub fn insert(&mut self, group: &PcGroup, e: &Element) -> bool {
        self.insert_index(group.rank_of(e))
    }

    pub fn insert_index(&mut self, idx: usize) -> bool {
        let (w, b) = (idx / 64, idx % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn contains(&self, group: &PcGroup, e: &Element) -> bool {
        self.contains_index(group.rank_of(e))
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        idx < self.universe && self.bits[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= *b;
        }
        self.len = self.bits.iter().map(|w| w.count_ones() as usize).sum();
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            (0..64)
                .filter(move |b| word & (1 << b) != 0)
                .map(move |b| w * 64 + b)
        })
    }

    pub fn iter<'a>(&'a self, group: &'a PcGroup) -> impl Iterator<Item = Element> + 'a {
        self.indices().map(move |i| group.unrank(i))
    }

    pub fn to_vec(&self, group: &PcGroup) -> Vec<Element> {
        self.iter(group).collect()
    }
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}
