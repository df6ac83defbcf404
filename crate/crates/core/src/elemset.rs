//! Bitmask sets of group elements, used by product-set dynamic programs.

use crate::group::{FiniteGroup, GroupElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElemSet {
    words: Vec<u64>,
    order: u32,
}

impl ElemSet {
    pub fn empty(group: &FiniteGroup) -> ElemSet {
        ElemSet { words: vec![0; (group.order() as usize + 63) / 64], order: group.order() }
    }

    pub fn singleton(group: &FiniteGroup, g: GroupElement) -> ElemSet {
        let mut s = ElemSet::empty(group);
        s.insert(g);
        s
    }

    #[inline]
    pub fn insert(&mut self, g: GroupElement) {
        self.words[g.index() / 64] |= 1 << (g.index() % 64);
    }

    #[inline]
    pub fn contains(&self, g: GroupElement) -> bool {
        self.words[g.index() / 64] >> (g.index() % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &ElemSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let order = self.order;
        (0..order as u16).map(GroupElement).filter(move |&g| self.contains(g))
    }

    /// The set `{ p * g : p in self }`.
    pub fn right_mul(&self, group: &FiniteGroup, g: GroupElement) -> ElemSet {
        let mut out = ElemSet::empty(group);
        for p in self.iter() {
            out.insert(group.mul(p, g));
        }
        out
    }
}
