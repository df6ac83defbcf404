//! Subsets of Z/nZ as bitmasks, with sumset and stabilizer arithmetic.

use crate::error::{Error, Result};

/// A subset of Z/nZ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZSet {
    n: u32,
    words: Vec<u64>,
}

impl ZSet {
    pub fn empty(n: u32) -> ZSet {
        assert!(n > 0);
        ZSet { n, words: vec![0; (n as usize + 63) / 64] }
    }

    pub fn singleton(n: u32, v: u32) -> ZSet {
        let mut s = ZSet::empty(n);
        s.insert(v);
        s
    }

    pub fn from_members(n: u32, members: &[u32]) -> ZSet {
        let mut s = ZSet::empty(n);
        for &m in members {
            s.insert(m);
        }
        s
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn insert(&mut self, v: u32) {
        let v = (v % self.n) as usize;
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn contains(&self, v: u32) -> bool {
        let v = (v % self.n) as usize;
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn union_with(&mut self, other: &ZSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn members(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// The translate `self + k`.
    pub fn shifted(&self, k: u32) -> ZSet {
        let k = k % self.n;
        if self.n <= 64 {
            // single-word rotate
            let w = self.words[0];
            let mask = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
            let rotated = if k == 0 { w } else { ((w << k) | (w >> (self.n - k))) & mask };
            return ZSet { n: self.n, words: vec![rotated] };
        }
        let mut out = ZSet::empty(self.n);
        for v in 0..self.n {
            if self.contains(v) {
                out.insert(v + k);
            }
        }
        out
    }

    /// In-place `self |= other + k`.
    pub fn union_shifted(&mut self, other: &ZSet, k: u32) {
        if self.n <= 64 {
            let k = k % self.n;
            let w = other.words[0];
            let mask = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
            self.words[0] |= if k == 0 { w } else { ((w << k) | (w >> (self.n - k))) & mask };
        } else {
            self.union_with(&other.shifted(k));
        }
    }

    /// The reflection `-self`.
    pub fn negated(&self) -> ZSet {
        let mut out = ZSet::empty(self.n);
        for v in self.iter() {
            out.insert((self.n - v) % self.n);
        }
        out
    }

    /// Iterate members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                Some(wi as u32 * 64 + b)
            })
        })
    }

    /// Minkowski sum `self + other`.
    pub fn sumset(&self, other: &ZSet) -> ZSet {
        debug_assert_eq!(self.n, other.n);
        let mut out = ZSet::empty(self.n);
        for v in self.iter() {
            out.union_shifted(other, v);
        }
        out
    }

    /// Stabilizer `H(X) = { h : h + X = X }`, returned as a sorted member
    /// list. The stabilizer of the empty set is all of Z/nZ.
    pub fn stabilizer(&self) -> Vec<u32> {
        (0..self.n).filter(|&h| self.shifted(h) == *self).collect()
    }

    pub fn is_aperiodic(&self) -> bool {
        self.stabilizer() == vec![0]
    }
}

/// A subset of Z/nZ with explicit sorted members, the text-facing twin of
/// [`ZSet`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianSubsetZ {
    pub modulus: u32,
    pub members: Vec<u32>,
}

impl AbelianSubsetZ {
    pub fn new(modulus: u32, mut members: Vec<u32>) -> Result<AbelianSubsetZ> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        for m in members.iter_mut() {
            *m %= modulus;
        }
        members.sort_unstable();
        members.dedup();
        Ok(AbelianSubsetZ { modulus, members })
    }

    pub fn to_zset(&self) -> ZSet {
        ZSet::from_members(self.modulus, &self.members)
    }

    pub fn from_zset(z: &ZSet) -> AbelianSubsetZ {
        AbelianSubsetZ { modulus: z.modulus(), members: z.members() }
    }
}

/// Sum the family of subsets and return `(sum, stabilizer of the sum)`.
pub fn sumset_with_stabilizer(sets: &[AbelianSubsetZ]) -> Result<(AbelianSubsetZ, Vec<u32>)> {
    let Some(first) = sets.first() else {
        return Err(Error::InvalidArgument("sumset of an empty family".into()));
    };
    let n = first.modulus;
    if sets.iter().any(|s| s.modulus != n) {
        return Err(Error::InvalidArgument("mixed moduli in sumset".into()));
    }
    let mut acc = ZSet::singleton(n, 0);
    for s in sets {
        acc = acc.sumset(&s.to_zset());
    }
    let stab = acc.stabilizer();
    Ok((AbelianSubsetZ::from_zset(&acc), stab))
}

/// `Sigma_m(S)`: all m-term subsums of the additive sequence `terms`
/// (a multiset over Z/nZ, listed with repetition).
pub fn n_term_subsums(n: u32, terms: &[u32], m: usize) -> ZSet {
    let mut layers: Vec<ZSet> = Vec::with_capacity(m + 1);
    layers.push(ZSet::singleton(n, 0));
    for _ in 0..m {
        layers.push(ZSet::empty(n));
    }
    for &t in terms {
        let t = t % n;
        for j in (1..=m).rev() {
            let (lo, hi) = layers.split_at_mut(j);
            hi[0].union_shifted(&lo[j - 1], t);
        }
    }
    layers.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumset_and_stabilizer_z6() {
        let a = AbelianSubsetZ::new(6, vec![0, 3]).unwrap();
        let (sum, stab) = sumset_with_stabilizer(&[a.clone(), a]).unwrap();
        assert_eq!(sum.members, vec![0, 3]);
        assert_eq!(stab, vec![0, 3]);
    }

    #[test]
    fn sumset_z7_three_intervals() {
        let a = AbelianSubsetZ::new(7, vec![0, 1]).unwrap();
        let (sum, stab) = sumset_with_stabilizer(&[a.clone(), a.clone(), a]).unwrap();
        assert_eq!(sum.members, vec![0, 1, 2, 3]);
        assert_eq!(stab, vec![0]);
    }

    #[test]
    fn two_term_subsums_z3() {
        let s = n_term_subsums(3, &[0, 0, 1], 2);
        assert_eq!(s.members(), vec![0, 1]);
    }

    #[test]
    fn subsums_edge_cases() {
        // zero-term subsums are {0}
        assert_eq!(n_term_subsums(5, &[1, 2], 0).members(), vec![0]);
        // more terms than available: empty
        assert!(n_term_subsums(5, &[1], 2).is_empty());
    }

    #[test]
    fn mixed_moduli_rejected() {
        let a = AbelianSubsetZ::new(6, vec![0]).unwrap();
        let b = AbelianSubsetZ::new(7, vec![0]).unwrap();
        assert!(sumset_with_stabilizer(&[a, b]).is_err());
    }

    #[test]
    fn negation_and_shift() {
        let s = ZSet::from_members(5, &[1, 2]);
        assert_eq!(s.negated().members(), vec![3, 4]);
        assert_eq!(s.shifted(4).members(), vec![0, 1]);
    }
}
