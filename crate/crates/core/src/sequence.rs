//! Sequences over a finite group: unordered finite multisets of elements,
//! product sets, subsequence products, cross numbers, and the additive fast
//! path for dihedral groups.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::rational::Ratio;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{format_element, parse_element, FiniteGroup, GroupElement, Presentation};
use crate::zmod::{n_term_subsums, ZSet};

/// Default cap on `|S|` for the exponential product-set walks.
pub const DEFAULT_PI_CAP: usize = 12;

/// A finite multiset of group elements. Equality disregards order.
#[derive(Clone, PartialEq, Eq)]
pub struct Sequence {
    group: Arc<FiniteGroup>,
    /// Sorted by element index; multiplicities are >= 1.
    counts: Vec<(u16, u32)>,
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Seq[{}]", format_sequence(self))
    }
}

impl Sequence {
    pub fn empty(group: &Arc<FiniteGroup>) -> Sequence {
        Sequence { group: Arc::clone(group), counts: Vec::new() }
    }

    pub fn from_pairs(group: &Arc<FiniteGroup>, pairs: &[(GroupElement, u32)]) -> Result<Sequence> {
        let mut counts: Vec<(u16, u32)> = Vec::new();
        for &(g, m) in pairs {
            group.check_element(g)?;
            if m > 0 {
                counts.push((g.0, m));
            }
        }
        counts.sort_unstable_by_key(|&(e, _)| e);
        let mut merged: Vec<(u16, u32)> = Vec::with_capacity(counts.len());
        for (e, m) in counts {
            match merged.last_mut() {
                Some((le, lm)) if *le == e => *lm += m,
                _ => merged.push((e, m)),
            }
        }
        Ok(Sequence { group: Arc::clone(group), counts: merged })
    }

    pub fn from_elements(group: &Arc<FiniteGroup>, elems: &[GroupElement]) -> Result<Sequence> {
        let pairs: Vec<(GroupElement, u32)> = elems.iter().map(|&g| (g, 1)).collect();
        Sequence::from_pairs(group, &pairs)
    }

    /// The sequence `g^[k]`.
    pub fn repeated(group: &Arc<FiniteGroup>, g: GroupElement, k: u32) -> Result<Sequence> {
        Sequence::from_pairs(group, &[(g, k)])
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn counts(&self) -> &[(u16, u32)] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.counts.iter().map(|&(e, _)| GroupElement(e)).collect()
    }

    /// `v_g(S)`.
    pub fn multiplicity(&self, g: GroupElement) -> u32 {
        self.counts
            .binary_search_by_key(&g.0, |&(e, _)| e)
            .map(|i| self.counts[i].1)
            .unwrap_or(0)
    }

    /// `h(S)`, the maximum multiplicity (0 for the empty sequence).
    pub fn max_multiplicity(&self) -> u32 {
        self.counts.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// All terms with repetition, in index order.
    pub fn terms(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.len());
        for &(e, m) in &self.counts {
            for _ in 0..m {
                out.push(GroupElement(e));
            }
        }
        out
    }

    fn check_same_group(&self, other: &Sequence) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::MixedGroups)
        }
    }

    /// Concatenation `S . T`.
    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        self.check_same_group(other)?;
        let mut pairs: Vec<(GroupElement, u32)> =
            self.counts.iter().map(|&(e, m)| (GroupElement(e), m)).collect();
        pairs.extend(other.counts.iter().map(|&(e, m)| (GroupElement(e), m)));
        Sequence::from_pairs(&self.group, &pairs)
    }

    /// Whether `self` divides `other` term-wise.
    pub fn divides(&self, other: &Sequence) -> bool {
        self.counts.iter().all(|&(e, m)| other.multiplicity(GroupElement(e)) >= m)
    }

    /// `S . T^[-1]`: remove the terms of `other` from `self`.
    pub fn remove(&self, other: &Sequence) -> Result<Sequence> {
        self.check_same_group(other)?;
        if !other.divides(self) {
            return Err(Error::NotASubsequence(format!(
                "{} does not divide {}",
                format_sequence(other),
                format_sequence(self)
            )));
        }
        let pairs: Vec<(GroupElement, u32)> = self
            .counts
            .iter()
            .map(|&(e, m)| (GroupElement(e), m - other.multiplicity(GroupElement(e))))
            .collect();
        Sequence::from_pairs(&self.group, &pairs)
    }

    /// `S^[k]`.
    pub fn power(&self, k: u32) -> Sequence {
        if k == 0 {
            return Sequence::empty(&self.group);
        }
        let counts = self.counts.iter().map(|&(e, m)| (e, m * k)).collect();
        Sequence { group: Arc::clone(&self.group), counts }
    }

    /// `S^-1 = g_1^-1 . ... . g_l^-1`.
    pub fn inverse_terms(&self) -> Sequence {
        let pairs: Vec<(GroupElement, u32)> = self
            .counts
            .iter()
            .map(|&(e, m)| (self.group.inverse(GroupElement(e)), m))
            .collect();
        Sequence::from_pairs(&self.group, &pairs).expect("inverses are valid")
    }

    /// `S_X`: the subsequence of terms lying in `X`.
    pub fn restrict<F: Fn(GroupElement) -> bool>(&self, pred: F) -> Sequence {
        let counts = self.counts.iter().copied().filter(|&(e, _)| pred(GroupElement(e))).collect();
        Sequence { group: Arc::clone(&self.group), counts }
    }

    /// Image under an element map (must stay within the same group).
    pub fn map_elements<F: Fn(GroupElement) -> GroupElement>(&self, f: F) -> Result<Sequence> {
        let pairs: Vec<(GroupElement, u32)> =
            self.counts.iter().map(|&(e, m)| (f(GroupElement(e)), m)).collect();
        Sequence::from_pairs(&self.group, &pairs)
    }

    /// Dihedral rotation part `S_<a>`.
    pub fn rotation_part(&self) -> Sequence {
        let group = Arc::clone(&self.group);
        self.restrict(|g| !group.is_reflection(g))
    }

    /// Dihedral reflection part `S_(t<a>)`.
    pub fn reflection_part(&self) -> Sequence {
        let group = Arc::clone(&self.group);
        self.restrict(|g| group.is_reflection(g))
    }

    pub fn reflection_count(&self) -> usize {
        self.counts
            .iter()
            .filter(|&&(e, _)| self.group.is_reflection(GroupElement(e)))
            .map(|&(_, m)| m as usize)
            .sum()
    }

    /// Plus-coordinates (with repetition) of the reflection part.
    pub fn reflection_plus_values(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(e, m) in &self.counts {
            let g = GroupElement(e);
            if self.group.is_reflection(g) {
                let y = self.group.plus_coordinate(g).unwrap();
                out.extend(std::iter::repeat(y).take(m as usize));
            }
        }
        out
    }

    /// Plus-coordinates (with repetition) of the rotation part.
    pub fn rotation_plus_values(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for &(e, m) in &self.counts {
            let g = GroupElement(e);
            if !self.group.is_reflection(g) {
                if let Some(x) = self.group.plus_coordinate(g) {
                    out.extend(std::iter::repeat(x).take(m as usize));
                }
            }
        }
        out
    }

    /// Re-express the sequence in the basis `(a, t a^y)`: reflections have
    /// their plus-coordinate translated by `-y`, rotations are unchanged.
    /// Atomicity and product-one status are preserved.
    pub fn rebase(&self, y: u32) -> Result<Sequence> {
        let n = match self.group.presentation() {
            Presentation::Dihedral(n) => n,
            _ => return Err(Error::UnsupportedPresentation),
        };
        let group = Arc::clone(&self.group);
        self.map_elements(|g| match group.dihedral_parts(g).unwrap() {
            (0, _) => g,
            (1, _) => {
                let z = group.plus_coordinate(g).unwrap();
                let z2 = (z + n - y % n) % n;
                group.reflection((n - z2) % n).unwrap()
            }
            _ => unreachable!(),
        })
    }

    /// Exact cross number `k(S) = sum of 1/ord(g_i)`.
    pub fn cross_number(&self) -> Ratio<u64> {
        let mut acc = Ratio::new(0u64, 1u64);
        for &(e, m) in &self.counts {
            let ord = self.group.order_of(GroupElement(e)) as u64;
            acc += Ratio::new(m as u64, ord);
        }
        acc
    }
}

/// A sorted set of group elements, the value of `pi` and its unions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProductSet {
    elements: Vec<GroupElement>,
}

impl ProductSet {
    pub fn from_sorted(elements: Vec<GroupElement>) -> ProductSet {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        ProductSet { elements }
    }

    pub fn from_elemset(s: &ElemSet) -> ProductSet {
        ProductSet { elements: s.iter().collect() }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: GroupElement) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, members: &[u16]) -> bool {
        self.elements.iter().all(|e| members.binary_search(&e.0).is_ok())
    }
}

/// `pi(S)`: the set of products over all orderings. Dispatches to the
/// additive dihedral formula, the single product for abelian groups, or the
/// memoized sub-multiset walk (guarded by `cap`).
pub fn pi(seq: &Sequence, cap: usize) -> Result<ProductSet> {
    let group = seq.group();
    match group.presentation() {
        Presentation::Dihedral(_) => pi_dihedral(seq),
        Presentation::Cyclic(_) => Ok(abelian_pi(seq)),
        Presentation::Generic => {
            if group.is_abelian() {
                Ok(abelian_pi(seq))
            } else {
                pi_bruteforce(seq, cap)
            }
        }
    }
}

fn abelian_pi(seq: &Sequence) -> ProductSet {
    let group = seq.group();
    let mut acc = group.identity();
    for &(e, m) in seq.counts() {
        for _ in 0..m {
            acc = group.mul(acc, GroupElement(e));
        }
    }
    ProductSet { elements: vec![acc] }
}

/// Memoized dynamic program over sub-multisets:
/// `f(0) = {1}`, `f(M) = { p*g : g in supp(M), p in f(M - g) }`.
///
/// The memo is keyed by the counts vector in element-index order, so the
/// result is independent of term iteration order.
pub fn pi_bruteforce(seq: &Sequence, cap: usize) -> Result<ProductSet> {
    if seq.len() > cap {
        return Err(Error::ResourceLimit { what: "pi state space (|S|)".into(), limit: cap });
    }
    let group = seq.group();
    let full: Vec<u32> = seq.counts().iter().map(|&(_, m)| m).collect();
    let elems: Vec<GroupElement> = seq.counts().iter().map(|&(e, _)| GroupElement(e)).collect();
    let mut memo: HashMap<Vec<u32>, ElemSet> = HashMap::new();
    let set = pi_rec(group, &elems, &full, &mut memo);
    Ok(ProductSet::from_elemset(&set))
}

fn pi_rec(
    group: &Arc<FiniteGroup>,
    elems: &[GroupElement],
    counts: &[u32],
    memo: &mut HashMap<Vec<u32>, ElemSet>,
) -> ElemSet {
    if counts.iter().all(|&c| c == 0) {
        return ElemSet::singleton(group, group.identity());
    }
    if let Some(hit) = memo.get(counts) {
        return hit.clone();
    }
    let mut out = ElemSet::empty(group);
    for i in 0..counts.len() {
        if counts[i] == 0 {
            continue;
        }
        let mut sub = counts.to_vec();
        sub[i] -= 1;
        let prev = pi_rec(group, elems, &sub, memo);
        out.union_with(&prev.right_mul(group, elems[i]));
    }
    memo.insert(counts.to_vec(), out.clone());
    out
}

/// All ingredients of the additive correspondence for a dihedral sequence
/// with a nonempty reflection part: the symmetrized rotation sumset `X`,
/// the floor(l/2)-term subsums of the doubled reflection coordinates, and
/// the plus-coordinate sum of the reflection part.
fn dihedral_weighted_parts(seq: &Sequence, n: u32) -> (ZSet, ZSet, u32, usize) {
    let mut x = ZSet::singleton(n, 0);
    for v in seq.rotation_plus_values() {
        let mut next = x.shifted(v);
        next.union_with(&x.shifted((n - v % n) % n));
        x = next;
    }
    let refl = seq.reflection_plus_values();
    let ell = refl.len();
    let doubled: Vec<u32> = refl.iter().map(|&y| (2 * y) % n).collect();
    let sig = n_term_subsums(n, &doubled, ell / 2);
    let sigma: u32 = refl.iter().fold(0, |acc, &y| (acc + y) % n);
    (x, sig, sigma, ell)
}

/// `pi(S)` over a dihedral group via the plus/star correspondence.
///
/// For `S` inside the rotation subgroup the result is the singleton product;
/// otherwise, with `l = |S_(t<a>)|`, the products are
/// `t^l (X + (-1)^l Sigma_(floor(l/2))(2 S+_(t<a>)) - (-1)^l sigma(S+_(t<a>)))*`.
pub fn pi_dihedral(seq: &Sequence) -> Result<ProductSet> {
    let group = seq.group();
    let n = match group.presentation() {
        Presentation::Dihedral(n) => n,
        _ => return Err(Error::UnsupportedPresentation),
    };
    if seq.reflection_count() == 0 {
        let s: u32 = seq.rotation_plus_values().iter().fold(0, |acc, &x| (acc + x) % n);
        return Ok(ProductSet { elements: vec![group.rotation(s)?] });
    }
    let (x, sig, sigma, ell) = dihedral_weighted_parts(seq, n);
    let inner = if ell % 2 == 0 {
        x.sumset(&sig.shifted((n - sigma) % n))
    } else {
        x.sumset(&sig.negated().shifted(sigma))
    };
    let mut elements: Vec<GroupElement> = inner
        .members()
        .into_iter()
        .map(|v| {
            if ell % 2 == 0 {
                group.rotation(v).unwrap()
            } else {
                // t a^v has encoding (1, -v mod n)
                group.reflection((n - v) % n).unwrap()
            }
        })
        .collect();
    elements.sort_unstable();
    Ok(ProductSet { elements })
}

/// `(is_product_one, is_product_one_free)`.
///
/// `is_product_one` iff `1 in pi(S)`; `is_product_one_free` iff `1` is not a
/// product of any nonempty subsequence. Dihedral groups take the additive
/// fast path (even reflection count plus a weighted-sumset membership);
/// abelian groups take a subset-product walk; other groups fall back to the
/// capped sub-multiset dynamic program.
pub fn product_one_status(seq: &Sequence, cap: usize) -> Result<(bool, bool)> {
    let group = seq.group();
    let is_po = is_product_one(seq, cap)?;
    if is_po && !seq.is_empty() {
        return Ok((true, false));
    }
    let free = match group.presentation() {
        Presentation::Dihedral(_) => dihedral_product_one_free(seq)?,
        _ if group_is_abelian(group) => abelian_product_one_free(seq),
        _ => {
            let union = subproducts(seq, None, cap)?;
            !union.contains(group.identity())
        }
    };
    Ok((is_po, free))
}

fn group_is_abelian(group: &Arc<FiniteGroup>) -> bool {
    match group.presentation() {
        Presentation::Cyclic(_) => true,
        Presentation::Dihedral(_) => false,
        Presentation::Generic => group.is_abelian(),
    }
}

/// `1 in pi(S)`; empty sequences are product-one by the `pi({}) = {1}`
/// convention.
pub fn is_product_one(seq: &Sequence, cap: usize) -> Result<bool> {
    let group = seq.group();
    match group.presentation() {
        Presentation::Dihedral(n) => {
            if seq.reflection_count() == 0 {
                let s: u32 = seq.rotation_plus_values().iter().fold(0, |acc, &x| (acc + x) % n);
                Ok(s == 0)
            } else {
                // Even reflection count 2l and 0 in X + Sigma_l(2 S+) - sigma(S+).
                let (x, sig, sigma, ell) = dihedral_weighted_parts(seq, n);
                if ell % 2 != 0 {
                    return Ok(false);
                }
                Ok(x.sumset(&sig.shifted((n - sigma) % n)).contains(0))
            }
        }
        _ if group_is_abelian(group) => Ok(abelian_pi(seq).contains(group.identity())),
        _ => Ok(pi_bruteforce(seq, cap)?.contains(group.identity())),
    }
}

/// Polynomial walk for `1 in Pi(S)` over a dihedral group.
///
/// A nonempty subsequence `T` has product one iff either `T` consists of
/// rotations with plain plus-coordinate sum 0, or `T` contains `2m >= 2`
/// reflections and some signing (each chosen rotation signed freely, the
/// chosen reflections signed with `m` plus and `m` minus) sums to 0.
fn dihedral_product_one_free(seq: &Sequence) -> Result<bool> {
    let n = match seq.group().presentation() {
        Presentation::Dihedral(n) => n,
        _ => return Err(Error::UnsupportedPresentation),
    };
    let rotations = seq.rotation_plus_values();
    let reflections = seq.reflection_plus_values();

    // Rotation-only subsequences: plain subset sums.
    let mut plain = ZSet::empty(n);
    for &x in &rotations {
        let mut next = plain.clone();
        next.union_with(&plain.shifted(x));
        next.insert(x % n);
        plain = next;
    }
    if plain.contains(0) {
        return Ok(false);
    }

    if reflections.len() >= 2 {
        // Signed sums over any rotation subset (possibly empty).
        let mut signed = ZSet::singleton(n, 0);
        for &x in &rotations {
            let mut next = signed.clone();
            next.union_with(&signed.shifted(x));
            next.union_with(&signed.shifted((n - x % n) % n));
            signed = next;
        }
        // Balance-tracked reflection selections; index offset by len.
        let l = reflections.len();
        let width = 2 * l + 1;
        let mut none: Vec<ZSet> = vec![ZSet::empty(n); width];
        none[l].insert(0);
        let mut some: Vec<ZSet> = vec![ZSet::empty(n); width];
        for &y in &reflections {
            let base_none = none.clone();
            let base_some = some.clone();
            for (delta, v) in [(1i64, y % n), (-1i64, (n - y % n) % n)] {
                for b in 0..width {
                    let src = b as i64 - delta;
                    if src < 0 || src >= width as i64 {
                        continue;
                    }
                    some[b].union_with(&base_some[src as usize].shifted(v));
                    some[b].union_with(&base_none[src as usize].shifted(v));
                }
            }
        }
        if signed.sumset(&some[l]).contains(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Achievable products of nonempty subsequences in an abelian group.
fn abelian_product_one_free(seq: &Sequence) -> bool {
    let group = seq.group();
    let mut reach = ElemSet::empty(group);
    for &(e, m) in seq.counts() {
        let g = GroupElement(e);
        for _ in 0..m {
            let mut next = reach.clone();
            next.union_with(&reach.right_mul(group, g));
            next.insert(g);
            reach = next;
        }
    }
    !reach.contains(group.identity())
}

/// `Pi_n(S)` when `n` is given, else `Pi(S)` (union over nonempty
/// subsequences).
pub fn subproducts(seq: &Sequence, n: Option<usize>, cap: usize) -> Result<ProductSet> {
    if seq.len() > cap {
        return Err(Error::ResourceLimit { what: "subproducts state space (|S|)".into(), limit: cap });
    }
    let group = seq.group();
    let full: Vec<u32> = seq.counts().iter().map(|&(_, m)| m).collect();
    let elems: Vec<GroupElement> = seq.counts().iter().map(|&(e, _)| GroupElement(e)).collect();
    let mut memo: HashMap<Vec<u32>, ElemSet> = HashMap::new();
    let mut union = ElemSet::empty(group);

    // Walk all sub-multisets of the counts vector.
    let mut stack = vec![vec![0u32; full.len()]];
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    while let Some(c) = stack.pop() {
        if seen.contains_key(&c) {
            continue;
        }
        seen.insert(c.clone(), ());
        let size: usize = c.iter().map(|&v| v as usize).sum();
        let keep = match n {
            Some(target) => size == target,
            None => size >= 1,
        };
        if keep {
            let set = pi_rec(group, &elems, &c, &mut memo);
            union.union_with(&set);
        }
        for i in 0..full.len() {
            if c[i] < full[i] {
                let mut next = c.clone();
                next[i] += 1;
                stack.push(next);
            }
        }
    }
    Ok(ProductSet::from_elemset(&union))
}

/// Membership in the complete integral closure: `pi(S)` inside the
/// commutator subgroup.
pub fn in_complete_integral_closure(seq: &Sequence, cap: usize) -> Result<bool> {
    let products = pi(seq, cap)?;
    let gprime = seq.group().commutator_subgroup();
    Ok(products.is_subset_of(gprime.members()))
}

/// Parse the sequence grammar: whitespace-separated `term[:mult]` items.
pub fn parse_sequence(group: &Arc<FiniteGroup>, text: &str) -> Result<Sequence> {
    let mut pairs: Vec<(GroupElement, u32)> = Vec::new();
    for item in text.split_whitespace() {
        let (elem_text, mult) = match item.rsplit_once(':') {
            Some((e, m)) => {
                let mult: u32 =
                    m.parse().map_err(|_| Error::Parse(format!("bad multiplicity in {item:?}")))?;
                (e, mult)
            }
            None => (item, 1),
        };
        let g = parse_element(group, elem_text)?;
        pairs.push((g, mult));
    }
    Sequence::from_pairs(group, &pairs)
}

/// Canonical text form: terms sorted by element index, explicit
/// multiplicities.
pub fn format_sequence(seq: &Sequence) -> String {
    seq.counts()
        .iter()
        .map(|&(e, m)| format!("{}:{}", format_element(seq.group(), GroupElement(e)), m))
        .collect::<Vec<_>>()
        .join(" ")
}

impl FiniteGroup {
    /// Whether the multiplication table is commutative.
    pub fn is_abelian(&self) -> bool {
        let order = self.order() as u16;
        for a in 0..order {
            for b in (a + 1)..order {
                let (ga, gb) = (GroupElement(a), GroupElement(b));
                if self.mul(ga, gb) != self.mul(gb, ga) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_element;

    fn d6() -> Arc<FiniteGroup> {
        FiniteGroup::dihedral(3).unwrap()
    }

    fn seq(group: &Arc<FiniteGroup>, text: &str) -> Sequence {
        parse_sequence(group, text).unwrap()
    }

    /// Independent oracle: products over explicit permutations of the terms.
    fn pi_oracle(s: &Sequence) -> Vec<GroupElement> {
        fn recurse(
            group: &FiniteGroup,
            remaining: &mut Vec<GroupElement>,
            acc: GroupElement,
            out: &mut std::collections::BTreeSet<GroupElement>,
        ) {
            if remaining.is_empty() {
                out.insert(acc);
                return;
            }
            for i in 0..remaining.len() {
                let g = remaining.remove(i);
                recurse(group, remaining, group.mul(acc, g), out);
                remaining.insert(i, g);
            }
        }
        let mut out = std::collections::BTreeSet::new();
        let mut terms = s.terms();
        recurse(s.group(), &mut terms, s.group().identity(), &mut out);
        out.into_iter().collect()
    }

    #[test]
    fn algebra_basics() {
        let g = d6();
        let t2 = seq(&g, "t:1").concat(&seq(&g, "t:1")).unwrap();
        assert_eq!(t2, seq(&g, "t:2"));
        let s = seq(&g, "a:4 t:2");
        assert_eq!(s.remove(&seq(&g, "t:2")).unwrap(), seq(&g, "a:4"));
        assert_eq!(s.max_multiplicity(), 4);
        assert_eq!(s.len(), 6);
        assert!(s.remove(&seq(&g, "t:3")).is_err());
    }

    #[test]
    fn sequence_equality_ignores_order() {
        let g = d6();
        let s1 = seq(&g, "a:1 t:1 a*t:1");
        let s2 = seq(&g, "a*t:1 a:1 t:1");
        assert_eq!(s1, s2);
    }

    #[test]
    fn cross_numbers() {
        let g = d6();
        // k((a t)^[3] . t^[3]) = 6/2 = 3
        let s = seq(&g, "a*t:3 t:3");
        assert_eq!(s.cross_number(), Ratio::new(3, 1));
        assert_eq!(seq(&g, "a:3").cross_number(), Ratio::new(1, 1));
        assert_eq!(Sequence::empty(&g).cross_number(), Ratio::new(0, 1));
        // 2/3 for a . a^2
        assert_eq!(seq(&g, "a:1 a^2:1").cross_number(), Ratio::new(2, 3));
    }

    #[test]
    fn pi_small_cases() {
        let g = d6();
        let cases = [
            ("t:2", vec!["1"]),
            ("t:1 a*t:1 a:1", vec!["1", "a", "a^2"]),
            ("a:1 a^2:1", vec!["1"]),
            ("t:1 a*t:1", vec!["a", "a^2"]),
            ("a:2", vec!["a^2"]),
        ];
        for (text, expect) in cases {
            let s = seq(&g, text);
            let want: Vec<GroupElement> = {
                let mut v: Vec<GroupElement> =
                    expect.iter().map(|e| parse_element(&g, e).unwrap()).collect();
                v.sort_unstable();
                v
            };
            assert_eq!(pi_bruteforce(&s, 12).unwrap().elements(), &want[..], "bf {text}");
            assert_eq!(pi_dihedral(&s).unwrap().elements(), &want[..], "dihedral {text}");
            assert_eq!(pi_oracle(&s), want, "oracle {text}");
        }
    }

    #[test]
    fn pi_empty_convention() {
        let g = d6();
        let e = Sequence::empty(&g);
        assert_eq!(pi_bruteforce(&e, 12).unwrap().elements(), &[g.identity()]);
        assert_eq!(pi_dihedral(&e).unwrap().elements(), &[g.identity()]);
    }

    #[test]
    fn pi_cap_guard() {
        let g = d6();
        let s = seq(&g, "a:13");
        assert!(matches!(pi_bruteforce(&s, 12), Err(Error::ResourceLimit { .. })));
        assert!(pi_bruteforce(&s, 13).is_ok());
    }

    #[test]
    fn pi_agreement_exhaustive_short() {
        // every sequence of length <= 4 over D_6: dihedral formula, DP and
        // the permutation oracle agree
        let g = d6();
        let elems: Vec<GroupElement> = g.elements().collect();
        let mut stack: Vec<Vec<GroupElement>> = vec![vec![]];
        while let Some(prefix) = stack.pop() {
            if !prefix.is_empty() {
                let s = Sequence::from_elements(&g, &prefix).unwrap();
                let bf = pi_bruteforce(&s, 12).unwrap();
                let di = pi_dihedral(&s).unwrap();
                assert_eq!(bf, di, "mismatch at {:?}", s);
                assert_eq!(bf.elements(), &pi_oracle(&s)[..], "oracle mismatch at {:?}", s);
            }
            if prefix.len() < 4 {
                let start = prefix.last().map(|g| g.0).unwrap_or(0);
                for &e in elems.iter().filter(|e| e.0 >= start) {
                    let mut next = prefix.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
    }

    #[test]
    fn product_one_status_cases() {
        let g = d6();
        let (po, free) = product_one_status(&seq(&g, "a:1"), 12).unwrap();
        assert!(!po);
        assert!(free);
        let (po, free) = product_one_status(&seq(&g, "t:1 a*t:1 a:1"), 12).unwrap();
        assert!(po);
        assert!(!free);
        // odd reflection count is never product-one
        let (po, _) = product_one_status(&seq(&g, "t:3 a:1"), 12).unwrap();
        assert!(!po);
        // not product-one but also not product-one free: a . a . a^2
        let (po, free) = product_one_status(&seq(&g, "a:2 a^2:1"), 12).unwrap();
        assert!(!po);
        assert!(!free);
    }

    #[test]
    fn product_one_free_matches_bruteforce() {
        // brute force Pi over all sequences of length <= 4 on D_6 and D_10
        for n in [3u32, 5] {
            let g = FiniteGroup::dihedral(n).unwrap();
            let elems: Vec<GroupElement> = g.elements().collect();
            let mut stack: Vec<Vec<GroupElement>> = vec![vec![]];
            while let Some(prefix) = stack.pop() {
                if !prefix.is_empty() {
                    let s = Sequence::from_elements(&g, &prefix).unwrap();
                    let union = subproducts(&s, None, 12).unwrap();
                    let free_bf = !union.contains(g.identity());
                    let free_fast = dihedral_product_one_free(&s).unwrap();
                    assert_eq!(free_bf, free_fast, "at {:?}", s);
                }
                if prefix.len() < 4 {
                    let start = prefix.last().map(|g| g.0).unwrap_or(0);
                    for &e in elems.iter().filter(|e| e.0 >= start) {
                        let mut next = prefix.clone();
                        next.push(e);
                        stack.push(next);
                    }
                }
            }
        }
    }

    #[test]
    fn subproduct_sets() {
        let g = d6();
        let s = seq(&g, "a:2");
        let union = subproducts(&s, None, 12).unwrap();
        let a = parse_element(&g, "a").unwrap();
        let a2 = parse_element(&g, "a^2").unwrap();
        assert_eq!(union.elements(), &[a, a2]);

        let s = seq(&g, "t:1 a*t:1");
        let p2 = subproducts(&s, Some(2), 12).unwrap();
        assert_eq!(p2.elements(), &[a, a2]);

        let s = seq(&g, "t:1");
        let union = subproducts(&s, None, 12).unwrap();
        assert_eq!(union.elements(), &[parse_element(&g, "t").unwrap()]);
    }

    #[test]
    fn closure_membership() {
        let g = d6();
        assert!(in_complete_integral_closure(&seq(&g, "a:1"), 12).unwrap());
        assert!(!in_complete_integral_closure(&seq(&g, "t:1"), 12).unwrap());
        assert!(in_complete_integral_closure(&seq(&g, "t:1 a*t:1"), 12).unwrap());
        assert!(in_complete_integral_closure(&Sequence::empty(&g), 12).unwrap());
    }

    #[test]
    fn sequence_grammar_round_trip() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let s = parse_sequence(&g, "a^2*t:3 a:4 t:2").unwrap();
        assert_eq!(format_sequence(&s), "a:4 t:2 a^2*t:3");
        let re = parse_sequence(&g, &format_sequence(&s)).unwrap();
        assert_eq!(s, re);
        assert_eq!(format_sequence(&Sequence::empty(&g)), "");
        // repeated mention of a term accumulates
        assert_eq!(parse_sequence(&g, "a:1 a:2").unwrap(), parse_sequence(&g, "a:3").unwrap());
    }

    #[test]
    fn rebase_shifts_reflections() {
        let g = FiniteGroup::dihedral(5).unwrap();
        let s = parse_sequence(&g, "t:1 a:2").unwrap();
        // after replacing t by t a^1, the term t = (t a^1) a^-1... in the new
        // basis t has plus-coordinate -1 mod 5 = 4
        let r = s.rebase(1).unwrap();
        assert_eq!(r.reflection_plus_values(), vec![4]);
        assert_eq!(r.rotation_plus_values(), vec![1, 1]);
        // rebasing by 0 is the identity
        assert_eq!(s.rebase(0).unwrap(), s);
        // product-one status is invariant under rebasing
        let u = parse_sequence(&g, "t:5 a*t:5").unwrap();
        for y in 0..5 {
            let v = u.rebase(y).unwrap();
            assert_eq!(
                is_product_one(&v, 20).unwrap(),
                is_product_one(&u, 20).unwrap(),
                "rebase {y}"
            );
        }
    }

    #[test]
    fn mixed_group_rejected() {
        let g1 = d6();
        let g2 = FiniteGroup::dihedral(5).unwrap();
        let s1 = seq(&g1, "t:1");
        let s2 = parse_sequence(&g2, "t:1").unwrap();
        assert!(matches!(s1.concat(&s2), Err(Error::MixedGroups)));
    }

    #[test]
    fn pi_contained_in_commutator_coset() {
        // pi(S) lies in a single G'-coset
        let g = d6();
        let gp = g.commutator_subgroup();
        let elems: Vec<GroupElement> = g.elements().collect();
        let mut stack: Vec<Vec<GroupElement>> = vec![vec![]];
        while let Some(prefix) = stack.pop() {
            if prefix.len() >= 2 {
                let s = Sequence::from_elements(&g, &prefix).unwrap();
                let p = pi_dihedral(&s).unwrap();
                let first = p.elements()[0];
                for &q in p.elements() {
                    // q * first^-1 in G'
                    let ratio = g.mul(q, g.inverse(first));
                    assert!(gp.contains(ratio));
                }
            }
            if prefix.len() < 3 {
                let start = prefix.last().map(|g| g.0).unwrap_or(0);
                for &e in elems.iter().filter(|e| e.0 >= start) {
                    let mut next = prefix.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
    }
}
