//! Enumeration and recognition of atoms (minimal product-one sequences).
//!
//! Atoms over an abelian support are enumerated with the classical
//! zero-sum-free prefix cutoff. Over a nonabelian support no such cutoff is
//! sound (an atom may properly contain a product-one subsequence), so every
//! multiset up to the length cap is visited and tested; the cap itself is
//! sound because no atom over `G0` is longer than `|<G0>|`. Full dihedral
//! groups additionally factor the search through automorphism orbits of
//! supports.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num::integer::gcd;
use rayon::prelude::*;

use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement, Presentation};
use crate::sequence::{is_product_one, Sequence};

/// Canonical enumeration of `A(G0)` up to a length bound.
#[derive(Clone, Debug)]
pub struct AtomSet {
    group: Arc<FiniteGroup>,
    subset: Vec<u16>,
    max_len: usize,
    atoms: Vec<Sequence>,
    certified_complete: bool,
}

impl AtomSet {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn subset(&self) -> &[u16] {
        &self.subset
    }

    pub fn subset_elements(&self) -> Vec<GroupElement> {
        self.subset.iter().map(|&i| GroupElement(i)).collect()
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn atoms(&self) -> &[Sequence] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// True iff the length bound provably covers every atom.
    pub fn certified_complete(&self) -> bool {
        self.certified_complete
    }

    pub fn contains(&self, seq: &Sequence) -> bool {
        self.index_of(seq).is_some()
    }

    pub fn index_of(&self, seq: &Sequence) -> Option<usize> {
        self.atoms.binary_search_by(|a| graded_lex_cmp(a, seq)).ok()
    }

    /// Largest atom length present (0 when empty).
    pub fn max_atom_len(&self) -> usize {
        self.atoms.iter().map(|a| a.len()).max().unwrap_or(0)
    }
}

/// Graded lexicographic order on sequences: by length, then by the counts
/// vector over the group's element indices.
pub fn graded_lex_cmp(a: &Sequence, b: &Sequence) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        let mut ia = a.counts().iter().peekable();
        let mut ib = b.counts().iter().peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(&&(ea, ma)), Some(&&(eb, mb))) => match ea.cmp(&eb) {
                    // the earlier element index has a positive count only on
                    // one side: that side is larger at this coordinate
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ma != mb {
                            return ma.cmp(&mb);
                        }
                        ia.next();
                        ib.next();
                    }
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
            }
        }
    })
}

/// Masked left-rotate of a subset of Z/nZ packed into a `u64`.
#[inline]
fn rot64(w: u64, k: u32, n: u32) -> u64 {
    let k = k % n;
    if k == 0 {
        return w;
    }
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    ((w << k) | (w >> (n - k))) & mask
}

/// Product-one test over a dihedral group of order `2n` (`n <= 64`) from
/// plus-coordinate multiplicity pairs.
fn po64(n: u32, rot: &[(u32, u32)], refl: &[(u32, u32)]) -> bool {
    let ell: u32 = refl.iter().map(|&(_, c)| c).sum();
    if ell == 0 {
        let s = rot.iter().fold(0u64, |acc, &(v, c)| acc + v as u64 * c as u64);
        return s % n as u64 == 0;
    }
    if ell % 2 == 1 {
        return false;
    }
    let m = (ell / 2) as usize;
    // m-term subsums of the doubled reflection coordinates
    let mut layers = vec![0u64; m + 1];
    layers[0] = 1;
    for &(y, c) in refl {
        let d = (2 * y) % n;
        for _ in 0..c {
            for j in (1..=m).rev() {
                layers[j] |= rot64(layers[j - 1], d, n);
            }
        }
    }
    let sig = layers[m];
    // symmetrized rotation sumset
    let mut x: u64 = 1;
    for &(v, c) in rot {
        for _ in 0..c {
            x = rot64(x, v, n) | rot64(x, (n - v % n) % n, n);
        }
    }
    let sigma: u32 =
        (refl.iter().fold(0u64, |acc, &(y, c)| acc + y as u64 * c as u64) % n as u64) as u32;
    // 0 in X + Sig - sigma  iff  sigma in X + Sig
    let mut combined: u64 = 0;
    let mut bits = x;
    while bits != 0 {
        let a = bits.trailing_zeros();
        bits &= bits - 1;
        combined |= rot64(sig, a, n);
        if combined >> sigma & 1 == 1 {
            return true;
        }
    }
    false
}

/// Split `(elements, counts)` into plus-coordinate pairs; dihedral only.
fn fill_parts(
    group: &FiniteGroup,
    elements: &[GroupElement],
    counts: &[u32],
    rot: &mut Vec<(u32, u32)>,
    refl: &mut Vec<(u32, u32)>,
) {
    rot.clear();
    refl.clear();
    for (&g, &c) in elements.iter().zip(counts) {
        if c == 0 {
            continue;
        }
        let plus = group.plus_coordinate(g).unwrap();
        if group.is_reflection(g) {
            refl.push((plus, c));
        } else {
            rot.push((plus, c));
        }
    }
}

/// Counts-based product-one check; `None` when no fast path applies.
fn counts_po_fast(group: &FiniteGroup, elements: &[GroupElement], counts: &[u32]) -> Option<bool> {
    match group.presentation() {
        Presentation::Dihedral(n) if n <= 64 => {
            let mut rot = Vec::new();
            let mut refl = Vec::new();
            fill_parts(group, elements, counts, &mut rot, &mut refl);
            Some(po64(n, &rot, &refl))
        }
        _ if group.is_abelian() => {
            let mut acc = group.identity();
            for (&g, &c) in elements.iter().zip(counts) {
                for _ in 0..c {
                    acc = group.mul(acc, g);
                }
            }
            Some(acc == group.identity())
        }
        _ => None,
    }
}

/// Does `seq` split into two nontrivial product-one subsequences?
/// Dispatches to a witness-free scan; `seq` is assumed product-one.
pub fn is_splittable(seq: &Sequence) -> Result<bool> {
    let group = seq.group();
    if seq.len() < 2 {
        return Ok(false);
    }
    if seq.multiplicity(group.identity()) > 0 {
        return Ok(true);
    }
    match group.presentation() {
        Presentation::Dihedral(n) if n <= 64 => {
            let elements: Vec<GroupElement> =
                seq.counts().iter().map(|&(e, _)| GroupElement(e)).collect();
            let full: Vec<u32> = seq.counts().iter().map(|&(_, m)| m).collect();
            Ok(dihedral_splittable(group, &elements, &full))
        }
        _ if group.is_abelian() => Ok(abelian_splittable(seq)),
        _ => Ok(find_split(seq)?.is_some()),
    }
}

/// Scan sub-multisets `T` with `|T| <= |S|/2`, testing both sides with the
/// additive criterion.
fn dihedral_splittable(group: &FiniteGroup, elements: &[GroupElement], full: &[u32]) -> bool {
    let n = match group.presentation() {
        Presentation::Dihedral(n) => n,
        _ => unreachable!(),
    };
    let len: u32 = full.iter().sum();
    let half = len / 2;
    let mut sub = vec![0u32; full.len()];
    let mut rot = Vec::new();
    let mut refl = Vec::new();
    let mut rest = vec![0u32; full.len()];
    loop {
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == full.len() {
                return false;
            }
            if sub[pos] < full[pos] {
                sub[pos] += 1;
                break;
            }
            sub[pos] = 0;
            pos += 1;
        }
        let size: u32 = sub.iter().sum();
        if size == 0 || size > half {
            continue;
        }
        fill_parts(group, elements, &sub, &mut rot, &mut refl);
        if !po64(n, &rot, &refl) {
            continue;
        }
        for (r, (&f, &s)) in rest.iter_mut().zip(full.iter().zip(sub.iter())) {
            *r = f - s;
        }
        fill_parts(group, elements, &rest, &mut rot, &mut refl);
        if po64(n, &rot, &refl) {
            return true;
        }
    }
}

/// Size-windowed subset-product walk over an abelian group: some nonempty
/// proper sub-multiset multiplies to the identity.
fn abelian_splittable(seq: &Sequence) -> bool {
    let group = seq.group();
    let order = group.order() as usize;
    let len = seq.len();
    if len > 127 {
        // atoms over an abelian group never reach this length
        return true;
    }
    let mut f: Vec<u128> = vec![0; order];
    f[group.identity().index()] = 1;
    for &(e, m) in seq.counts() {
        let g = GroupElement(e);
        for _ in 0..m {
            let snapshot = f.clone();
            for (idx, &bits) in snapshot.iter().enumerate() {
                if bits != 0 {
                    let target = group.mul(GroupElement(idx as u16), g).index();
                    f[target] |= bits << 1;
                }
            }
        }
    }
    let window: u128 = (1u128 << len) - 2; // sizes 1..=len-1
    f[group.identity().index()] & window != 0
}

/// Is `seq` an atom: product-one, and admitting no split into two
/// nontrivial product-one subsequences. The empty sequence is the unit,
/// not an atom.
pub fn is_atom(seq: &Sequence, cap: usize) -> Result<bool> {
    if seq.is_empty() {
        return Ok(false);
    }
    if seq.len() > cap {
        return Err(Error::ResourceLimit { what: "is_atom sequence length".into(), limit: cap });
    }
    if !is_product_one(seq, cap)? {
        return Ok(false);
    }
    if seq.len() == 1 {
        // the only product-one singleton is the identity term
        return Ok(true);
    }
    if seq.multiplicity(seq.group().identity()) > 0 {
        // an identity term splits off as its own product-one factor
        return Ok(false);
    }
    Ok(!is_splittable(seq)?)
}

/// Find a split `seq = T . (seq - T)` with both sides nontrivial
/// product-one, if one exists. Works over any group via a product-set table
/// on all sub-multisets.
pub fn find_split(seq: &Sequence) -> Result<Option<(Sequence, Sequence)>> {
    let group = seq.group();
    let identity = group.identity();
    let elems: Vec<GroupElement> = seq.counts().iter().map(|&(e, _)| GroupElement(e)).collect();
    let full: Vec<u32> = seq.counts().iter().map(|&(_, m)| m).collect();
    let table = product_table(group, &elems, &full);
    let half = seq.len() / 2;
    let mut keys: Vec<&Vec<u32>> = table.keys().collect();
    keys.sort_unstable_by_key(|c| c.iter().map(|&v| v as usize).sum::<usize>());
    for c in keys {
        let size: usize = c.iter().map(|&v| v as usize).sum();
        if size == 0 || size > half {
            continue;
        }
        if !table[c].contains(identity) {
            continue;
        }
        let rest: Vec<u32> = full.iter().zip(c).map(|(&f, &v)| f - v).collect();
        if table[&rest].contains(identity) {
            let pairs_t: Vec<(GroupElement, u32)> =
                elems.iter().copied().zip(c.iter().copied()).collect();
            let pairs_r: Vec<(GroupElement, u32)> =
                elems.iter().copied().zip(rest.iter().copied()).collect();
            let t = Sequence::from_pairs(group, &pairs_t)?;
            let r = Sequence::from_pairs(group, &pairs_r)?;
            return Ok(Some((t, r)));
        }
    }
    Ok(None)
}

/// Product sets of every sub-multiset of a counts vector, bottom-up.
fn product_table(
    group: &Arc<FiniteGroup>,
    elems: &[GroupElement],
    full: &[u32],
) -> HashMap<Vec<u32>, ElemSet> {
    let mut table: HashMap<Vec<u32>, ElemSet> = HashMap::new();
    table.insert(vec![0; full.len()], ElemSet::singleton(group, group.identity()));
    let mut frontier = vec![vec![0u32; full.len()]];
    while !frontier.is_empty() {
        let mut next_frontier: Vec<Vec<u32>> = Vec::new();
        for c in &frontier {
            for i in 0..full.len() {
                if c[i] >= full[i] {
                    continue;
                }
                let mut nc = c.clone();
                nc[i] += 1;
                if table.contains_key(&nc) {
                    continue;
                }
                let mut set = ElemSet::empty(group);
                for j in 0..full.len() {
                    if nc[j] == 0 {
                        continue;
                    }
                    let mut pred = nc.clone();
                    pred[j] -= 1;
                    set.union_with(&table[&pred].right_mul(group, elems[j]));
                }
                table.insert(nc.clone(), set);
                next_frontier.push(nc);
            }
        }
        frontier = next_frontier;
    }
    table
}

struct Enumerator {
    group: Arc<FiniteGroup>,
    /// Search order (reflections before rotations in dihedral groups so the
    /// parity cutoff applies once all remaining elements commute).
    elements: Vec<GroupElement>,
    cap: usize,
    exact_support: bool,
    /// For the dihedral parity cutoff: first position from which every
    /// remaining element is a rotation.
    rotation_tail: usize,
    atoms: Vec<Sequence>,
}

impl Enumerator {
    fn record(&mut self, counts: &[u32]) {
        let pairs: Vec<(GroupElement, u32)> =
            self.elements.iter().copied().zip(counts.iter().copied()).collect();
        self.atoms.push(Sequence::from_pairs(&self.group, &pairs).expect("valid atom"));
    }

    fn support_ok(&self, counts: &[u32]) -> bool {
        !self.exact_support || counts.iter().all(|&c| c > 0)
    }

    /// Abelian-support walk with the zero-sum-free prefix cutoff.
    fn run_abelian(&mut self, counts: &mut Vec<u32>, pos: usize, len: usize, prod: GroupElement, reach: &ElemSet) {
        if pos == self.elements.len() {
            return;
        }
        if self.exact_support {
            let remaining = self.elements.len() - pos;
            if len + remaining > self.cap {
                return;
            }
        }
        self.run_abelian(counts, pos + 1, len, prod, reach);
        let g = self.elements[pos];
        let group = Arc::clone(&self.group);
        let mut cur_prod = prod;
        let mut cur_reach = reach.clone();
        let mut cur_len = len;
        loop {
            if cur_len + 1 > self.cap {
                break;
            }
            cur_prod = group.mul(cur_prod, g);
            let mut new_reach = cur_reach.clone();
            new_reach.union_with(&cur_reach.right_mul(&group, g));
            new_reach.insert(g);
            cur_len += 1;
            counts[pos] += 1;
            if cur_prod == group.identity() {
                // previous state was product-one free, so this is minimal
                if self.support_ok(counts) {
                    self.record(counts);
                }
                break;
            }
            if new_reach.contains(group.identity()) {
                break;
            }
            cur_reach = new_reach;
            self.run_abelian(counts, pos + 1, cur_len, cur_prod, &cur_reach);
        }
        while counts[pos] > 0 {
            counts[pos] -= 1;
        }
    }

    /// General walk: every multiset up to the cap is visited; candidates are
    /// tested for product-one and minimality at each node.
    fn run_general(&mut self, counts: &mut Vec<u32>, pos: usize, len: usize, reflections: usize) {
        if pos == self.elements.len() {
            return;
        }
        if self.exact_support {
            let remaining = self.elements.len() - pos;
            if len + remaining > self.cap {
                return;
            }
        }
        // Once only rotations remain, the reflection count is frozen: odd
        // counts can never reach product-one.
        if pos == self.rotation_tail && reflections % 2 == 1 {
            return;
        }
        self.run_general(counts, pos + 1, len, reflections);
        let g = self.elements[pos];
        let is_refl = self.group.is_reflection(g);
        let mut cur_len = len;
        let mut cur_refl = reflections;
        while cur_len + 1 <= self.cap {
            cur_len += 1;
            counts[pos] += 1;
            if is_refl {
                cur_refl += 1;
            }
            self.try_candidate(counts);
            self.run_general(counts, pos + 1, cur_len, cur_refl);
        }
        while counts[pos] > 0 {
            counts[pos] -= 1;
        }
    }

    fn try_candidate(&mut self, counts: &[u32]) {
        if !self.support_ok(counts) {
            return;
        }
        let len: u32 = counts.iter().sum();
        if len == 0 {
            return;
        }
        match counts_po_fast(&self.group, &self.elements, counts) {
            Some(false) => return,
            Some(true) => {
                if matches!(self.group.presentation(), Presentation::Dihedral(n) if n <= 64) {
                    if dihedral_splittable(&self.group, &self.elements, counts) {
                        return;
                    }
                    self.record(counts);
                    return;
                }
            }
            None => {
                // no fast path: fall through to the sequence-based checks
                let pairs: Vec<(GroupElement, u32)> =
                    self.elements.iter().copied().zip(counts.iter().copied()).collect();
                let seq = Sequence::from_pairs(&self.group, &pairs).expect("valid candidate");
                match is_product_one(&seq, len as usize) {
                    Ok(true) => {}
                    _ => return,
                }
                if let Ok(false) = is_splittable(&seq) {
                    self.atoms.push(seq);
                }
                return;
            }
        }
        // abelian fast path confirmed product-one; minimality via the
        // generic splitter
        let pairs: Vec<(GroupElement, u32)> =
            self.elements.iter().copied().zip(counts.iter().copied()).collect();
        let seq = Sequence::from_pairs(&self.group, &pairs).expect("valid candidate");
        if let Ok(false) = is_splittable(&seq) {
            self.atoms.push(seq);
        }
    }
}

fn validate_subset(group: &Arc<FiniteGroup>, subset: &[GroupElement]) -> Result<Vec<u16>> {
    if subset.is_empty() {
        return Err(Error::InvalidParameter("empty support subset".into()));
    }
    let mut idx: Vec<u16> = Vec::with_capacity(subset.len());
    for &g in subset {
        group.check_element(g)?;
        idx.push(g.0);
    }
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

/// All atoms with support inside `subset` and length at most `max_len`.
///
/// `certified_complete` is set when `max_len` reaches `|<subset>|`, which no
/// atom length can exceed.
pub fn enumerate_atoms(
    group: &Arc<FiniteGroup>,
    subset: &[GroupElement],
    max_len: usize,
) -> Result<AtomSet> {
    if max_len < 1 {
        return Err(Error::InvalidParameter("max_len must be >= 1".into()));
    }
    let subset_idx = validate_subset(group, subset)?;
    let subgroup = group.generated_subgroup(&subset.to_vec())?;
    let bound = subgroup.order() as usize;
    let cap = max_len.min(bound);
    let certified = max_len >= bound;

    let mut atoms: Vec<Sequence> = Vec::new();
    let identity = group.identity();
    if subset_idx.binary_search(&identity.0).is_ok() {
        atoms.push(Sequence::repeated(group, identity, 1)?);
    }

    // Identity terms never occur in longer atoms.
    let mut elements: Vec<GroupElement> = subset_idx
        .iter()
        .filter(|&&i| i != identity.0)
        .map(|&i| GroupElement(i))
        .collect();
    // Reflections first; the rotation tail then admits the parity cutoff.
    elements.sort_unstable_by_key(|&g| std::cmp::Reverse(g.0));
    let rotation_tail = elements
        .iter()
        .position(|&g| !group.is_reflection(g))
        .unwrap_or(elements.len());

    if !elements.is_empty() {
        let abelian_support = {
            let sub = group.generated_subgroup(&elements)?;
            let members: Vec<GroupElement> = sub.elements().collect();
            members
                .iter()
                .all(|&a| members.iter().all(|&b| group.mul(a, b) == group.mul(b, a)))
        };
        let mut en = Enumerator {
            group: Arc::clone(group),
            elements,
            cap,
            exact_support: false,
            rotation_tail,
            atoms: Vec::new(),
        };
        let mut counts = vec![0u32; en.elements.len()];
        if abelian_support {
            let reach = ElemSet::empty(group);
            en.run_abelian(&mut counts, 0, 0, identity, &reach);
        } else {
            en.run_general(&mut counts, 0, 0, 0);
        }
        atoms.extend(en.atoms);
    }

    atoms.sort_unstable_by(graded_lex_cmp);
    atoms.dedup();
    Ok(AtomSet {
        group: Arc::clone(group),
        subset: subset_idx,
        max_len,
        atoms,
        certified_complete: certified,
    })
}

/// Element permutations of the automorphisms `a -> a^u, t -> a^c t` of a
/// dihedral group (all automorphisms for odd `n`).
pub fn dihedral_automorphism_perms(group: &FiniteGroup) -> Vec<Vec<u16>> {
    let n = match group.presentation() {
        Presentation::Dihedral(n) => n,
        _ => return Vec::new(),
    };
    let mut perms = Vec::new();
    for u in 1..n {
        if gcd(u, n) != 1 {
            continue;
        }
        for c in 0..n {
            let mut perm = vec![0u16; (2 * n) as usize];
            for x in 0..n {
                perm[x as usize] = ((u * x) % n) as u16;
                // a^x t -> a^(u x + c) t
                perm[(n + x) as usize] = (n + (u * x + c) % n) as u16;
            }
            perms.push(perm);
        }
    }
    perms
}

/// Atoms over the full group, up to `max_len`.
///
/// Dihedral groups run one search per automorphism orbit of supports and
/// expand the results through the orbit, in parallel over orbit
/// representatives; other groups fall back to the direct walk.
pub fn enumerate_atoms_full(group: &Arc<FiniteGroup>, max_len: usize) -> Result<AtomSet> {
    let all: Vec<GroupElement> = group.elements().collect();
    let n = match group.presentation() {
        Presentation::Dihedral(n) if group.order() <= 64 => n,
        _ => return enumerate_atoms(group, &all, max_len),
    };
    let perms = dihedral_automorphism_perms(group);
    let order = group.order() as usize;
    let nonident: Vec<u16> = (1..order as u16).collect();

    // Orbit representatives of nonempty supports (identity excluded).
    let mut reps: Vec<u64> = Vec::new();
    let total_masks: u64 = 1u64 << nonident.len();
    for mask in 1..total_masks {
        let mut min_mask = mask;
        for perm in &perms {
            let mut img: u64 = 0;
            for (bit, &e) in nonident.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let target = perm[e as usize];
                    let tbit = nonident.binary_search(&target).expect("identity is fixed");
                    img |= 1u64 << tbit;
                }
            }
            min_mask = min_mask.min(img);
        }
        if min_mask == mask {
            reps.push(mask);
        }
    }

    let cap = max_len.min(order);
    let certified = max_len >= order;
    let group_ref = Arc::clone(group);
    let found: Vec<Vec<Sequence>> = reps
        .par_iter()
        .map(|&mask| {
            let support: Vec<GroupElement> = nonident
                .iter()
                .enumerate()
                .filter_map(|(bit, &e)| (mask >> bit & 1 == 1).then_some(GroupElement(e)))
                .collect();
            enumerate_support_atoms(&group_ref, &support, cap)
        })
        .collect();

    let mut set: BTreeMap<Vec<(u16, u32)>, Sequence> = BTreeMap::new();
    let ident_atom = Sequence::repeated(group, group.identity(), 1)?;
    set.insert(ident_atom.counts().to_vec(), ident_atom);
    for atoms in found {
        for atom in atoms {
            for perm in &perms {
                let image = atom
                    .map_elements(|g| GroupElement(perm[g.index()]))
                    .expect("automorphism image");
                set.entry(image.counts().to_vec()).or_insert(image);
            }
        }
    }
    let mut atoms: Vec<Sequence> = set.into_values().collect();
    atoms.sort_unstable_by(graded_lex_cmp);
    let _ = n;
    Ok(AtomSet {
        group: Arc::clone(group),
        subset: (0..order as u16).collect(),
        max_len,
        atoms,
        certified_complete: certified,
    })
}

/// Atoms whose support is exactly `support` (which must not contain the
/// identity), up to length `cap`.
fn enumerate_support_atoms(
    group: &Arc<FiniteGroup>,
    support: &[GroupElement],
    cap: usize,
) -> Vec<Sequence> {
    if support.len() > cap {
        return Vec::new();
    }
    let mut elements: Vec<GroupElement> = support.to_vec();
    elements.sort_unstable_by_key(|&g| std::cmp::Reverse(g.0));
    let rotation_tail =
        elements.iter().position(|&g| !group.is_reflection(g)).unwrap_or(elements.len());
    let abelian_support = elements.iter().all(|&a| {
        elements.iter().all(|&b| group.mul(a, b) == group.mul(b, a))
    });
    let mut en = Enumerator {
        group: Arc::clone(group),
        elements,
        cap,
        exact_support: true,
        rotation_tail,
        atoms: Vec::new(),
    };
    let mut counts = vec![0u32; en.elements.len()];
    if abelian_support {
        let reach = ElemSet::empty(group);
        en.run_abelian(&mut counts, 0, 0, group.identity(), &reach);
    } else {
        en.run_general(&mut counts, 0, 0, 0);
    }
    en.atoms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::parse_sequence;

    fn d6() -> Arc<FiniteGroup> {
        FiniteGroup::dihedral(3).unwrap()
    }

    fn seq(group: &Arc<FiniteGroup>, text: &str) -> Sequence {
        parse_sequence(group, text).unwrap()
    }

    #[test]
    fn atom_recognition_examples() {
        let g = d6();
        assert!(is_atom(&seq(&g, "a:4 t:2"), 12).unwrap());
        assert!(is_atom(&seq(&g, "t:2"), 12).unwrap());
        assert!(!is_atom(&seq(&g, "t:4"), 12).unwrap());
        assert!(!is_atom(&Sequence::empty(&g), 12).unwrap());
        // t . a . t . a is an atom even though it contains the product-one
        // subsequence t^[2]
        assert!(is_atom(&seq(&g, "t:2 a:2"), 12).unwrap());
        // identity term only stands alone
        assert!(is_atom(&seq(&g, "1:1"), 12).unwrap());
        assert!(!is_atom(&seq(&g, "1:1 a:3"), 12).unwrap());
    }

    #[test]
    fn split_is_reported() {
        let g = d6();
        let (t, rest) = find_split(&seq(&g, "t:4")).unwrap().unwrap();
        assert_eq!(t.concat(&rest).unwrap(), seq(&g, "t:4"));
        assert!(is_product_one(&t, 12).unwrap());
        assert!(is_product_one(&rest, 12).unwrap());
        assert!(find_split(&seq(&g, "t:2 a:2")).unwrap().is_none());
    }

    #[test]
    fn reflection_pair_atoms() {
        // over {t, a t} with n = 3 exactly three atoms
        let g = d6();
        let t = g.reflection(0).unwrap();
        let at = g.reflection(1).unwrap();
        let set = enumerate_atoms(&g, &[t, at], 6).unwrap();
        assert!(set.certified_complete());
        let expect = ["t:2", "a*t:2", "t:3 a*t:3"];
        assert_eq!(set.len(), 3);
        for e in expect {
            assert!(set.contains(&seq(&g, e)), "missing {e}");
        }
    }

    #[test]
    fn rotation_subgroup_atoms_include_identity_atom() {
        let g = d6();
        let subset: Vec<GroupElement> = (0..3).map(GroupElement).collect();
        let set = enumerate_atoms(&g, &subset, 6).unwrap();
        let expect = ["1:1", "a:1 a^2:1", "a:3", "a^2:3"];
        assert_eq!(set.len(), expect.len());
        for e in expect {
            assert!(set.contains(&seq(&g, e)), "missing {e}");
        }
    }

    #[test]
    fn alpha_tau_atoms() {
        // A({a, t}) = {a^[3]} + {a^[2i] t^[2]}
        let g = d6();
        let a = g.rotation(1).unwrap();
        let t = g.reflection(0).unwrap();
        let set = enumerate_atoms(&g, &[a, t], 6).unwrap();
        let expect = ["a:3", "t:2", "a:2 t:2", "a:4 t:2"];
        assert_eq!(set.len(), expect.len());
        for e in expect {
            assert!(set.contains(&seq(&g, e)), "missing {e}");
        }
    }

    #[test]
    fn atoms_pass_is_atom_and_failures_split() {
        let g = FiniteGroup::dihedral(5).unwrap();
        let subset: Vec<GroupElement> =
            vec![g.rotation(1).unwrap(), g.reflection(0).unwrap(), g.reflection(1).unwrap()];
        let set = enumerate_atoms(&g, &subset, 10).unwrap();
        assert!(set.certified_complete());
        for atom in set.atoms() {
            assert!(is_atom(atom, 10).unwrap(), "{atom:?}");
        }
        // every product-one non-atom in range splits, with a verifiable split
        let a = g.rotation(1).unwrap();
        let t = g.reflection(0).unwrap();
        for ka in 0..=6u32 {
            for kt in 0..=4u32 {
                let s = Sequence::from_pairs(&g, &[(a, ka), (t, kt)]).unwrap();
                if s.is_empty() || s.len() > 10 || !is_product_one(&s, 10).unwrap() {
                    continue;
                }
                let atom = is_atom(&s, 10).unwrap();
                match find_split(&s).unwrap() {
                    None => assert!(atom, "unsplittable but not an atom: {s:?}"),
                    Some((x, y)) => {
                        assert!(!atom, "atom with a split: {s:?}");
                        assert_eq!(x.concat(&y).unwrap(), s);
                        assert!(is_product_one(&x, 10).unwrap());
                        assert!(is_product_one(&y, 10).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn full_enumeration_matches_orbit_enumeration_d6() {
        let g = d6();
        let all: Vec<GroupElement> = g.elements().collect();
        let direct = enumerate_atoms(&g, &all, 6).unwrap();
        let orbit = enumerate_atoms_full(&g, 6).unwrap();
        assert!(orbit.certified_complete());
        assert_eq!(direct.len(), orbit.len());
        for (a, b) in direct.atoms().iter().zip(orbit.atoms()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn certification_flag() {
        let g = d6();
        let t = g.reflection(0).unwrap();
        let a = g.rotation(1).unwrap();
        let partial = enumerate_atoms(&g, &[a, t], 3).unwrap();
        assert!(!partial.certified_complete());
        let full = enumerate_atoms(&g, &[a, t], 6).unwrap();
        assert!(full.certified_complete());
    }

    #[test]
    fn graded_lex_is_total_and_matches_sort() {
        let g = d6();
        let set = enumerate_atoms_full(&g, 6).unwrap();
        for w in set.atoms().windows(2) {
            assert_eq!(graded_lex_cmp(&w[0], &w[1]), Ordering::Less);
        }
    }
}
