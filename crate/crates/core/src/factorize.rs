//! Factorizations of product-one sequences into atoms: the set `Z(a)`, sets
//! of lengths with their distance sets and elasticities, the factorization
//! metric, and catenary degrees.

use std::collections::HashMap;

use num::rational::Ratio;

use crate::atoms::AtomSet;
use crate::error::{Error, Result};
use crate::sequence::{format_sequence, is_product_one, Sequence};

/// A multiset of atoms (indices into a fixed [`AtomSet`]) concatenating to
/// `target`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    /// Sorted `(atom index, multiplicity)` pairs.
    pub atoms: Vec<(usize, u32)>,
    pub target: Sequence,
}

impl Factorization {
    /// Number of atoms counted with multiplicity, `|z|`.
    pub fn length(&self) -> usize {
        self.atoms.iter().map(|&(_, m)| m as usize).sum()
    }

    pub fn describe(&self, set: &AtomSet) -> String {
        self.atoms
            .iter()
            .map(|&(i, m)| format!("[{}]^{}", format_sequence(&set.atoms()[i]), m))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Distance `d(z, z') = max(m, n)` after cancelling the common atom
/// multiset.
pub fn factorization_distance(z1: &Factorization, z2: &Factorization) -> Result<usize> {
    if z1.target != z2.target {
        return Err(Error::InvalidArgument(
            "factorization distance requires a common target".into(),
        ));
    }
    let mut residual1 = 0usize;
    let mut residual2 = 0usize;
    let mut i = 0;
    let mut j = 0;
    while i < z1.atoms.len() || j < z2.atoms.len() {
        match (z1.atoms.get(i), z2.atoms.get(j)) {
            (Some(&(a, ma)), Some(&(b, mb))) if a == b => {
                let common = ma.min(mb);
                residual1 += (ma - common) as usize;
                residual2 += (mb - common) as usize;
                i += 1;
                j += 1;
            }
            (Some(&(a, ma)), Some(&(b, _))) if a < b => {
                residual1 += ma as usize;
                i += 1;
            }
            (Some(_), Some(&(_, mb))) => {
                residual2 += mb as usize;
                j += 1;
            }
            (Some(&(_, ma)), None) => {
                residual1 += ma as usize;
                i += 1;
            }
            (None, Some(&(_, mb))) => {
                residual2 += mb as usize;
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Ok(residual1.max(residual2))
}

fn project_counts(set: &AtomSet, seq: &Sequence) -> Result<Vec<u32>> {
    let subset = set.subset();
    let mut counts = vec![0u32; subset.len()];
    for &(e, m) in seq.counts() {
        match subset.binary_search(&e) {
            Ok(pos) => counts[pos] = m,
            Err(_) => {
                return Err(Error::InvalidArgument(format!(
                    "sequence support leaves the atom set's subset: {}",
                    format_sequence(seq)
                )))
            }
        }
    }
    Ok(counts)
}

/// All factorizations of `a` over a certified atom set.
///
/// A non-product-one `a` has no factorization and reports an error; the
/// empty sequence has exactly the empty factorization.
pub fn factorizations(a: &Sequence, set: &AtomSet) -> Result<Vec<Factorization>> {
    if !set.certified_complete() {
        return Err(Error::InvalidArgument(
            "factorizations require a certified-complete atom set".into(),
        ));
    }
    let target = project_counts(set, a)?;
    if !is_product_one(a, a.len().max(1))? {
        return Err(Error::NoFactorization);
    }
    let atom_counts: Vec<Vec<u32>> = set
        .atoms()
        .iter()
        .map(|atom| project_counts(set, atom).expect("atoms live in the subset"))
        .collect();

    let mut out = Vec::new();
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    let mut remaining = target;
    rec_factorize(set, &atom_counts, 0, &mut remaining, &mut chosen, &mut out, a);
    Ok(out)
}

fn rec_factorize(
    set: &AtomSet,
    atom_counts: &[Vec<u32>],
    start: usize,
    remaining: &mut Vec<u32>,
    chosen: &mut Vec<(usize, u32)>,
    out: &mut Vec<Factorization>,
    target_seq: &Sequence,
) {
    let lowest = match remaining.iter().position(|&c| c > 0) {
        None => {
            out.push(Factorization { atoms: chosen.clone(), target: target_seq.clone() });
            return;
        }
        Some(p) => p,
    };
    // some atom of index >= start must eventually cover the lowest
    // remaining element, else the branch is dead
    if !(start..atom_counts.len()).any(|i| {
        atom_counts[i][lowest] > 0
            && atom_counts[i].iter().zip(remaining.iter()).all(|(&need, &have)| need <= have)
    }) {
        return;
    }
    for i in start..atom_counts.len() {
        let ac = &atom_counts[i];
        if !ac.iter().zip(remaining.iter()).all(|(&need, &have)| need <= have) {
            continue;
        }
        for (slot, &need) in remaining.iter_mut().zip(ac.iter()) {
            *slot -= need;
        }
        match chosen.last_mut() {
            Some(&mut (last, ref mut m)) if last == i => *m += 1,
            _ => chosen.push((i, 1)),
        }
        rec_factorize(set, atom_counts, i, remaining, chosen, out, target_seq);
        match chosen.last_mut() {
            Some(&mut (last, ref mut m)) if last == i && *m > 1 => *m -= 1,
            _ => {
                chosen.pop();
            }
        }
        for (slot, &need) in remaining.iter_mut().zip(ac.iter()) {
            *slot += need;
        }
    }
}

/// Shared-memo dynamic program for sets of lengths over one atom set.
///
/// Length masks are `u128` bitmaps (bit `k` set iff some factorization has
/// `k` atoms), so targets are limited to length 127.
pub struct LengthDp<'a> {
    set: &'a AtomSet,
    atom_counts: Vec<Vec<u32>>,
    memo: HashMap<Vec<u16>, u128>,
}

impl<'a> LengthDp<'a> {
    pub fn new(set: &'a AtomSet) -> LengthDp<'a> {
        let atom_counts = set
            .atoms()
            .iter()
            .map(|atom| project_counts(set, atom).expect("atoms live in the subset"))
            .collect();
        LengthDp { set, atom_counts, memo: HashMap::new() }
    }

    pub fn lengths_mask(&mut self, seq: &Sequence) -> Result<u128> {
        if seq.len() > 127 {
            return Err(Error::ResourceLimit { what: "length-set target".into(), limit: 127 });
        }
        let counts = project_counts(self.set, seq)?;
        let key: Vec<u16> = counts.iter().map(|&c| c as u16).collect();
        Ok(self.mask_rec(&key))
    }

    fn mask_rec(&mut self, counts: &[u16]) -> u128 {
        if counts.iter().all(|&c| c == 0) {
            return 1; // the empty factorization
        }
        if let Some(&hit) = self.memo.get(counts) {
            return hit;
        }
        let lowest = counts.iter().position(|&c| c > 0).unwrap();
        let mut mask = 0u128;
        for ac in &self.atom_counts.clone() {
            if ac[lowest] == 0 {
                continue;
            }
            if !ac.iter().zip(counts.iter()).all(|(&need, &have)| need as u16 <= have) {
                continue;
            }
            let next: Vec<u16> =
                counts.iter().zip(ac.iter()).map(|(&have, &need)| have - need as u16).collect();
            mask |= self.mask_rec(&next) << 1;
        }
        self.memo.insert(counts.to_vec(), mask);
        mask
    }

    /// Sorted set of lengths of `seq`.
    pub fn lengths_of(&mut self, seq: &Sequence) -> Result<Vec<usize>> {
        let mask = self.lengths_mask(seq)?;
        Ok(mask_to_lengths(mask))
    }
}

pub fn mask_to_lengths(mask: u128) -> Vec<usize> {
    (0..128).filter(|&k| mask >> k & 1 == 1).collect()
}

/// Successive gaps of a sorted length set.
pub fn distance_set(lengths: &[usize]) -> Vec<usize> {
    lengths.windows(2).map(|w| w[1] - w[0]).collect()
}

/// `rho(L) = sup(L cap N) / min(L cap N)`, with `rho = 1` when `L` has no
/// positive member.
pub fn elasticity(lengths: &[usize]) -> Ratio<u64> {
    let positive: Vec<u64> = lengths.iter().filter(|&&l| l > 0).map(|&l| l as u64).collect();
    match (positive.first(), positive.last()) {
        (Some(&min), Some(&max)) => Ratio::new(max, min),
        _ => Ratio::new(1, 1),
    }
}

/// The length set of `a` with its distance set and elasticity.
pub struct LengthSet {
    pub lengths: Vec<usize>,
    pub distances: Vec<usize>,
    pub elasticity: Ratio<u64>,
}

pub fn length_set(a: &Sequence, set: &AtomSet) -> Result<LengthSet> {
    if !set.certified_complete() {
        return Err(Error::InvalidArgument("length sets require a certified atom set".into()));
    }
    if !is_product_one(a, a.len().max(1))? {
        return Err(Error::NoFactorization);
    }
    let mut dp = LengthDp::new(set);
    let lengths = dp.lengths_of(a)?;
    Ok(LengthSet {
        distances: distance_set(&lengths),
        elasticity: elasticity(&lengths),
        lengths,
    })
}

/// Catenary degree `c(a)`: the least `N` such that any two factorizations
/// are linked by a chain with step distance at most `N`; 0 iff the
/// factorization is unique.
pub fn catenary_degree(a: &Sequence, set: &AtomSet, z_budget: usize) -> Result<usize> {
    let zs = factorizations(a, set)?;
    if zs.len() > z_budget {
        return Err(Error::ResourceLimit { what: "factorization count".into(), limit: z_budget });
    }
    if zs.len() <= 1 {
        return Ok(0);
    }
    let m = zs.len();
    let mut edges: Vec<(usize, usize, usize)> = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            let d = factorization_distance(&zs[i], &zs[j])?;
            edges.push((d, i, j));
        }
    }
    edges.sort_unstable();

    // union-find over factorizations, adding edges by increasing distance
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let mut components = m;
    for (d, i, j) in edges {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            components -= 1;
            if components == 1 {
                return Ok(d);
            }
        }
    }
    unreachable!("complete graph always connects")
}
