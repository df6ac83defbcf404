//! Group-level arithmetic invariants: Davenport constants, the omega
//! invariant, bounded minimal distances, half-factoriality profiles, unions
//! of sets of lengths, and the distinguished distance sets.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::integer::gcd;
use num::rational::Ratio;

use crate::atoms::{enumerate_atoms, enumerate_atoms_full, AtomSet};
use crate::cyclic::min_delta_cyclic_exact;
use crate::error::{Error, Result};
use crate::factorize::{distance_set, elasticity, LengthDp};
use crate::group::{FiniteGroup, GroupElement, Presentation};
use crate::report::{InvariantReport, Method, Value};
use crate::sequence::{is_product_one, product_one_status, Sequence};

/// `D`, `d` and `K` of a subset, each with its provenance.
pub struct DavenportConstants {
    pub large: InvariantReport,
    pub small: InvariantReport,
    pub cross: InvariantReport,
    pub atoms: AtomSet,
}

/// Compute the large and small Davenport constants and the cross number of
/// `G0`. Exact when the atom enumeration is certified complete; a smaller
/// `max_len` budget yields lower bounds tagged as bounded search.
pub fn davenport_constants(
    group: &Arc<FiniteGroup>,
    subset: &[GroupElement],
    max_len: Option<usize>,
) -> Result<DavenportConstants> {
    let subgroup_order = group.generated_subgroup(subset)?.order() as usize;
    let budget = max_len.unwrap_or(subgroup_order);
    let full_group = subset.len() == group.order() as usize;
    let atoms = if full_group {
        enumerate_atoms_full(group, budget)?
    } else {
        enumerate_atoms(group, subset, budget)?
    };
    let method = if atoms.certified_complete() {
        Method::Oracle
    } else {
        Method::BoundedSearch(budget)
    };

    let d_large = atoms.max_atom_len();
    let mut large = InvariantReport::new("davenport_large", Value::Int(d_large as i64), method.clone());
    large.input("subset_size", subset.len().to_string());

    let d_small = longest_product_one_free(group, subset, subgroup_order)?;
    let small = InvariantReport::new("davenport_small", Value::Int(d_small as i64), Method::Oracle);

    let k_max = atoms
        .atoms()
        .iter()
        .map(|a| a.cross_number())
        .max()
        .unwrap_or_else(|| Ratio::new(0, 1));
    let cross = InvariantReport::new(
        "cross_number",
        Value::Rational(*k_max.numer() as i64, *k_max.denom() as i64),
        method,
    );
    Ok(DavenportConstants { large, small, cross, atoms })
}

/// Longest product-one free sequence over `subset`; product-one freeness is
/// inherited by subsequences, so the walk only extends free nodes.
fn longest_product_one_free(
    group: &Arc<FiniteGroup>,
    subset: &[GroupElement],
    subgroup_order: usize,
) -> Result<usize> {
    let identity = group.identity();
    let elements: Vec<GroupElement> =
        subset.iter().copied().filter(|&g| g != identity).collect();
    let mut best = 0usize;
    let mut counts = vec![0u32; elements.len()];
    // a product-one free sequence is shorter than the subgroup it generates
    let cap = subgroup_order.saturating_sub(1).max(1);
    fn rec(
        group: &Arc<FiniteGroup>,
        elements: &[GroupElement],
        counts: &mut Vec<u32>,
        pos: usize,
        len: usize,
        cap: usize,
        best: &mut usize,
    ) -> Result<()> {
        if pos == elements.len() {
            return Ok(());
        }
        rec(group, elements, counts, pos + 1, len, cap, best)?;
        let mut cur_len = len;
        while cur_len + 1 <= cap {
            cur_len += 1;
            counts[pos] += 1;
            let pairs: Vec<(GroupElement, u32)> =
                elements.iter().copied().zip(counts.iter().copied()).collect();
            let seq = Sequence::from_pairs(group, &pairs)?;
            let (_, free) = product_one_status(&seq, cur_len.max(12))?;
            if !free {
                break;
            }
            *best = (*best).max(cur_len);
            rec(group, elements, counts, pos + 1, cur_len, cap, best)?;
        }
        while counts[pos] > 0 {
            counts[pos] -= 1;
        }
        Ok(())
    }
    rec(group, &elements, &mut counts, 0, 0, cap, &mut best)?;
    Ok(best)
}

/// `(is_half_factorial, is_lcn)` for a subset: every atom has cross number
/// exactly 1, resp. at least 1.
pub fn cross_number_profile(
    group: &Arc<FiniteGroup>,
    subset: &[GroupElement],
) -> Result<(bool, bool)> {
    let order = group.generated_subgroup(subset)?.order() as usize;
    let atoms = enumerate_atoms(group, subset, order)?;
    let one = Ratio::new(1u64, 1u64);
    let mut hf = true;
    let mut lcn = true;
    for atom in atoms.atoms() {
        let k = atom.cross_number();
        if k != one {
            hf = false;
        }
        if k < one {
            lcn = false;
        }
    }
    Ok((hf, lcn))
}

/// Walk every multiset over `elements` of size `<= bound`, calling `f` with
/// the counts (aligned to `elements`) and the size.
pub fn for_each_multiset<F: FnMut(&[u32], usize)>(elements_len: usize, bound: usize, mut f: F) {
    let mut counts = vec![0u32; elements_len];
    fn rec<F: FnMut(&[u32], usize)>(
        counts: &mut Vec<u32>,
        pos: usize,
        len: usize,
        bound: usize,
        f: &mut F,
    ) {
        if pos == counts.len() {
            f(counts, len);
            return;
        }
        let mut extra = 0usize;
        loop {
            rec(counts, pos + 1, len + extra, bound, f);
            if len + extra + 1 > bound {
                break;
            }
            extra += 1;
            counts[pos] = extra as u32;
        }
        counts[pos] = 0;
    }
    rec(&mut counts, 0, 0, bound, &mut f);
}

/// Observed distances of `B(G0)` over elements of length at most the bound.
pub struct MinDeltaOutcome {
    /// All distances seen in length sets within the bound, ascending.
    pub observed: Vec<usize>,
    /// gcd of the observed distances (0 when none: half-factorial within
    /// the bound). The true minimum distance divides this value.
    pub gcd: usize,
    pub report: InvariantReport,
}

/// gcd of observed distances over all product-one sequences of length at
/// most `bound` (default `3 * D(G0)`).
pub fn min_delta_bounded(
    group: &Arc<FiniteGroup>,
    subset: &[GroupElement],
    bound: Option<usize>,
) -> Result<MinDeltaOutcome> {
    let order = group.generated_subgroup(subset)?.order() as usize;
    let atoms = enumerate_atoms(group, subset, order)?;
    let bound = bound.unwrap_or(3 * atoms.max_atom_len().max(1));
    let elements = atoms.subset_elements();
    let mut dp = LengthDp::new(&atoms);
    let mut observed: BTreeSet<usize> = BTreeSet::new();
    let mut acc: usize = 0;
    let mut walk_err: Option<Error> = None;
    for_each_multiset(elements.len(), bound, |counts, len| {
        if walk_err.is_some() || len == 0 {
            return;
        }
        let pairs: Vec<(GroupElement, u32)> =
            elements.iter().copied().zip(counts.iter().copied()).collect();
        let seq = match Sequence::from_pairs(group, &pairs) {
            Ok(s) => s,
            Err(e) => {
                walk_err = Some(e);
                return;
            }
        };
        match is_product_one(&seq, len.max(12)) {
            Ok(true) => {}
            Ok(false) => return,
            Err(e) => {
                walk_err = Some(e);
                return;
            }
        }
        match dp.lengths_of(&seq) {
            Ok(lengths) => {
                for d in distance_set(&lengths) {
                    observed.insert(d);
                    acc = gcd(acc, d);
                }
            }
            Err(e) => walk_err = Some(e),
        }
    });
    if let Some(e) = walk_err {
        return Err(e);
    }
    let mut report =
        InvariantReport::new("min_delta", Value::Int(acc as i64), Method::BoundedSearch(bound));
    if observed.is_empty() {
        report.input("half_factorial_within_bound", "true".into());
    }
    Ok(MinDeltaOutcome { observed: observed.into_iter().collect(), gcd: acc, report })
}

/// Union of sets of lengths containing `k`, with its extremes, from a
/// bounded walk over product-one sequences.
pub struct UnionsOutcome {
    pub union: Vec<usize>,
    pub rho_k: usize,
    pub lambda_k: usize,
    pub report: InvariantReport,
}

pub fn unions_of_lengths(
    group: &Arc<FiniteGroup>,
    k: usize,
    budget_len: usize,
) -> Result<UnionsOutcome> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let atoms = enumerate_atoms_full(group, group.order() as usize)?;
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut dp = LengthDp::new(&atoms);
    let mut union_mask: u128 = 0;
    let mut walk_err: Option<Error> = None;
    for_each_multiset(elements.len(), budget_len, |counts, len| {
        if walk_err.is_some() || len < k {
            return;
        }
        let pairs: Vec<(GroupElement, u32)> =
            elements.iter().copied().zip(counts.iter().copied()).collect();
        let seq = match Sequence::from_pairs(group, &pairs) {
            Ok(s) => s,
            Err(e) => {
                walk_err = Some(e);
                return;
            }
        };
        match is_product_one(&seq, len.max(12)) {
            Ok(true) => {}
            Ok(false) => return,
            Err(e) => {
                walk_err = Some(e);
                return;
            }
        }
        match dp.lengths_mask(&seq) {
            Ok(mask) => {
                if mask >> k & 1 == 1 {
                    union_mask |= mask;
                }
            }
            Err(e) => walk_err = Some(e),
        }
    });
    if let Some(e) = walk_err {
        return Err(e);
    }
    let union: Vec<usize> = (0..128).filter(|&b| union_mask >> b & 1 == 1).collect();
    let rho_k = union.last().copied().unwrap_or(k);
    let lambda_k = union.first().copied().unwrap_or(k);
    let mut report = InvariantReport::new(
        "unions_of_lengths",
        Value::Set(union.iter().map(|&v| v as i64).collect()),
        Method::BoundedSearch(budget_len),
    );
    report.input("k", k.to_string());
    Ok(UnionsOutcome { union, rho_k, lambda_k, report })
}

/// Per-subset minimal distance, with exactness provenance.
pub struct SubsetDelta {
    pub subset: Vec<u16>,
    pub half_factorial: bool,
    pub min_delta: usize,
    pub exact: bool,
    /// Observed distance values within the bounded walk (empty for subsets
    /// resolved purely by a closed form).
    pub observed: Vec<usize>,
}

/// The distinguished distance sets of a group: minimal distances over all
/// non-half-factorial subsets, and the restriction to supports of
/// maximal-elasticity elements.
pub struct DeltaStarOutcome {
    pub delta_star: Vec<usize>,
    pub delta_star_rho: Vec<usize>,
    pub subsets: Vec<SubsetDelta>,
    pub max_elasticity_supports: Vec<Vec<u16>>,
}

pub fn delta_star_sets(
    group: &Arc<FiniteGroup>,
    subset_order_guard: u32,
    rho_product_factors: usize,
) -> Result<DeltaStarOutcome> {
    let order = group.order();
    if order > subset_order_guard {
        return Err(Error::ResourceLimit {
            what: "group order for subset enumeration".into(),
            limit: subset_order_guard as usize,
        });
    }
    let elements: Vec<GroupElement> = group.elements().collect();
    let mut subsets: Vec<SubsetDelta> = Vec::new();
    for mask in 1u64..(1u64 << order) {
        let subset: Vec<GroupElement> = elements
            .iter()
            .enumerate()
            .filter_map(|(b, &g)| (mask >> b & 1 == 1).then_some(g))
            .collect();
        subsets.push(subset_min_delta(group, &subset)?);
    }

    let mut delta_star: BTreeSet<usize> = BTreeSet::new();
    for s in &subsets {
        if !s.half_factorial {
            delta_star.insert(s.min_delta);
        }
    }

    // Supports of elements with maximal elasticity D/2, scanned over small
    // products of maximal-length atoms.
    let atoms = enumerate_atoms_full(group, order as usize)?;
    let d_large = atoms.max_atom_len();
    let maximal: Vec<&Sequence> =
        atoms.atoms().iter().filter(|a| a.len() == d_large).collect();
    let target_rho = Ratio::new(d_large as u64, 2);
    let mut dp = LengthDp::new(&atoms);
    let mut supports: BTreeSet<Vec<u16>> = BTreeSet::new();
    let mut stack: Vec<(usize, Sequence, usize)> =
        vec![(0, Sequence::empty(group), 0)];
    while let Some((start, prod, used)) = stack.pop() {
        if used >= 1 {
            let lengths = dp.lengths_of(&prod)?;
            if elasticity(&lengths) == target_rho {
                supports.insert(prod.support().iter().map(|g| g.0).collect());
            }
        }
        if used < rho_product_factors {
            for i in start..maximal.len() {
                stack.push((i, prod.concat(maximal[i])?, used + 1));
            }
        }
    }

    let mut delta_star_rho: BTreeSet<usize> = BTreeSet::new();
    for supp in &supports {
        let s = subsets
            .iter()
            .find(|s| &s.subset == supp)
            .expect("support subset was enumerated");
        if !s.half_factorial {
            delta_star_rho.insert(s.min_delta);
        }
    }

    Ok(DeltaStarOutcome {
        delta_star: delta_star.into_iter().collect(),
        delta_star_rho: delta_star_rho.into_iter().collect(),
        subsets,
        max_elasticity_supports: supports.into_iter().collect(),
    })
}

/// Minimal distance of one subset: the norm-gcd closed form when the
/// generated subgroup is cyclic with a generating member, the dihedral
/// reflection-pair closed form, otherwise the bounded observation.
fn subset_min_delta(group: &Arc<FiniteGroup>, subset: &[GroupElement]) -> Result<SubsetDelta> {
    let subset_idx: Vec<u16> = subset.iter().map(|g| g.0).collect();
    let (hf, _) = cross_number_profile(group, subset)?;
    if hf {
        return Ok(SubsetDelta {
            subset: subset_idx,
            half_factorial: true,
            min_delta: 0,
            exact: true,
            observed: Vec::new(),
        });
    }
    let sub = group.generated_subgroup(subset)?;
    let cyclic_with_generator = subset.iter().any(|&g| group.order_of(g) == sub.order())
        && sub.elements().all(|a| sub.elements().all(|b| group.mul(a, b) == group.mul(b, a)));
    if cyclic_with_generator {
        let report = min_delta_cyclic_exact(group, subset)?;
        if let Value::Int(v) = report.value {
            return Ok(SubsetDelta {
                subset: subset_idx,
                half_factorial: v == 0,
                min_delta: v as usize,
                exact: true,
                observed: Vec::new(),
            });
        }
    }
    let out = min_delta_bounded(group, subset, None)?;
    // Closed-form cross-check for a pair of reflections: the pair generates
    // a dihedral group of order 2m and its minimal distance is 2m - 2.
    let mut exact = false;
    let mut value = out.gcd;
    if let Presentation::Dihedral(_) = group.presentation() {
        if subset.len() == 2 && subset.iter().all(|&g| group.is_reflection(g)) {
            let m = sub.order() / 2;
            let expect = (2 * m - 2) as usize;
            if value == expect {
                exact = true;
            } else {
                return Err(Error::InvalidArgument(format!(
                    "bounded distance gcd {value} disagrees with the reflection-pair form {expect}"
                )));
            }
            value = expect;
        }
    }
    Ok(SubsetDelta {
        subset: subset_idx,
        half_factorial: out.observed.is_empty(),
        min_delta: value,
        exact,
        observed: out.observed,
    })
}

/// Outcome of the bounded omega search for one atom.
pub struct OmegaOutcome {
    /// Largest irredundant cover size found.
    pub lower: usize,
    /// Whether the search exhausted every cover size up to the cap.
    pub exhausted: bool,
    pub report: InvariantReport,
}

/// Check that `cover` is an irredundant cover of `u`: `u` divides the full
/// product in the product-one monoid but no proper sub-multiset's product.
pub fn check_irredundant_cover(u: &Sequence, cover: &[(Sequence, u32)]) -> Result<bool> {
    let group = u.group();
    let total: usize = cover.iter().map(|&(_, m)| m as usize).sum();
    if total == 0 {
        return Ok(false);
    }
    if !divides_in_monoid(u, &full_product(group, cover)?)? {
        return Ok(false);
    }
    let mut odometer = vec![0u32; cover.len()];
    loop {
        let is_full = odometer.iter().zip(cover).all(|(&m, &(_, cap))| m == cap);
        let chosen: usize = odometer.iter().map(|&m| m as usize).sum();
        if !is_full && chosen > 0 {
            let mut prod = Sequence::empty(group);
            for (i, &(ref a, _)) in cover.iter().enumerate() {
                prod = prod.concat(&a.power(odometer[i]))?;
            }
            if divides_in_monoid(u, &prod)? {
                return Ok(false);
            }
        }
        let mut pos = 0;
        loop {
            if pos == cover.len() {
                return Ok(true);
            }
            if odometer[pos] < cover[pos].1 {
                odometer[pos] += 1;
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

fn full_product(group: &Arc<FiniteGroup>, cover: &[(Sequence, u32)]) -> Result<Sequence> {
    let mut prod = Sequence::empty(group);
    for &(ref a, m) in cover {
        prod = prod.concat(&a.power(m))?;
    }
    Ok(prod)
}

/// Divisibility in the product-one monoid: `u` divides `b` term-wise and
/// the complement is product-one.
pub fn divides_in_monoid(u: &Sequence, b: &Sequence) -> Result<bool> {
    if !u.divides(b) {
        return Ok(false);
    }
    let rest = b.remove(u)?;
    is_product_one(&rest, rest.len().max(12))
}

/// The reflection-pair witness for the omega lower bound: the atom
/// `U = t^[n] . (a t)^[n]`, covered irredundantly by the `2n` squares in
/// `U . U`.
pub fn omega_reflection_witness(group: &Arc<FiniteGroup>) -> Result<(Sequence, usize, bool)> {
    let n = match group.presentation() {
        Presentation::Dihedral(n) => n,
        _ => return Err(Error::UnsupportedPresentation),
    };
    let t = group.reflection(0)?;
    let at = group.reflection(1)?;
    let u = Sequence::from_pairs(group, &[(t, n), (at, n)])?;
    let t2 = Sequence::repeated(group, t, 2)?;
    let at2 = Sequence::repeated(group, at, 2)?;
    let cover = vec![(t2, n), (at2, n)];
    let ok = check_irredundant_cover(&u, &cover)?;
    Ok((u, 2 * n as usize, ok))
}

/// Exhaustive search for the largest irredundant cover of `u` by atoms:
/// a multiset `z` with `u` dividing the full product in the product-one
/// monoid but dividing no proper sub-product.
///
/// Divisibility by `u` is a monotone function of the count-sum vector of
/// `z` (appending a product-one atom preserves it), so every proper prefix
/// sum of an irredundant cover is non-divisible. The search grows k-fold
/// sums of atom vectors, extending only non-divisible sums, and then
/// certifies each divisible top vector by an exact decomposition check:
/// the vector must split into `k` atom vectors whose co-atom sums are all
/// non-divisible.
pub fn omega_of_atom(
    u: &Sequence,
    atoms: &AtomSet,
    k_cap: usize,
    work_budget: u64,
) -> Result<OmegaOutcome> {
    if u.is_empty() {
        let report = InvariantReport::new("omega", Value::Int(0), Method::Formula);
        return Ok(OmegaOutcome { lower: 0, exhausted: true, report });
    }
    if !atoms.certified_complete() {
        return Err(Error::InvalidArgument("omega search needs a certified atom set".into()));
    }
    let group = u.group();
    let subset = atoms.subset_elements();
    let dim = subset.len();
    if dim > 16 {
        return Err(Error::ResourceLimit {
            what: "omega count-lattice dimension".into(),
            limit: 16,
        });
    }
    let max_atom_len = atoms.max_atom_len();
    if (k_cap + 1) * max_atom_len >= 128 {
        return Err(Error::ResourceLimit {
            what: "omega packed-coordinate range (k_cap * max atom length)".into(),
            limit: 127,
        });
    }
    let slot_of = |e: u16| subset.iter().position(|g| g.0 == e).unwrap();
    let project = |seq: &Sequence| -> Vec<u32> {
        let mut c = vec![0u32; dim];
        for &(e, m) in seq.counts() {
            c[slot_of(e)] = m;
        }
        c
    };
    let u_counts = project(u);
    let pack = |v: &[u32]| -> u128 {
        let mut key = 0u128;
        for &c in v {
            key = key << 8 | c as u128;
        }
        key
    };
    let unpack = |mut key: u128| -> Vec<u32> {
        let mut v = vec![0u32; dim];
        for slot in (0..dim).rev() {
            v[slot] = (key & 0xff) as u32;
            key >>= 8;
        }
        v
    };

    let divisible = |v: &[u32]| -> Result<bool> {
        if u_counts.iter().zip(v).any(|(&need, &have)| need > have) {
            return Ok(false);
        }
        let pairs: Vec<(GroupElement, u32)> = subset
            .iter()
            .copied()
            .zip(v.iter().zip(&u_counts).map(|(&have, &need)| have - need))
            .collect();
        let rest = Sequence::from_pairs(group, &pairs)?;
        is_product_one(&rest, rest.len().max(12))
    };
    let divisible_key = |key: u128| -> Result<bool> { divisible(&unpack(key)) };

    // Pool: atoms that are not singly divisible and not the identity atom
    // (an identity term is always redundant in a cover).
    let ident = group.identity();
    let mut pool_keys: Vec<u128> = Vec::new();
    let mut best = 0usize;
    for atom in atoms.atoms() {
        let av = project(atom);
        if divisible(&av)? {
            best = best.max(1);
        } else if atom.multiplicity(ident) == 0 {
            pool_keys.push(pack(&av));
        }
    }

    let mut work: u64 = 0;
    let mut exhausted = true;
    // Layered growth; only non-divisible sums extend. Divisible sums at
    // each layer are recorded as candidates.
    let mut candidates: Vec<Vec<u128>> = vec![Vec::new(); k_cap + 1];
    let mut layer: Vec<u128> = vec![0u128];
    'grow: for r in 1..=k_cap {
        let mut next: Vec<u128> = Vec::with_capacity(layer.len() * 2);
        for &s in &layer {
            for &a in &pool_keys {
                next.push(s + a);
            }
            work += pool_keys.len() as u64;
            if work > work_budget {
                exhausted = false;
                break 'grow;
            }
        }
        next.sort_unstable();
        next.dedup();
        let mut keep: Vec<u128> = Vec::with_capacity(next.len());
        for &s in &next {
            work += 4;
            if work > work_budget {
                exhausted = false;
                break 'grow;
            }
            if divisible_key(s)? {
                candidates[r].push(s);
            } else {
                keep.push(s);
            }
        }
        layer = keep;
        if std::env::var("OMEGA_DEBUG").is_ok() {
            eprintln!("layer {r}: kept {} candidates {}", layer.len(), candidates[r].len());
        }
    }

    // Exact certification, largest layer first: the candidate must split
    // into r atom vectors with every co-atom sum non-divisible.
    'certify: for r in (2..=k_cap).rev() {
        if best >= r {
            break;
        }
        for &vkey in &candidates[r] {
            let v = unpack(vkey);
            let mut allowed: Vec<u128> = Vec::new();
            for &a in &pool_keys {
                let av = unpack(a);
                if av.iter().zip(&v).all(|(&x, &have)| x <= have) {
                    let co: Vec<u32> = v.iter().zip(&av).map(|(&x, &y)| x - y).collect();
                    work += 4;
                    if !divisible(&co)? {
                        allowed.push(a);
                    }
                }
            }
            if work > work_budget {
                exhausted = false;
                break 'certify;
            }
            if allowed.is_empty() {
                continue;
            }
            // downward reachability from v through allowed atom vectors
            let mut reach: Vec<u128> = vec![vkey];
            for _step in 0..r {
                let mut next: Vec<u128> = Vec::new();
                for &s in &reach {
                    let sv = unpack(s);
                    for &a in &allowed {
                        work += 1;
                        let av = unpack(a);
                        if av.iter().zip(&sv).all(|(&x, &have)| x <= have) {
                            next.push(s - a);
                        }
                    }
                }
                if work > work_budget {
                    exhausted = false;
                    break 'certify;
                }
                next.sort_unstable();
                next.dedup();
                reach = next;
                if reach.is_empty() {
                    break;
                }
            }
            if reach.contains(&0u128) {
                best = best.max(r);
                break;
            }
        }
    }

    let mut report =
        InvariantReport::new("omega", Value::Int(best as i64), Method::BoundedSearch(k_cap));
    report.input(
        "status",
        if exhausted { "complete".into() } else { "budget-exhausted".into() },
    );
    report.input("work", work.to_string());
    Ok(OmegaOutcome { lower: best, exhausted, report })
}
