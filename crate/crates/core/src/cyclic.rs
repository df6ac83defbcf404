//! Distance machinery over cyclic groups: g-norms, exact minimal distances
//! via atom norms, continued fractions for two-element subsets, the parity
//! condition on triples of pair distances, and the classification sweep.

use std::sync::Arc;

use num::integer::gcd;
use serde::Serialize;

use crate::atoms::{enumerate_atoms, AtomSet};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::report::{InvariantReport, Method, Value};
use crate::sequence::{is_product_one, Sequence};

/// Integer norm of a product-one sequence over a cyclic group with a fixed
/// generator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GNorm(pub u64);

/// `||S||_g = (n_1 + ... + n_l)/ord(g)` with exponent representatives taken
/// in `[1, ord(g)]`.
pub fn g_norm(seq: &Sequence, g: GroupElement) -> Result<GNorm> {
    let group = seq.group();
    let n = group.order();
    if group.order_of(g) != n {
        return Err(Error::InvalidArgument(format!(
            "norm base must generate the group (order {} != {})",
            group.order_of(g),
            n
        )));
    }
    if !is_product_one(seq, seq.len())? {
        return Err(Error::InvalidArgument("g-norm requires a product-one sequence".into()));
    }
    // Discrete log table for powers of g.
    let mut dlog = vec![0u32; n as usize];
    let mut acc = group.identity();
    for k in 0..n {
        dlog[acc.index()] = k;
        acc = group.mul(acc, g);
    }
    let mut total: u64 = 0;
    for &(e, m) in seq.counts() {
        let k = dlog[e as usize];
        let rep = if k == 0 { n } else { k };
        total += rep as u64 * m as u64;
    }
    debug_assert_eq!(total % n as u64, 0);
    Ok(GNorm(total / n as u64))
}

/// Exact `min Delta(G0)` for a cyclic subset generated by one of its
/// members: the gcd of `||V||_g - 1` over all atoms `V`.
///
/// A result of 0 signals a half-factorial subset (`Delta = {}`).
pub fn min_delta_cyclic_exact(
    group: &Arc<FiniteGroup>,
    subset: &[GroupElement],
) -> Result<InvariantReport> {
    let sub = group.generated_subgroup(subset)?;
    let generator = subset
        .iter()
        .copied()
        .find(|&g| group.order_of(g) == sub.order())
        .ok_or_else(|| {
            Error::InvalidArgument(
                "no member of the subset generates the subgroup it spans".into(),
            )
        })?;

    // Work inside the generated subgroup, realized as an explicit cyclic
    // group with `generator` mapped to the canonical generator.
    let m = sub.order();
    let cyc = FiniteGroup::cyclic(m)?;
    let mut dlog = vec![0u32; group.order() as usize];
    let mut acc = group.identity();
    for k in 0..m {
        dlog[acc.index()] = k;
        acc = group.mul(acc, generator);
    }
    let mapped: Vec<GroupElement> =
        subset.iter().map(|&g| GroupElement(dlog[g.index()] as u16)).collect();

    let atoms = enumerate_atoms(&cyc, &mapped, m as usize)?;
    let gen_in_cyc = GroupElement(1);
    let mut acc_gcd: u64 = 0;
    for atom in atoms.atoms() {
        let norm = g_norm(atom, gen_in_cyc)?;
        acc_gcd = gcd(acc_gcd, norm.0 - 1);
    }
    let mut report = InvariantReport::new(
        "min_delta",
        Value::Int(acc_gcd as i64),
        Method::Oracle,
    );
    report.input("subset_size", subset.len().to_string());
    report.input("subgroup_order", m.to_string());
    if acc_gcd == 0 {
        report.input("half_factorial", "true".to_string());
    }
    Ok(report)
}

/// Continued fraction expansion of `n/a` normalized to odd length.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ContinuedFraction {
    pub n: u64,
    pub a: u64,
    pub terms: Vec<u64>,
}

impl ContinuedFraction {
    /// Fold the terms back into a fraction `(p, q)` with `p/q = n/a`.
    pub fn fold(&self) -> (u64, u64) {
        let mut p: u64 = 1;
        let mut q: u64 = 0;
        for &t in self.terms.iter().rev() {
            // value = t + 1/(p/q) = (t*p + q)/p
            let np = t * p + q;
            q = p;
            p = np;
        }
        (p, q)
    }
}

/// Euclidean expansion of `n/a`, parity-normalized to odd length: a final
/// term `a_m >= 2` of an even-length expansion splits into `(a_m - 1, 1)`;
/// a final 1 merges into `a_(m-1) + 1`.
pub fn continued_fraction_odd(n: u64, a: u64) -> Result<ContinuedFraction> {
    if n <= 3 {
        return Err(Error::InvalidParameter(format!("need n > 3, got {n}")));
    }
    if a < 2 || a >= n {
        return Err(Error::InvalidParameter(format!("need a in [2, n-1], got {a} (n = {n})")));
    }
    let mut terms = Vec::new();
    let (mut num, mut den) = (n, a);
    while den != 0 {
        terms.push(num / den);
        let r = num % den;
        num = den;
        den = r;
    }
    if terms.len() % 2 == 0 {
        let last = *terms.last().unwrap();
        if last >= 2 {
            *terms.last_mut().unwrap() = last - 1;
            terms.push(1);
        } else {
            terms.pop();
            *terms.last_mut().unwrap() += 1;
        }
    }
    debug_assert!(terms.len() % 2 == 1);
    Ok(ContinuedFraction { n, a, terms })
}

/// `min Delta({g, g^a})` over a cyclic group of order `n`: the gcd of the
/// odd-indexed terms of the odd-length expansion of `n/a`. A result of 0
/// signals a half-factorial pair.
pub fn min_delta_pair(n: u64, a: u64) -> Result<u64> {
    let cf = continued_fraction_odd(n, a)?;
    let mut acc: u64 = 0;
    for (idx, &t) in cf.terms.iter().enumerate() {
        if idx % 2 == 1 {
            acc = gcd(acc, t);
        }
    }
    Ok(acc)
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t): (i64, i64) = (0, 1);
    let (mut r, mut new_r): (i64, i64) = (n as i64, (a % n) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i64) as u64)
}

/// `min Delta({g^u, g^v})` in a cyclic group of order `n`, reduced to the
/// `{g, g^a}` form by scaling with the inverse of a unit exponent. `None`
/// when neither exponent is a unit (the continued-fraction route does not
/// apply) or when the pair degenerates.
pub fn pair_min_delta_for_exponents(n: u64, u: u64, v: u64) -> Option<u64> {
    let (u, v) = (u % n, v % n);
    if u == 0 || v == 0 || u == v {
        return None;
    }
    for (base, other) in [(u, v), (v, u)] {
        if let Some(inv) = mod_inverse(base, n) {
            let a = (other * inv) % n;
            if a >= 2 {
                return min_delta_pair(n, a).ok();
            }
            // a == 1 cannot occur for distinct exponents
            return None;
        }
    }
    None
}

/// The parity condition on the triple of pair distances attached to
/// `i`: true iff
/// `gcd(min D({a,a^i}), min D({a,a^(1-i)}), min D({a^i,a^(i-1)}))` is a
/// positive even number.
pub fn condition_star(n: u64, i: u64) -> Result<bool> {
    if n < 5 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!("need odd n >= 5, got {n}")));
    }
    if i < 2 || i >= n {
        return Err(Error::InvalidParameter(format!("need i in [2, n-1], got {i}")));
    }
    if gcd(i, n) != 1 {
        return Err(Error::InvalidParameter(format!("need gcd(i, n) = 1, got i = {i}, n = {n}")));
    }
    let g = triple_gcd(n, i).expect("coprime i is always reducible");
    Ok(g > 0 && g % 2 == 0)
}

/// gcd of the three pair distances for index `i`; `None` when the third
/// pair cannot be reduced to continued-fraction form.
pub fn triple_gcd(n: u64, i: u64) -> Option<u64> {
    let d1 = min_delta_pair(n, i).ok()?;
    let d2 = min_delta_pair(n, (n + 1 - i) % n).ok()?;
    let d3 = pair_min_delta_for_exponents(n, i, i - 1)?;
    Some(gcd(gcd(d1, d2), d3))
}

/// One row of the classification sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub n: u64,
    /// Every `i` in `[2, n-1]` was evaluated (no triple had to be skipped).
    pub all_i_checked: bool,
    /// Indices whose third pair was not reducible to the two-element
    /// continued-fraction form.
    pub skipped_i: Vec<u64>,
    /// All evaluated triples have gcd 1 and nothing was skipped; this pins
    /// the minimal-distance set of maximal-elasticity supports to
    /// `{1, 2n-2}`.
    pub eq_holds_for_all_i: bool,
    /// Indices `i` coprime to `n` whose triple gcd is even (and positive).
    pub star_witnesses: Vec<u64>,
}

/// Classify each odd `n` in `[lo, hi]` by the triple-gcd condition over all
/// `i in [2, n-1]`, using pure continued-fraction arithmetic.
pub fn sweep_classify(lo: u64, hi: u64) -> Result<Vec<SweepRow>> {
    if lo < 5 {
        return Err(Error::InvalidParameter(format!("sweep range starts at 5, got {lo}")));
    }
    let rows: Vec<SweepRow> =
        (lo..=hi).filter(|n| n % 2 == 1).map(sweep_one).collect();
    Ok(rows)
}

pub fn sweep_one(n: u64) -> SweepRow {
    let mut skipped = Vec::new();
    let mut all_gcd_one = true;
    let mut witnesses = Vec::new();
    for i in 2..n {
        match triple_gcd(n, i) {
            Some(g) => {
                if g != 1 {
                    all_gcd_one = false;
                }
                if g > 0 && g % 2 == 0 && gcd(i, n) == 1 {
                    witnesses.push(i);
                }
            }
            None => skipped.push(i),
        }
    }
    SweepRow {
        n,
        all_i_checked: skipped.is_empty(),
        eq_holds_for_all_i: skipped.is_empty() && all_gcd_one,
        star_witnesses: witnesses,
        skipped_i: skipped,
    }
}

/// Brute-force companion to [`min_delta_pair`]: atoms over `{g, g^a}` by
/// exhaustion, then the norm-gcd formula. Exercised against the
/// continued-fraction route in the verification suites.
pub fn min_delta_pair_bruteforce(n: u32, a: u32) -> Result<u64> {
    let cyc = FiniteGroup::cyclic(n)?;
    let subset = [GroupElement(1), GroupElement((a % n) as u16)];
    let report = min_delta_cyclic_exact(&cyc, &subset)?;
    match report.value {
        Value::Int(v) => Ok(v as u64),
        _ => unreachable!(),
    }
}

#[allow(unused)]
fn _assert_atomset_used(_: &AtomSet) {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::parse_sequence;

    #[test]
    fn norms() {
        let c7 = FiniteGroup::cyclic(7).unwrap();
        let g = GroupElement(1);
        let s = Sequence::repeated(&c7, g, 7).unwrap();
        assert_eq!(g_norm(&s, g).unwrap(), GNorm(1));
        let s = Sequence::repeated(&c7, GroupElement(3), 7).unwrap();
        assert_eq!(g_norm(&s, g).unwrap(), GNorm(3));
        let s = parse_sequence(&c7, "a:4 a^3:1").unwrap();
        assert_eq!(g_norm(&s, g).unwrap(), GNorm(1));
        // non-generator base
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let s = parse_sequence(&c6, "a^2:3").unwrap();
        assert!(g_norm(&s, GroupElement(2)).is_err());
        // non-product-one input
        let s = parse_sequence(&c7, "a:1").unwrap();
        assert!(g_norm(&s, g).is_err());
    }

    #[test]
    fn exact_min_delta_examples() {
        let c5 = FiniteGroup::cyclic(5).unwrap();
        // {g, g^4} = {g, g^-1}: distance set is {ord - 2} = {3}
        let r = min_delta_cyclic_exact(&c5, &[GroupElement(1), GroupElement(4)]).unwrap();
        assert_eq!(r.value, Value::Int(3));
        // single generator: half-factorial
        let r = min_delta_cyclic_exact(&c5, &[GroupElement(1)]).unwrap();
        assert_eq!(r.value, Value::Int(0));

        let c7 = FiniteGroup::cyclic(7).unwrap();
        let r = min_delta_cyclic_exact(&c7, &[GroupElement(1), GroupElement(3)]).unwrap();
        assert_eq!(r.value, Value::Int(2));
    }

    #[test]
    fn continued_fractions_normalize() {
        let cases = [
            (7, 3, vec![2, 2, 1]),
            (7, 2, vec![3, 1, 1]),
            (5, 4, vec![1, 3, 1]),
            (7, 5, vec![1, 2, 2]),
        ];
        for (n, a, want) in cases {
            let cf = continued_fraction_odd(n, a).unwrap();
            assert_eq!(cf.terms, want, "cf({n},{a})");
            let (p, q) = cf.fold();
            assert_eq!(p * a, q * n, "value of cf({n},{a})");
        }
        assert!(continued_fraction_odd(3, 2).is_err());
        assert!(continued_fraction_odd(7, 1).is_err());
        assert!(continued_fraction_odd(7, 7).is_err());
    }

    #[test]
    fn cf_value_preserved_up_to_500() {
        for n in 4..=500u64 {
            for a in 2..n {
                let cf = continued_fraction_odd(n, a).unwrap();
                assert!(cf.terms.len() % 2 == 1);
                let (p, q) = cf.fold();
                assert_eq!(p * a, q * n, "cf({n},{a})");
                // every term is >= 1
                assert!(cf.terms.iter().all(|&t| t >= 1));
            }
        }
    }

    #[test]
    fn pair_min_delta_examples() {
        assert_eq!(min_delta_pair(7, 3).unwrap(), 2);
        assert_eq!(min_delta_pair(7, 2).unwrap(), 1);
        assert_eq!(min_delta_pair(7, 5).unwrap(), 2);
        // half-factorial pair {g, g^3} in C_9
        assert_eq!(min_delta_pair(9, 3).unwrap(), 0);
    }

    #[test]
    fn pair_cf_matches_bruteforce_small() {
        for n in 5..=13u32 {
            for a in 2..n {
                let cf = min_delta_pair(n as u64, a as u64).unwrap();
                let bf = min_delta_pair_bruteforce(n, a).unwrap();
                assert_eq!(cf, bf, "min delta pair ({n},{a})");
            }
        }
    }

    #[test]
    fn star_condition() {
        assert!(condition_star(7, 3).unwrap());
        assert!(condition_star(21, 5).unwrap());
        assert!(!condition_star(5, 2).unwrap());
        assert!(condition_star(9, 2).is_ok());
        assert!(condition_star(9, 3).is_err()); // gcd(3,9) != 1
        assert!(condition_star(6, 2).is_err()); // even n
    }

    #[test]
    fn star_invariant_under_inverse_index() {
        for n in [5u64, 7, 9, 11, 13, 15, 21, 25] {
            for i in 2..n {
                if gcd(i, n) != 1 {
                    continue;
                }
                let j = mod_inverse(i, n).unwrap();
                if j < 2 {
                    continue;
                }
                assert_eq!(
                    condition_star(n, i).unwrap(),
                    condition_star(n, j).unwrap(),
                    "n={n} i={i} j={j}"
                );
            }
        }
    }

    #[test]
    fn sweep_small_anchors() {
        let rows = sweep_classify(5, 21).unwrap();
        let row7 = rows.iter().find(|r| r.n == 7).unwrap();
        assert!(row7.star_witnesses.contains(&3));
        assert!(!row7.eq_holds_for_all_i);
        let row5 = rows.iter().find(|r| r.n == 5).unwrap();
        assert!(row5.eq_holds_for_all_i);
        assert!(row5.star_witnesses.is_empty());
        let row21 = rows.iter().find(|r| r.n == 21).unwrap();
        assert!(row21.star_witnesses.contains(&5));
    }
}
