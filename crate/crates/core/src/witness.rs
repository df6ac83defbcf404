//! Structural witnesses: the non-abelian factorization witness, the
//! rotation-to-reflection atom transfer, and the five-form classification of
//! atoms over a triple of reflections.

use std::sync::Arc;

use num::integer::gcd;

use crate::atoms::is_atom;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement, Presentation};
use crate::sequence::{is_product_one, Sequence};

/// The witness data for a non-commuting pair `(g, h)`:
/// `U = g . h . g^-1 . (g h^-1 g^-1)`, `V = g . g^-1`,
/// `m = ord(h g h^-1 g^-1)`, `W = (h . (g h^-1 g^-1))^[m]`,
/// with `U^[m] = V^[m] . W`.
#[derive(Clone, Debug)]
pub struct NonabelianWitness {
    pub u: Sequence,
    pub v: Sequence,
    pub w: Sequence,
    pub m: u32,
    pub verified: bool,
}

pub fn nonabelian_witness(
    group: &Arc<FiniteGroup>,
    g: GroupElement,
    h: GroupElement,
) -> Result<NonabelianWitness> {
    group.check_element(g)?;
    group.check_element(h)?;
    if group.mul(g, h) == group.mul(h, g) {
        return Err(Error::NoWitness);
    }
    let gi = group.inverse(g);
    let hi = group.inverse(h);
    let conj = group.mul(group.mul(g, hi), gi); // g h^-1 g^-1
    let u = Sequence::from_elements(group, &[g, h, gi, conj])?;
    let v = Sequence::from_elements(group, &[g, gi])?;
    let m = group.order_of(group.mul(group.mul(h, g), group.mul(hi, gi)));
    let w = Sequence::from_elements(group, &[h, conj])?.power(m);

    let lhs = u.power(m);
    let rhs = v.power(m).concat(&w)?;
    let cap = lhs.len().max(8);
    let verified = lhs == rhs
        && is_atom(&u, cap)?
        && is_atom(&v, cap)?
        && !w.is_empty()
        && is_product_one(&w, cap)?;
    Ok(NonabelianWitness { u, v, w, m, verified })
}

/// The transfer `phi(U) = prod_g (g t . t)^[v_g(U)]` carrying sequences over
/// the rotation subgroup to sequences over reflections; it preserves and
/// reflects atomicity (odd `n`).
pub fn atom_transfer_phi(u: &Sequence) -> Result<Sequence> {
    let group = u.group();
    let n = match group.presentation() {
        Presentation::Dihedral(n) => n,
        _ => return Err(Error::UnsupportedPresentation),
    };
    if n % 2 == 0 {
        return Err(Error::InvalidParameter("atom transfer requires odd n".into()));
    }
    if u.counts().iter().any(|&(e, _)| group.is_reflection(GroupElement(e))) {
        return Err(Error::InvalidArgument(
            "atom transfer applies to sequences over the rotation subgroup".into(),
        ));
    }
    let tau = group.reflection(0)?;
    let mut pairs: Vec<(GroupElement, u32)> = Vec::new();
    let mut tau_count = 0u32;
    for &(e, m) in u.counts() {
        // g = a^x maps to (a^x t . t)^[m]
        let (_, x) = group.dihedral_parts(GroupElement(e)).unwrap();
        pairs.push((group.reflection(x)?, m));
        tau_count += m;
    }
    pairs.push((tau, tau_count));
    Sequence::from_pairs(group, &pairs)
}

/// Check the transfer on one sequence: `(is_atom(U), is_atom(phi(U)))`.
pub fn transfer_preserves_atom(u: &Sequence) -> Result<(bool, bool)> {
    let phi = atom_transfer_phi(u)?;
    let cap = phi.len().max(u.len()).max(4);
    Ok((is_atom(u, cap)?, is_atom(&phi, cap)?))
}

/// The five closed forms of atoms over `{t, a t, a^i t}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AtomType {
    I,
    II,
    III,
    IV,
    V,
}

/// Classification result: the form tag, the `(x, y)` exponents for forms
/// III-V, and the associated rotation-subgroup atom witnessing the side
/// condition.
#[derive(Clone, Debug)]
pub struct TypeClassification {
    pub tag: AtomType,
    pub x: Option<u32>,
    pub y: Option<u32>,
    pub cyclic_atom: Option<Sequence>,
}

/// Match an atom over `{t, a t, a^i t}` against the five forms.
pub fn classify_atom_type(a: &Sequence, i: u32) -> Result<TypeClassification> {
    let group = a.group();
    let n = match group.presentation() {
        Presentation::Dihedral(n) => n,
        _ => return Err(Error::UnsupportedPresentation),
    };
    if i < 2 || i >= n {
        return Err(Error::InvalidParameter(format!("need i in [2, n-1], got {i}")));
    }
    let tau = group.reflection(0)?;
    let at = group.reflection(1)?;
    let ait = group.reflection(i)?;
    for &(e, _) in a.counts() {
        let g = GroupElement(e);
        if g != tau && g != at && g != ait {
            return Err(Error::InvalidArgument(format!(
                "support must lie in the reflection triple, found element {e}"
            )));
        }
    }
    let vt = a.multiplicity(tau);
    let v1 = a.multiplicity(at);
    let vi = a.multiplicity(ait);
    let supp_size = [vt, v1, vi].iter().filter(|&&v| v > 0).count();

    let fail = |msg: &str| Err(Error::ClassificationFailure(msg.to_string()));

    match supp_size {
        0 => fail("empty sequence"),
        1 => {
            if a.len() == 2 {
                Ok(TypeClassification { tag: AtomType::I, x: None, y: None, cyclic_atom: None })
            } else {
                fail("single-orbit support with length other than 2")
            }
        }
        2 => {
            let ok = if vi == 0 {
                vt == n && v1 == n
            } else if v1 == 0 {
                let k = n / gcd(i, n);
                vt == k && vi == k
            } else {
                let k = n / gcd(i - 1, n);
                v1 == k && vi == k
            };
            if ok {
                Ok(TypeClassification { tag: AtomType::II, x: None, y: None, cyclic_atom: None })
            } else {
                fail("two-element support does not match the balanced-pair form")
            }
        }
        _ => {
            // Forms III-V: one multiplicity equals the sum of the others.
            let rot = |exp: u32, mult: u32| -> Result<(GroupElement, u32)> {
                Ok((group.rotation(exp % n)?, mult))
            };
            let (tag, x, y, cyc_pairs) = if vt == v1 + vi {
                // (a t . t)^[x] . (a^i t . t)^[y], atom iff a^[x] . (a^i)^[y] is
                (AtomType::III, v1, vi, vec![rot(1, v1)?, rot(i, vi)?])
            } else if v1 == vt + vi {
                (AtomType::IV, vt, vi, vec![rot(1, vt)?, rot(n + 1 - i, vi)?])
            } else if vi == v1 + vt {
                (AtomType::V, v1, vt, vec![rot(i, vt)?, rot(i - 1, v1)?])
            } else {
                return fail("no multiplicity balances the other two");
            };
            let cyclic_atom = Sequence::from_pairs(group, &cyc_pairs)?;
            if !is_atom(&cyclic_atom, cyclic_atom.len().max(2))? {
                return fail("side condition fails: associated rotation sequence is not an atom");
            }
            Ok(TypeClassification { tag, x: Some(x), y: Some(y), cyclic_atom: Some(cyclic_atom) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::parse_sequence;

    #[test]
    fn witness_d6() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let tau = g.reflection(0).unwrap();
        let alpha = g.rotation(1).unwrap();
        let w = nonabelian_witness(&g, tau, alpha).unwrap();
        assert!(w.verified);
        assert_eq!(w.m, 3);
        assert_eq!(w.u, parse_sequence(&g, "t:2 a:2").unwrap());
        assert_eq!(w.v, parse_sequence(&g, "t:2").unwrap());
        assert_eq!(w.w, parse_sequence(&g, "a:6").unwrap());
    }

    #[test]
    fn witness_d10() {
        let g = FiniteGroup::dihedral(5).unwrap();
        let tau = g.reflection(0).unwrap();
        let alpha = g.rotation(1).unwrap();
        let w = nonabelian_witness(&g, tau, alpha).unwrap();
        assert!(w.verified);
        assert_eq!(w.m, 5);
    }

    #[test]
    fn witness_rejects_commuting() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let e = nonabelian_witness(&g, GroupElement(1), GroupElement(2));
        assert!(matches!(e, Err(Error::NoWitness)));
        let d = FiniteGroup::dihedral(3).unwrap();
        let a = d.rotation(1).unwrap();
        let a2 = d.rotation(2).unwrap();
        assert!(matches!(nonabelian_witness(&d, a, a2), Err(Error::NoWitness)));
    }

    #[test]
    fn transfer_examples() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let u = parse_sequence(&g, "a:3").unwrap();
        let phi = atom_transfer_phi(&u).unwrap();
        assert_eq!(phi, parse_sequence(&g, "a*t:3 t:3").unwrap());
        let (ua, pa) = transfer_preserves_atom(&u).unwrap();
        assert!(ua && pa);

        let u = parse_sequence(&g, "a:1 a^2:1").unwrap();
        let phi = atom_transfer_phi(&u).unwrap();
        assert_eq!(phi, parse_sequence(&g, "a*t:1 a^2*t:1 t:2").unwrap());
        let (ua, pa) = transfer_preserves_atom(&u).unwrap();
        assert!(ua && pa);

        let u = parse_sequence(&g, "a:6").unwrap();
        let (ua, pa) = transfer_preserves_atom(&u).unwrap();
        assert!(!ua && !pa);

        // reflections rejected
        assert!(atom_transfer_phi(&parse_sequence(&g, "t:1").unwrap()).is_err());
    }

    #[test]
    fn classify_types() {
        let g7 = FiniteGroup::dihedral(7).unwrap();
        let t2 = parse_sequence(&g7, "t:2").unwrap();
        assert_eq!(classify_atom_type(&t2, 3).unwrap().tag, AtomType::I);

        let type2 = parse_sequence(&g7, "t:7 a*t:7").unwrap();
        assert_eq!(classify_atom_type(&type2, 3).unwrap().tag, AtomType::II);

        // (a t . t)^[4] . (a^3 t . t)^[1]: type III with side atom a^[4] . (a^3)^[1]
        let type3 = parse_sequence(&g7, "t:5 a*t:4 a^3*t:1").unwrap();
        let c = classify_atom_type(&type3, 3).unwrap();
        assert_eq!(c.tag, AtomType::III);
        assert_eq!((c.x, c.y), (Some(4), Some(1)));
        assert_eq!(c.cyclic_atom.unwrap(), parse_sequence(&g7, "a:4 a^3:1").unwrap());

        // malformed: support outside the triple
        let bad = parse_sequence(&g7, "a^2*t:2").unwrap();
        assert!(classify_atom_type(&bad, 3).is_err());
    }
}
