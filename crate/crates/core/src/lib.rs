//! Arithmetic of monoids of product-one sequences over finite groups, with
//! a fast path for dihedral groups of order `2n` (odd `n`): atoms, Davenport
//! constants, sets of lengths, distances, catenary degrees, the omega
//! invariant, elasticities, and the continued-fraction machinery for minimal
//! distances over cyclic groups.

pub mod atoms;
pub mod cyclic;
pub mod elemset;
pub mod error;
pub mod factorize;
pub mod group;
pub mod invariants;
pub mod report;
pub mod sequence;
pub mod witness;
pub mod zmod;

pub use error::{Error, Result};
pub use group::{
    format_element, parse_element, parse_group_spec, FiniteGroup, GroupElement, Presentation,
    Subgroup,
};
pub use sequence::{
    format_sequence, in_complete_integral_closure, is_product_one, parse_sequence, pi,
    pi_bruteforce, pi_dihedral, product_one_status, subproducts, ProductSet, Sequence,
    DEFAULT_PI_CAP,
};
pub use zmod::{n_term_subsums, sumset_with_stabilizer, AbelianSubsetZ, ZSet};
