use std::time::Instant;
use prodone_core::atoms::enumerate_atoms_full;
use prodone_core::group::FiniteGroup;
use prodone_core::invariants::*;
use prodone_core::parse_sequence;

fn main() {
    let g = FiniteGroup::dihedral(3).unwrap();
    let set = enumerate_atoms_full(&g, 6).unwrap();
    let u = parse_sequence(&g, "t:3 a*t:3").unwrap();
    let t0 = Instant::now();
    let out = omega_of_atom(&u, &set, 12, 20_000_000_000).unwrap();
    println!("omega(U) = {} exhausted={} in {:?}", out.lower, out.exhausted, t0.elapsed());
}
