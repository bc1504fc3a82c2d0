//! Membership of monomials in the Ehrhart ring, the canonical ideal and
//! its symbolic powers, with the first violated condition when a test
//! fails.
//!
//! cargo run --example lattice_membership

use hstab::g21::{build_g21, g21_mu};
use hstab::graph::{generate, GraphKind};
use hstab::lattice::{
    in_canonical_ideal, in_ehrhart_ring, symbolic_power_membership, LatticeConditions, Monomial, Variant,
};

fn main() -> hstab::Result<()> {
    let c5 = generate(&GraphKind::Cycle(5))?;
    let eta = Monomial::constant(5, 1, 3);
    println!("C5: eta = {eta}");
    println!("  in the Ehrhart ring: {}", in_ehrhart_ring(&c5, &eta)?);
    println!("  in the canonical ideal: {}", in_canonical_ideal(&c5, &eta)?);
    println!("  2 eta in U^(2): {}", symbolic_power_membership(&c5, &eta.scaled(2), 2)?);

    let c7 = generate(&GraphKind::Cycle(7))?;
    let zeta = Monomial::constant(7, -1, -3);
    let conditions = LatticeConditions::new(&c7, Variant::Hstab);
    println!("C7: zeta = {zeta} violates {:?}", conditions.violation(&zeta, -1)?);

    let (g, _) = build_g21();
    let mu = g21_mu();
    for n in 1..=3 {
        println!("G21: mu in U^({n}): {}", symbolic_power_membership(&g, &mu, n)?);
    }
    Ok(())
}
