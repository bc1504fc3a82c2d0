//! Shows that the point ν of the 21-vertex graph lies in HSTAB but not in
//! STAB, first with the exact hull LP and then with the witness-set
//! certificate.
//!
//! cargo run --release --example stab_certificate

use hstab::g21::{build_g21, g21_nu};
use hstab::graph::stable_sets;
use hstab::polytope::{certify_not_in_stab, hstab_system, in_convex_hull, RationalVector};

fn main() -> hstab::Result<()> {
    let (g, labels) = build_g21();
    let nu = g21_nu();
    println!("nu = {nu}");
    println!("in HSTAB: {}", hstab_system(&g, true)?.contains(&nu)?);

    let sets = stable_sets(&g)?;
    let chis: Vec<RationalVector> = sets.iter().map(|s| RationalVector::indicator(21, s)).collect();
    println!("in STAB (hull LP over {} stable sets): {}", chis.len(), in_convex_hull(&chis, &nu)?);

    let mut witnesses = vec![labels.x.to_vec(), labels.z.to_vec()];
    witnesses.extend(labels.c_cycles().iter().map(|c| c.vertices().to_vec()));
    println!("certificate: {:?}", certify_not_in_stab(&g, &nu, &witnesses)?);
    Ok(())
}
