//! Searches for a splitting of a monomial into a sum of canonical-ideal
//! monomials, with and without tightness pruning.
//!
//! cargo run --release --example decompose

use hstab::g21::{build_g21, g21_mu};
use hstab::graph::{generate, GraphKind};
use hstab::lattice::{decompose_into_u1_with, DecomposeOptions, Monomial};

fn main() -> hstab::Result<()> {
    let c5 = generate(&GraphKind::Cycle(5))?;
    let two_eta = Monomial::constant(5, 2, 6);
    let report = decompose_into_u1_with(&c5, &two_eta, 2, &DecomposeOptions::default())?;
    for part in report.parts.unwrap_or_default() {
        println!("C5: part {part}");
    }

    let (g, _) = build_g21();
    let mu = g21_mu();
    for tight_pruning in [true, false] {
        let options = DecomposeOptions {
            tight_pruning,
            ..DecomposeOptions::default()
        };
        let report = decompose_into_u1_with(&g, &mu, 2, &options)?;
        println!(
            "G21, tight pruning {tight_pruning}: {} after {} nodes over splits {:?}",
            if report.parts.is_some() { "decomposable" } else { "no decomposition" },
            report.nodes,
            report.degree_splits
        );
    }
    Ok(())
}
