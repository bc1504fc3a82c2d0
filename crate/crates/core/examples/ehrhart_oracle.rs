//! Lattice-point counts, Ehrhart polynomials and δ-vectors of HSTAB for a
//! few h-perfect graphs; palindromic δ means Gorenstein.
//!
//! cargo run --release --example ehrhart_oracle

use hstab::ehrhart::{delta_from_counts, ehrhart_polynomial};
use hstab::graph::{generate, GraphKind};
use hstab::lattice::{gorenstein_criterion, Variant};
use hstab::polytope::{format_rational, hstab_system};

fn main() -> hstab::Result<()> {
    for (name, kind) in [
        ("K2", GraphKind::Complete(2)),
        ("K4", GraphKind::Complete(4)),
        ("P4", GraphKind::Path(4)),
        ("C5", GraphKind::Cycle(5)),
        ("C7", GraphKind::Cycle(7)),
    ] {
        let g = generate(&kind)?;
        let poly = ehrhart_polynomial(&hstab_system(&g, true)?)?;
        let delta = delta_from_counts(&poly.counts, poly.dimension)?;
        let coefficients: Vec<String> = poly.coefficients.iter().map(format_rational).collect();
        println!("{name}: L = {:?}", poly.counts);
        println!("  L(k) coefficients [{}]", coefficients.join(", "));
        println!(
            "  delta = {:?}, palindromic {}, criterion {}",
            delta.trimmed(),
            delta.is_palindromic(),
            gorenstein_criterion(&g, Variant::Hstab).gorenstein
        );
    }
    Ok(())
}
