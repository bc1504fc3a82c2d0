//! Builds the HSTAB, TSTAB and QSTAB descriptions of the 5-wheel, lists
//! their vertices and shows the fractional vertex that makes the wheel
//! fail h-perfectness.
//!
//! cargo run --example polytope_vertices

use hstab::graph::{generate, GraphKind};
use hstab::polytope::{hstab_system, is_h_perfect, qstab_system, remove_redundant, tstab_system, vertices};

fn main() -> hstab::Result<()> {
    let g = generate(&GraphKind::Wheel(5))?;
    for (name, system) in [
        ("hstab", hstab_system(&g, true)?),
        ("tstab", tstab_system(&g)?),
        ("qstab", qstab_system(&g)?),
    ] {
        let facets = remove_redundant(&system)?;
        let verts = vertices(&system)?;
        println!("{name}: {} rows, {} facets, {} vertices", system.rows().len(), facets.rows().len(), verts.len());
        for v in verts.vertices().iter().filter(|v| !v.is_integral()) {
            println!("  fractional vertex {v}");
        }
    }
    println!("h-perfect: {}", is_h_perfect(&g)?);

    // the full description (every clique and odd cycle) has the same facets
    let full = remove_redundant(&hstab_system(&g, false)?)?;
    println!("full system reduces to {} facets", full.rows().len());
    Ok(())
}
