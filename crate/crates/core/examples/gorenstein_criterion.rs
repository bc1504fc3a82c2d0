//! The combinatorial Gorenstein criterion for the three relaxations, next
//! to the trace test, over a handful of graph families.
//!
//! cargo run --example gorenstein_criterion

use hstab::graph::{generate, Graph, GraphKind};
use hstab::lattice::{gorenstein_criterion, trace_test, Variant};

fn main() -> hstab::Result<()> {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in [3, 5, 7, 9, 11] {
        graphs.push((format!("C{n}"), generate(&GraphKind::Cycle(n))?));
    }
    graphs.push(("K4".into(), generate(&GraphKind::Complete(4))?));
    graphs.push(("wheel(5)".into(), generate(&GraphKind::Wheel(5))?));
    graphs.push(("edgeless(3)".into(), generate(&GraphKind::Edgeless(3))?));
    graphs.push(("triangle + pendant".into(), Graph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)])?));

    println!("{:<20} {:>6} {:>6} {:>6} {:>6}", "graph", "hstab", "tstab", "qstab", "trace");
    for (name, g) in &graphs {
        let verdict = |v| if gorenstein_criterion(g, v).gorenstein { "yes" } else { "no" };
        println!(
            "{name:<20} {:>6} {:>6} {:>6} {:>6}",
            verdict(Variant::Hstab),
            verdict(Variant::Tstab),
            verdict(Variant::Qstab),
            if trace_test(g) { "yes" } else { "no" }
        );
    }
    let v = gorenstein_criterion(&graphs[2].1, Variant::Hstab);
    println!("\nC7 in detail: {v:?}");
    Ok(())
}
