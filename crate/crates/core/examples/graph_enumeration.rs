//! Maximal cliques, chordless odd cycles and stable sets of a few graphs,
//! including one read from an edge-list file.
//!
//! cargo run --example graph_enumeration

use hstab::graph::{
    chordless_odd_cycles, generate, maximal_cliques, parse_graph, stable_sets, GraphFormat, GraphKind, Poset,
};

fn main() -> hstab::Result<()> {
    let file = include_str!("data/c5.txt");
    let graphs = [
        ("C5 from file", parse_graph(file, GraphFormat::EdgeList)?),
        ("wheel(5)", generate(&GraphKind::Wheel(5))?),
        ("K_{2,3}", generate(&GraphKind::CompleteBipartite(2, 3))?),
        ("chain of 3", generate(&GraphKind::Comparability(Poset::chain(3)))?),
        ("C7", generate(&GraphKind::Cycle(7))?),
    ];
    for (name, g) in &graphs {
        println!("{name}: {} vertices, {} edges", g.vertex_count(), g.edge_count());
        let cliques: Vec<_> = maximal_cliques(g).iter().map(|k| g.names_of(k.vertices())).collect();
        println!("  maximal cliques: {cliques:?}");
        for c in chordless_odd_cycles(g, 5) {
            println!("  chordless odd cycle: {}", g.names_of(c.vertices()).join(" "));
        }
        println!("  stable sets: {}", stable_sets(g)?.len());
    }
    Ok(())
}
