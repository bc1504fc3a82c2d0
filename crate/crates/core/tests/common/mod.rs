//! Shared graph corpus and brute-force oracles for the integration tests.
//! The oracles avoid the library's enumeration code on purpose.

#![allow(dead_code)]

use hstab::graph::{generate, Graph, GraphKind};

pub struct Named {
    pub name: String,
    pub graph: Graph,
}

/// The graph on 5 vertices whose edge set is encoded by `mask` over the ten
/// pairs in lexicographic order.
pub fn five_vertex_graph(mask: u32) -> Graph {
    labeled_graph(5, mask)
}

pub fn labeled_graph(n: usize, mask: u32) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let edges: Vec<(usize, usize)> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    Graph::new(n, &edges).unwrap()
}

/// All labeled graphs on `n` vertices.
pub fn all_labeled_graphs(n: usize) -> Vec<Graph> {
    let pairs = n * (n - 1) / 2;
    (0..1u32 << pairs).map(|m| labeled_graph(n, m)).collect()
}

pub fn named_generators() -> Vec<Named> {
    let mut kinds = vec![
        ("C5".to_string(), GraphKind::Cycle(5)),
        ("C7".to_string(), GraphKind::Cycle(7)),
        ("K2,3".to_string(), GraphKind::CompleteBipartite(2, 3)),
    ];
    for n in 2..=5 {
        kinds.push((format!("K{n}"), GraphKind::Complete(n)));
    }
    for n in 1..=6 {
        kinds.push((format!("P{n}"), GraphKind::Path(n)));
    }
    for n in 1..=5 {
        kinds.push((format!("E{n}"), GraphKind::Edgeless(n)));
    }
    kinds
        .into_iter()
        .map(|(name, kind)| Named {
            name,
            graph: generate(&kind).unwrap(),
        })
        .collect()
}

/// All 1024 labeled graphs on five vertices followed by the named
/// generator graphs.
pub fn corpus() -> Vec<Named> {
    let mut out: Vec<Named> = (0..1024)
        .map(|m| Named {
            name: format!("G5#{m}"),
            graph: five_vertex_graph(m),
        })
        .collect();
    out.extend(named_generators());
    out
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..1 << n).map(move |m| (0..n).filter(|&v| m >> v & 1 == 1).collect())
}

pub fn brute_cliques(g: &Graph) -> Vec<Vec<usize>> {
    subsets(g.vertex_count()).filter(|s| g.is_clique(s)).collect()
}

pub fn brute_maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut out: Vec<Vec<usize>> = brute_cliques(g)
        .into_iter()
        .filter(|s| {
            (0..n).all(|v| s.contains(&v) || s.iter().any(|&u| !g.is_adjacent(u, v)))
        })
        .collect();
    out.sort();
    out
}

/// Vertex sets of odd size >= `min_len` that induce a cycle.
pub fn brute_holes(g: &Graph, min_len: usize) -> Vec<Vec<usize>> {
    subsets(g.vertex_count())
        .filter(|s| s.len() >= min_len && s.len() % 2 == 1)
        .filter(|s| induces_cycle(g, s))
        .collect()
}

fn induces_cycle(g: &Graph, s: &[usize]) -> bool {
    let deg = |v: usize| s.iter().filter(|&&u| g.is_adjacent(u, v)).count();
    if s.iter().any(|&v| deg(v) != 2) {
        return false;
    }
    // connected: walk from the first vertex
    let mut seen = vec![s[0]];
    let mut frontier = vec![s[0]];
    while let Some(v) = frontier.pop() {
        for &u in s {
            if g.is_adjacent(u, v) && !seen.contains(&u) {
                seen.push(u);
                frontier.push(u);
            }
        }
    }
    seen.len() == s.len()
}

pub fn brute_stable_sets(g: &Graph) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    out.extend(subsets(g.vertex_count()).filter(|s| g.is_stable(s)));
    out
}

/// Definition of `U^(n)` evaluated directly over brute-force families.
pub struct BruteU {
    cliques: Vec<Vec<usize>>,
    holes: Vec<Vec<usize>>,
}

impl BruteU {
    pub fn new(g: &Graph) -> Self {
        BruteU {
            cliques: brute_maximal_cliques(g),
            holes: brute_holes(g, 5),
        }
    }

    pub fn contains(&self, values: &[i64], deg: i64, n: i64) -> bool {
        let sum = |s: &[usize]| s.iter().map(|&v| values[v]).sum::<i64>();
        values.iter().all(|&x| x >= n)
            && self.cliques.iter().all(|k| sum(k) <= deg - n)
            && self.holes.iter().all(|c| 2 * sum(c) <= deg * (c.len() as i64 - 1) - 2 * n)
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn holes(&self) -> &[Vec<usize>] {
        &self.holes
    }
}

/// Gorenstein criterion evaluated from the brute-force families.
pub fn brute_criterion(g: &Graph) -> bool {
    let cliques = brute_maximal_cliques(g);
    let n = cliques[0].len();
    if cliques.iter().any(|k| k.len() != n) {
        return false;
    }
    let holes = brute_holes(g, 5);
    match n {
        1 => true,
        2 => holes.iter().all(|c| c.len() < 7),
        _ => holes.is_empty(),
    }
}
