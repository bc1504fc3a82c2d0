//! Finite simple graphs and the combinatorial families the stable set
//! relaxations are built from: maximal cliques, chordless odd cycles and
//! stable sets.
//!
//! Vertices are dense ids `0..n` with an attached display name. Every
//! enumeration in this module is deterministic and returns its output in a
//! canonical order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A sorted list of vertex ids.
pub type VertexSet = Vec<VertexId>;

/// Caps for the enumerations whose output grows exponentially.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub all_cliques_max_vertices: usize,
    pub all_odd_cycles_max_vertices: usize,
    pub stable_sets_max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            all_cliques_max_vertices: 12,
            all_odd_cycles_max_vertices: 10,
            stable_sets_max_vertices: 30,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adjacency: Vec<FixedBitSet>,
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Builds a graph on `n` vertices named `"0"..` from an edge list.
    pub fn new(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::with_names(names, edges)
    }

    pub fn with_names(names: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGraph("vertex set is empty".into()));
        }
        let mut seen_names = BTreeSet::new();
        for name in &names {
            if !seen_names.insert(name.as_str()) {
                return Err(Error::InvalidGraph(format!("duplicate vertex name `{name}`")));
            }
        }
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u}, {v}}} references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if adjacency[u].contains(v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        Ok(Graph {
            names,
            adjacency,
            edges: normalized,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency[u].contains(v)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].ones()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].count_ones(..)
    }

    pub(crate) fn neighbor_set(&self, v: VertexId) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id_of(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    /// Translates a list of ids to display names.
    pub fn names_of(&self, ids: &[VertexId]) -> Vec<String> {
        ids.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn is_clique(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.is_adjacent(u, v)))
    }

    pub fn is_stable(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.is_adjacent(u, v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names)
            .field("edges", &self.edges)
            .finish()
    }
}

/// A clique, stored as a sorted vertex list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Clique(Vec<VertexId>);

impl Clique {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Clique(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }
}

/// A cycle given by its cyclic vertex sequence.
///
/// Stored in canonical form: the smallest id first, followed by the smaller
/// of its two cycle neighbors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Cycle(Vec<VertexId>);

impl Cycle {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        if let Some((start, _)) = vertices.iter().enumerate().min_by_key(|(_, &v)| v) {
            vertices.rotate_left(start);
        }
        if vertices.len() > 2 && vertices[1] > vertices[vertices.len() - 1] {
            vertices[1..].reverse();
        }
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// Consecutive vertices (cyclically) are adjacent and all are distinct.
    pub fn is_cycle_in(&self, g: &Graph) -> bool {
        let k = self.0.len();
        let distinct = self.0.iter().collect::<BTreeSet<_>>().len() == k;
        distinct
            && k >= 3
            && self.0.iter().all(|&v| v < g.vertex_count())
            && (0..k).all(|i| g.is_adjacent(self.0[i], self.0[(i + 1) % k]))
    }

    /// No edge joins two vertices that are not consecutive on the cycle.
    pub fn is_chordless_in(&self, g: &Graph) -> bool {
        let k = self.0.len();
        (0..k).all(|i| {
            (i + 2..k).all(|j| {
                let consecutive = i == 0 && j == k - 1;
                consecutive || !g.is_adjacent(self.0[i], self.0[j])
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Json,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Endpoint {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
struct JsonGraph {
    vertices: Vec<String>,
    edges: Vec<(Endpoint, Endpoint)>,
}

#[derive(Serialize)]
struct JsonGraphOut<'a> {
    vertices: &'a [String],
    edges: &'a [(VertexId, VertexId)],
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Json => parse_json(text),
    }
}

fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let parse_pair = |line_no: usize, line: &str| -> Result<(usize, usize)> {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let malformed = || Error::Parse {
            line: line_no,
            message: format!("expected two non-negative integers, found `{line}`"),
        };
        if fields.len() != 2 {
            return Err(malformed());
        }
        let a = fields[0].parse().map_err(|_| malformed())?;
        let b = fields[1].parse().map_err(|_| malformed())?;
        Ok((a, b))
    };

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let (n, m) = parse_pair(header_line, header)?;
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or(Error::Parse {
            line: text.lines().count(),
            message: format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        edges.push(parse_pair(line_no, line)?);
    }
    if let Some((line_no, line)) = lines.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("unexpected trailing line `{line}`"),
        });
    }
    Graph::new(n, &edges)
}

fn parse_json(text: &str) -> Result<Graph> {
    let raw: JsonGraph = serde_json::from_str(text)?;
    let index: HashMap<&str, usize> = raw
        .vertices
        .iter()
        .enumerate()
        .map(|(i, name)| (name.as_str(), i))
        .collect();
    let resolve = |e: &Endpoint| -> Result<usize> {
        match e {
            Endpoint::Index(i) => Ok(*i),
            Endpoint::Name(name) => index
                .get(name.as_str())
                .copied()
                .ok_or_else(|| Error::UnknownVertex(name.clone())),
        }
    };
    let edges = raw
        .edges
        .iter()
        .map(|(a, b)| Ok((resolve(a)?, resolve(b)?)))
        .collect::<Result<Vec<_>>>()?;
    Graph::with_names(raw.vertices.clone(), &edges)
}

/// Serializes a graph in the JSON exchange format (edges by index).
pub fn graph_to_json(g: &Graph) -> String {
    serde_json::to_string(&JsonGraphOut {
        vertices: &g.names,
        edges: &g.edges,
    })
    .expect("graph serialization cannot fail")
}

/// Serializes a graph in the edge-list exchange format.
pub fn graph_to_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in &g.edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A finite poset on `0..size`, given by generating relations `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    pub size: usize,
    pub relations: Vec<(usize, usize)>,
}

impl Poset {
    pub fn chain(size: usize) -> Self {
        Poset {
            size,
            relations: (1..size).map(|i| (i - 1, i)).collect(),
        }
    }

    /// The strict order relation as a transitively closed matrix.
    fn closure(&self) -> Result<Vec<Vec<bool>>> {
        let n = self.size;
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in &self.relations {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!(
                    "poset relation {a} < {b} out of range 0..{n}"
                )));
            }
            less[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| less[i][i]) {
            return Err(Error::InvalidParameter(
                "poset relations contain a cycle".into(),
            ));
        }
        Ok(less)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphKind {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    /// Rim cycle on `0..n` plus a hub `n` adjacent to every rim vertex.
    Wheel(usize),
    Edgeless(usize),
    Comparability(Poset),
}

pub fn generate(kind: &GraphKind) -> Result<Graph> {
    let positive = |n: usize, what: &str| {
        if n == 0 {
            Err(Error::InvalidParameter(format!("{what} needs at least one vertex")))
        } else {
            Ok(())
        }
    };
    let rim = |n: usize, what: &str| {
        if n < 3 {
            Err(Error::InvalidParameter(format!("{what} needs n >= 3, got {n}")))
        } else {
            Ok(())
        }
    };
    match kind {
        GraphKind::Cycle(n) => {
            rim(*n, "cycle")?;
            let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            Graph::new(*n, &edges)
        }
        GraphKind::Complete(n) => {
            positive(*n, "complete graph")?;
            let edges: Vec<_> = (0..*n)
                .flat_map(|i| (i + 1..*n).map(move |j| (i, j)))
                .collect();
            Graph::new(*n, &edges)
        }
        GraphKind::CompleteBipartite(a, b) => {
            positive(*a, "bipartite side")?;
            positive(*b, "bipartite side")?;
            let edges: Vec<_> = (0..*a)
                .flat_map(|i| (0..*b).map(move |j| (i, a + j)))
                .collect();
            Graph::new(a + b, &edges)
        }
        GraphKind::Path(n) => {
            positive(*n, "path")?;
            let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
            Graph::new(*n, &edges)
        }
        GraphKind::Wheel(n) => {
            rim(*n, "wheel")?;
            let mut edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
            edges.extend((0..*n).map(|i| (i, *n)));
            Graph::new(n + 1, &edges)
        }
        GraphKind::Edgeless(n) => {
            positive(*n, "edgeless graph")?;
            Graph::new(*n, &[])
        }
        GraphKind::Comparability(poset) => {
            positive(poset.size, "poset")?;
            let less = poset.closure()?;
            let n = poset.size;
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| less[i][j] || less[j][i])
                .collect();
            Graph::new(n, &edges)
        }
    }
}

/// All inclusion-maximal cliques, sorted lexicographically.
///
/// Bron–Kerbosch with Tomita pivoting. Isolated vertices come out as
/// singleton cliques.
pub fn maximal_cliques(g: &Graph) -> Vec<Clique> {
    let n = g.vertex_count();
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let mut out = Vec::new();
    let mut current = Vec::new();
    bron_kerbosch(
        g,
        &mut current,
        candidates,
        FixedBitSet::with_capacity(n),
        &mut out,
    );
    out.sort();
    out
}

fn bron_kerbosch(
    g: &Graph,
    current: &mut Vec<VertexId>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<Clique>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(Clique::new(current.clone()));
        }
        return;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| candidates.intersection_count(g.neighbor_set(u)))
        .expect("candidate set is nonempty");
    let branch: Vec<VertexId> = candidates
        .ones()
        .filter(|&v| !g.is_adjacent(pivot, v))
        .collect();
    for v in branch {
        let nv = g.neighbor_set(v);
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(nv);
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(nv);
        current.push(v);
        bron_kerbosch(g, current, next_candidates, next_excluded, out);
        current.pop();
        candidates.remove(v);
        excluded.insert(v);
    }
}

/// Every nonempty clique, sorted lexicographically.
pub fn all_cliques(g: &Graph) -> Result<Vec<Clique>> {
    all_cliques_with(g, &Limits::default())
}

pub fn all_cliques_with(g: &Graph, limits: &Limits) -> Result<Vec<Clique>> {
    check_cap("all_cliques", g.vertex_count(), limits.all_cliques_max_vertices)?;
    let n = g.vertex_count();
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    extend_cliques(g, &mut current, &all, &mut out);
    out.sort();
    Ok(out)
}

fn extend_cliques(
    g: &Graph,
    current: &mut Vec<VertexId>,
    candidates: &FixedBitSet,
    out: &mut Vec<Clique>,
) {
    for v in candidates.ones() {
        current.push(v);
        out.push(Clique::new(current.clone()));
        let mut next = candidates.clone();
        next.intersect_with(g.neighbor_set(v));
        next.set_range(..v + 1, false);
        extend_cliques(g, current, &next, out);
        current.pop();
    }
}

/// All chordless cycles of odd length at least `min_len`, each once, in
/// canonical form and sorted.
pub fn chordless_odd_cycles(g: &Graph, min_len: usize) -> Vec<Cycle> {
    chordless_odd_cycles_bounded(g, min_len, g.vertex_count())
}

/// As [`chordless_odd_cycles`], ignoring cycles longer than `max_len`.
pub fn chordless_odd_cycles_bounded(g: &Graph, min_len: usize, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    for start in g.vertices() {
        let mut path = vec![start];
        extend_induced_path(g, &mut path, min_len.max(3), max_len, &mut out);
    }
    out.sort();
    out
}

// Grows induced paths whose smallest vertex is path[0]; a path closes into a
// chordless cycle exactly when the new endpoint is adjacent to path[0].
fn extend_induced_path(
    g: &Graph,
    path: &mut Vec<VertexId>,
    min_len: usize,
    max_len: usize,
    out: &mut Vec<Cycle>,
) {
    let start = path[0];
    let last = *path.last().unwrap();
    let interior = if path.len() > 2 { &path[1..path.len() - 1] } else { &[][..] };
    let candidates: Vec<VertexId> = g
        .neighbors(last)
        .filter(|&v| v > start && !path.contains(&v))
        .filter(|&v| interior.iter().all(|&w| !g.is_adjacent(v, w)))
        .collect();
    for v in candidates {
        if path.len() >= 2 && g.is_adjacent(v, start) {
            let len = path.len() + 1;
            if len % 2 == 1 && len >= min_len && len <= max_len && path[1] < v {
                let mut cycle = path.clone();
                cycle.push(v);
                out.push(Cycle(cycle));
            }
        } else if path.len() + 2 <= max_len {
            path.push(v);
            extend_induced_path(g, path, min_len, max_len, out);
            path.pop();
        }
    }
}

/// All odd cycles (chords allowed), each once, canonical and sorted.
pub fn all_odd_cycles(g: &Graph) -> Result<Vec<Cycle>> {
    all_odd_cycles_with(g, &Limits::default())
}

pub fn all_odd_cycles_with(g: &Graph, limits: &Limits) -> Result<Vec<Cycle>> {
    check_cap(
        "all_odd_cycles",
        g.vertex_count(),
        limits.all_odd_cycles_max_vertices,
    )?;
    let mut out = Vec::new();
    for start in g.vertices() {
        let mut path = vec![start];
        extend_simple_path(g, &mut path, &mut out);
    }
    out.sort();
    Ok(out)
}

fn extend_simple_path(g: &Graph, path: &mut Vec<VertexId>, out: &mut Vec<Cycle>) {
    let start = path[0];
    let last = *path.last().unwrap();
    let candidates: Vec<VertexId> = g
        .neighbors(last)
        .filter(|&v| v > start && !path.contains(&v))
        .collect();
    for v in candidates {
        if path.len() >= 2 && g.is_adjacent(v, start) && path.len().is_multiple_of(2) && path[1] < v {
            let mut cycle = path.clone();
            cycle.push(v);
            out.push(Cycle(cycle));
        }
        path.push(v);
        extend_simple_path(g, path, out);
        path.pop();
    }
}

/// All stable sets including the empty set, in lexicographic order.
pub fn stable_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    stable_sets_with(g, &Limits::default())
}

pub fn stable_sets_with(g: &Graph, limits: &Limits) -> Result<Vec<VertexSet>> {
    check_cap("stable_sets", g.vertex_count(), limits.stable_sets_max_vertices)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    let blocked = FixedBitSet::with_capacity(g.vertex_count());
    extend_stable(g, 0, &mut current, &blocked, &mut out);
    Ok(out)
}

fn extend_stable(
    g: &Graph,
    from: VertexId,
    current: &mut Vec<VertexId>,
    blocked: &FixedBitSet,
    out: &mut Vec<VertexSet>,
) {
    out.push(current.clone());
    for v in from..g.vertex_count() {
        if blocked.contains(v) {
            continue;
        }
        let mut next_blocked = blocked.clone();
        next_blocked.union_with(g.neighbor_set(v));
        current.push(v);
        extend_stable(g, v + 1, current, &next_blocked, out);
        current.pop();
    }
}

pub fn is_triangle_free(g: &Graph) -> bool {
    g.edges()
        .iter()
        .all(|&(u, v)| g.neighbor_set(u).is_disjoint(g.neighbor_set(v)))
}

fn check_cap(what: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::SizeLimitExceeded {
            what,
            limit,
            actual,
        })
    } else {
        Ok(())
    }
}
