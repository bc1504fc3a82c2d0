//! Integer-lattice side of the Ehrhart ring of HSTAB(G).
//!
//! A [`Monomial`] is an exponent vector on `V ∪ {-∞}`; the `-∞` entry is
//! stored as [`Monomial::deg`]. For an integer `n`, the set `U^(n)` consists
//! of the monomials `μ` with
//!
//! * `μ(v) >= n` for every vertex `v`,
//! * `μ⁺(K) <= deg - n` for every maximal clique `K`,
//! * `μ⁺(C) <= deg·(#C-1)/2 - n` for every chordless odd cycle `C` of
//!   length at least 5.
//!
//! `U^(0)` is the Ehrhart ring, `U^(1)` the canonical ideal ω, and in general
//! `U^(n)` is the symbolic power `ω^(n)`. All arithmetic is on `i64`; the
//! cycle condition is checked doubled to stay integral.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{self, Clique, Cycle, Graph, VertexId};
use crate::polytope::{Rational, RationalVector};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    values: Vec<i64>,
    deg: i64,
}

#[derive(Serialize, Deserialize)]
struct MonomialFile {
    values: BTreeMap<String, i64>,
    deg: i64,
}

impl Monomial {
    pub fn new(values: Vec<i64>, deg: i64) -> Self {
        Monomial { values, deg }
    }

    /// Every vertex gets `value`.
    pub fn constant(n: usize, value: i64, deg: i64) -> Self {
        Monomial::new(vec![value; n], deg)
    }

    /// The identity `T^0`.
    pub fn one(n: usize) -> Self {
        Monomial::constant(n, 0, 0)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, v: VertexId) -> i64 {
        self.values[v]
    }

    pub fn deg(&self) -> i64 {
        self.deg
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum_over(&self, set: &[VertexId]) -> i64 {
        set.iter().map(|&v| self.values[v]).sum()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Monomial::new(self.values.iter().map(|v| v * k).collect(), self.deg * k)
    }

    /// The point `μ|_V / deg`; requires `deg > 0`.
    pub fn normalized(&self) -> Result<RationalVector> {
        if self.deg <= 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot normalize a monomial of degree {}",
                self.deg
            )));
        }
        Ok(RationalVector(
            self.values
                .iter()
                .map(|&v| Rational::new(v.into(), self.deg.into()))
                .collect(),
        ))
    }

    pub fn to_json(&self, names: &[String]) -> Result<String> {
        if names.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                actual: self.len(),
            });
        }
        let file = MonomialFile {
            values: names.iter().cloned().zip(self.values.iter().copied()).collect(),
            deg: self.deg,
        };
        Ok(serde_json::to_string(&file)?)
    }

    /// Reads `{"values": {"name": int}, "deg": int}`.
    pub fn from_json(text: &str, names: &[String]) -> Result<Self> {
        let file: MonomialFile = serde_json::from_str(text)?;
        let values = names
            .iter()
            .map(|name| {
                file.values
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::InvalidParameter(format!("missing value for `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = file.values.keys().find(|k| !names.contains(k)) {
            return Err(Error::UnknownVertex(extra.clone()));
        }
        Ok(Monomial::new(values, file.deg))
    }
}

impl Add for &Monomial {
    type Output = Monomial;

    fn add(self, other: &Monomial) -> Monomial {
        assert_eq!(self.len(), other.len(), "monomials over different vertex sets");
        Monomial::new(
            self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            self.deg + other.deg,
        )
    }
}

impl Sub for &Monomial {
    type Output = Monomial;

    fn sub(self, other: &Monomial) -> Monomial {
        self + &(-other)
    }
}

impl Neg for &Monomial {
    type Output = Monomial;

    fn neg(self) -> Monomial {
        self.scaled(-1)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}; deg {})", self.values, self.deg)
    }
}

/// Which relaxation of STAB(G) the lattice conditions describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Hstab,
    Tstab,
    Qstab,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Hstab => "hstab",
            Variant::Tstab => "tstab",
            Variant::Qstab => "qstab",
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hstab" => Ok(Variant::Hstab),
            "tstab" => Ok(Variant::Tstab),
            "qstab" => Ok(Variant::Qstab),
            other => Err(Error::InvalidParameter(format!("unknown variant `{other}`"))),
        }
    }
}

/// Maximal elements of the family of cliques with at most three vertices:
/// every triangle plus every maximal clique of size one or two.
pub fn small_clique_maximal_elements(g: &Graph) -> Vec<Clique> {
    let mut out = Vec::new();
    for k in graph::maximal_cliques(g) {
        let vs = k.vertices();
        if vs.len() <= 3 {
            out.push(k.clone());
            continue;
        }
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                for c in b + 1..vs.len() {
                    out.push(Clique::new(vec![vs[a], vs[b], vs[c]]));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The clique and cycle families that define `U^(n)` for one graph and
/// variant, computed once for repeated membership queries.
#[derive(Clone, Debug)]
pub struct LatticeConditions {
    variant: Variant,
    vertex_count: usize,
    cliques: Vec<Clique>,
    cycles: Vec<Cycle>,
}

impl LatticeConditions {
    pub fn new(g: &Graph, variant: Variant) -> Self {
        let (cliques, cycles) = match variant {
            Variant::Hstab => (graph::maximal_cliques(g), graph::chordless_odd_cycles(g, 5)),
            Variant::Tstab => (
                small_clique_maximal_elements(g),
                graph::chordless_odd_cycles(g, 5),
            ),
            Variant::Qstab => (graph::maximal_cliques(g), Vec::new()),
        };
        LatticeConditions {
            variant,
            vertex_count: g.vertex_count(),
            cliques,
            cycles,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    fn check_dim(&self, mu: &Monomial) -> Result<()> {
        if mu.len() != self.vertex_count {
            return Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                actual: mu.len(),
            });
        }
        Ok(())
    }

    /// The first violated condition of `U^(n)`, if any.
    pub fn violation(&self, mu: &Monomial, n: i64) -> Result<Option<Violation>> {
        self.check_dim(mu)?;
        if let Some(v) = (0..self.vertex_count).find(|&v| mu.value(v) < n) {
            return Ok(Some(Violation::Vertex(v)));
        }
        if let Some(k) = self
            .cliques
            .iter()
            .find(|k| mu.sum_over(k.vertices()) > mu.deg() - n)
        {
            return Ok(Some(Violation::Clique(k.clone())));
        }
        if let Some(c) = self.cycles.iter().find(|c| {
            let len = c.len() as i64;
            2 * mu.sum_over(c.vertices()) > mu.deg() * (len - 1) - 2 * n
        }) {
            return Ok(Some(Violation::Cycle(c.clone())));
        }
        Ok(None)
    }

    pub fn contains(&self, mu: &Monomial, n: i64) -> Result<bool> {
        Ok(self.violation(mu, n)?.is_none())
    }

    /// Searches for `η ∈ U^(1)` with `-η ∈ U^(-1)`, i.e. `1 ∈ trace(ω)`.
    ///
    /// Any such pair forces `η(v) = 1` on every vertex (from `η(v) >= 1` and
    /// `-η(v) >= -1`), and the clique conditions pin `deg η` between the
    /// largest clique size plus one and the smallest clique size plus one.
    /// Only those candidates are tried.
    pub fn trace_test(&self) -> bool {
        let sizes = self.cliques.iter().map(|k| k.len() as i64);
        let (Some(lo), Some(hi)) = (sizes.clone().max(), sizes.min()) else {
            return false;
        };
        (lo + 1..=hi + 1).any(|deg| {
            let eta = Monomial::constant(self.vertex_count, 1, deg);
            self.contains(&eta, 1).unwrap_or(false) && self.contains(&-&eta, -1).unwrap_or(false)
        })
    }
}

/// A violated defining condition of `U^(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Vertex(VertexId),
    Clique(Clique),
    Cycle(Cycle),
}

pub fn u_membership(g: &Graph, mu: &Monomial, n: i64) -> Result<bool> {
    LatticeConditions::new(g, Variant::Hstab).contains(mu, n)
}

/// `U^(n)` with the clique family replaced by the maximal cliques of size
/// at most three (the TSTAB analogue).
pub fn tu_membership(g: &Graph, mu: &Monomial, n: i64) -> Result<bool> {
    LatticeConditions::new(g, Variant::Tstab).contains(mu, n)
}

/// `U^(n)` without odd-cycle conditions (the QSTAB analogue).
pub fn qu_membership(g: &Graph, mu: &Monomial, n: i64) -> Result<bool> {
    LatticeConditions::new(g, Variant::Qstab).contains(mu, n)
}

/// `T^μ` lies in the Ehrhart ring of HSTAB(G).
pub fn in_ehrhart_ring(g: &Graph, mu: &Monomial) -> Result<bool> {
    u_membership(g, mu, 0)
}

/// `T^μ` lies in the canonical ideal ω.
pub fn in_canonical_ideal(g: &Graph, mu: &Monomial) -> Result<bool> {
    u_membership(g, mu, 1)
}

/// `T^μ ∈ ω^(n)`; the symbolic powers are described exactly by `U^(n)`.
pub fn symbolic_power_membership(g: &Graph, mu: &Monomial, n: i64) -> Result<bool> {
    u_membership(g, mu, n)
}

/// `1 ∈ trace(ω)` for the Ehrhart ring of HSTAB(G).
pub fn trace_test(g: &Graph) -> bool {
    LatticeConditions::new(g, Variant::Hstab).trace_test()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `n = 1`.
    A,
    /// `n = 2`, no chordless odd cycle of length at least 7.
    B,
    /// `n >= 3`, no chordless odd cycle of length at least 5.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    UnequalCliques { smaller: Clique, larger: Clique },
    Cycle(Cycle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinVerdict {
    pub variant: Variant,
    pub gorenstein: bool,
    /// Sizes of the maximal cliques (of the maximal small cliques for
    /// TSTAB), sorted.
    pub clique_sizes: Vec<usize>,
    pub n: Option<usize>,
    pub branch: Option<Branch>,
    pub witness: Option<Witness>,
}

/// Decides the Gorenstein property of the Ehrhart ring of the chosen
/// relaxation from clique sizes and chordless odd cycles.
pub fn gorenstein_criterion(g: &Graph, variant: Variant) -> GorensteinVerdict {
    let conditions = LatticeConditions::new(g, variant);
    let mut clique_sizes: Vec<usize> = conditions.cliques.iter().map(Clique::len).collect();
    clique_sizes.sort_unstable();
    let mut verdict = GorensteinVerdict {
        variant,
        gorenstein: false,
        clique_sizes,
        n: None,
        branch: None,
        witness: None,
    };

    let smallest = conditions.cliques.iter().min_by_key(|k| k.len());
    let largest = conditions.cliques.iter().max_by_key(|k| k.len());
    let (Some(smallest), Some(largest)) = (smallest, largest) else {
        return verdict;
    };
    if smallest.len() != largest.len() {
        verdict.witness = Some(Witness::UnequalCliques {
            smaller: smallest.clone(),
            larger: largest.clone(),
        });
        return verdict;
    }
    let n = smallest.len();
    verdict.n = Some(n);

    if variant == Variant::Qstab {
        verdict.gorenstein = true;
        return verdict;
    }
    let (branch, min_forbidden) = match n {
        1 => (Branch::A, None),
        2 => (Branch::B, Some(7)),
        _ => (Branch::C, Some(5)),
    };
    let offending = min_forbidden.and_then(|len| conditions.cycles.iter().find(|c| c.len() >= len));
    match offending {
        Some(c) => verdict.witness = Some(Witness::Cycle(c.clone())),
        None => {
            verdict.gorenstein = true;
            verdict.branch = Some(branch);
        }
    }
    verdict
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Maximum number of search nodes before giving up with an error.
    pub budget: u64,
    /// Prune with the equalities forced on every part by constraints that
    /// are tight for `μ`.
    pub tight_pruning: bool,
    /// Restrict the search to degree splits whose first (smallest) degree
    /// equals this value.
    pub first_degree: Option<i64>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            budget: 100_000_000,
            tight_pruning: true,
            first_degree: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub parts: Option<Vec<Monomial>>,
    /// Search nodes visited (one per tentative vertex assignment).
    pub nodes: u64,
    /// Degree splits examined, in search order.
    pub degree_splits: Vec<Vec<i64>>,
}

/// Looks for `μ = μ_1 + … + μ_k` with every `μ_i ∈ U^(1)`; returns the
/// lexicographically first decomposition or `None` when none exists.
pub fn decompose_into_u1(g: &Graph, mu: &Monomial, k: usize) -> Result<Option<Vec<Monomial>>> {
    Ok(decompose_into_u1_with(g, mu, k, &DecomposeOptions::default())?.parts)
}

pub fn decompose_into_u1_with(
    g: &Graph,
    mu: &Monomial,
    k: usize,
    options: &DecomposeOptions,
) -> Result<DecompositionReport> {
    let conditions = LatticeConditions::new(g, Variant::Hstab);
    decompose_with_conditions(&conditions, mu, k, options)
}

pub fn decompose_with_conditions(
    conditions: &LatticeConditions,
    mu: &Monomial,
    k: usize,
    options: &DecomposeOptions,
) -> Result<DecompositionReport> {
    if k == 0 {
        return Err(Error::InvalidParameter("number of parts must be at least 1".into()));
    }
    let mut report = DecompositionReport {
        parts: None,
        nodes: 0,
        degree_splits: Vec::new(),
    };
    // ω^k ⊆ ω^(k), so anything outside U^(k) has no decomposition
    if !conditions.contains(mu, k as i64)? {
        return Ok(report);
    }
    let mut search = Search::new(conditions, mu, k, options);
    for split in search.degree_splits() {
        if options.first_degree.is_some_and(|d| split[0] != d) {
            continue;
        }
        report.degree_splits.push(split.clone());
        let found = search.run(&split)?;
        if let Some(values) = found {
            report.parts = Some(
                (0..k)
                    .map(|i| Monomial::new(values.iter().map(|v| v[i]).collect(), split[i]))
                    .collect(),
            );
            break;
        }
    }
    report.nodes = search.nodes;
    Ok(report)
}

struct Constraint {
    members: Vec<VertexId>,
    // 1 for cliques, 2 for cycles (doubled to keep the bound integral)
    scale: i64,
    // per part: bound on scale·μ_i⁺(members) as a function of deg μ_i
    cycle_len: Option<i64>,
    tight: bool,
}

impl Constraint {
    fn bound(&self, deg: i64) -> i64 {
        match self.cycle_len {
            None => deg - 1,
            Some(len) => deg * (len - 1) - 2,
        }
    }
}

struct Search<'a> {
    mu: &'a Monomial,
    k: usize,
    options: &'a DecomposeOptions,
    constraints: Vec<Constraint>,
    by_vertex: Vec<Vec<usize>>,
    min_degree: i64,
    nodes: u64,
}

struct State {
    bounds: Vec<Vec<i64>>,
    partial: Vec<Vec<i64>>,
    unassigned: Vec<i64>,
    unassigned_mu: Vec<i64>,
    // tied[i]: parts i and i+1 share a degree and agree on every vertex so far
    tied: Vec<bool>,
    values: Vec<Vec<i64>>,
}

impl<'a> Search<'a> {
    fn new(
        conditions: &LatticeConditions,
        mu: &'a Monomial,
        k: usize,
        options: &'a DecomposeOptions,
    ) -> Self {
        let kk = k as i64;
        let mut constraints = Vec::new();
        for c in &conditions.cliques {
            let members = c.vertices().to_vec();
            let total = mu.sum_over(&members);
            constraints.push(Constraint {
                tight: total == mu.deg() - kk,
                members,
                scale: 1,
                cycle_len: None,
            });
        }
        for c in &conditions.cycles {
            let members = c.vertices().to_vec();
            let len = c.len() as i64;
            let total = mu.sum_over(&members);
            constraints.push(Constraint {
                tight: 2 * total == mu.deg() * (len - 1) - 2 * kk,
                members,
                scale: 2,
                cycle_len: Some(len),
            });
        }
        let mut by_vertex = vec![Vec::new(); mu.len()];
        for (ci, c) in constraints.iter().enumerate() {
            for &v in &c.members {
                by_vertex[v].push(ci);
            }
        }
        // each part has entries >= 1, so deg μ_i is at least the largest
        // clique size plus one and satisfies the cycle bound for all-ones
        let min_degree = constraints
            .iter()
            .map(|c| {
                let ones = c.scale * c.members.len() as i64;
                (1..).find(|&d| c.bound(d) >= ones).unwrap()
            })
            .max()
            .unwrap_or(1);
        Search {
            mu,
            k,
            options,
            constraints,
            by_vertex,
            min_degree,
            nodes: 0,
        }
    }

    /// Nondecreasing degree tuples summing to deg μ, in lexicographic order.
    fn degree_splits(&self) -> Vec<Vec<i64>> {
        fn rec(parts_left: usize, total: i64, min: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if parts_left == 1 {
                if total >= min {
                    prefix.push(total);
                    out.push(prefix.clone());
                    prefix.pop();
                }
                return;
            }
            let mut d = min;
            while d * parts_left as i64 <= total {
                prefix.push(d);
                rec(parts_left - 1, total - d, d, prefix, out);
                prefix.pop();
                d += 1;
            }
        }
        let mut out = Vec::new();
        rec(self.k, self.mu.deg(), self.min_degree, &mut Vec::new(), &mut out);
        out
    }

    fn run(&mut self, degrees: &[i64]) -> Result<Option<Vec<Vec<i64>>>> {
        let k = self.k;
        let mut state = State {
            bounds: self
                .constraints
                .iter()
                .map(|c| degrees.iter().map(|&d| c.bound(d)).collect())
                .collect(),
            partial: vec![vec![0; k]; self.constraints.len()],
            unassigned: self.constraints.iter().map(|c| c.members.len() as i64).collect(),
            unassigned_mu: self.constraints.iter().map(|c| self.mu.sum_over(&c.members)).collect(),
            tied: (0..k.saturating_sub(1)).map(|i| degrees[i] == degrees[i + 1]).collect(),
            values: Vec::with_capacity(self.mu.len()),
        };
        if self.assign(0, &mut state)? {
            Ok(Some(state.values))
        } else {
            Ok(None)
        }
    }

    fn assign(&mut self, v: VertexId, state: &mut State) -> Result<bool> {
        if v == self.mu.len() {
            return Ok(true);
        }
        let k = self.k;
        let total = self.mu.value(v);
        if total < k as i64 {
            return Ok(false);
        }
        let mut parts = vec![1i64; k];
        parts[k - 1] = total - (k as i64 - 1);
        loop {
            self.nodes += 1;
            if self.nodes > self.options.budget {
                return Err(Error::SearchBudgetExceeded {
                    budget: self.options.budget,
                });
            }
            let symmetric_ok = (0..k.saturating_sub(1))
                .all(|i| !state.tied[i] || parts[i] <= parts[i + 1]);
            if symmetric_ok && self.apply(v, &parts, state) {
                let saved_ties = state.tied.clone();
                for i in 0..k.saturating_sub(1) {
                    if parts[i] < parts[i + 1] {
                        state.tied[i] = false;
                    }
                }
                state.values.push(parts.clone());
                if self.assign(v + 1, state)? {
                    return Ok(true);
                }
                state.values.pop();
                state.tied = saved_ties;
            }
            self.unapply(v, &parts, state);
            if !next_composition(&mut parts) {
                return Ok(false);
            }
        }
    }

    /// Adds vertex `v`'s part values to every constraint through `v` and
    /// reports whether all of them can still be met.
    fn apply(&self, v: VertexId, parts: &[i64], state: &mut State) -> bool {
        let spread = self.k as i64 - 1;
        let mut feasible = true;
        for &ci in &self.by_vertex[v] {
            state.unassigned[ci] -= 1;
            state.unassigned_mu[ci] -= self.mu.value(v);
            let c = &self.constraints[ci];
            let left = state.unassigned[ci];
            let left_max = state.unassigned_mu[ci] - spread * left;
            for i in 0..self.k {
                state.partial[ci][i] += parts[i];
                let lowest = c.scale * (state.partial[ci][i] + left);
                if lowest > state.bounds[ci][i] {
                    feasible = false;
                }
                if self.options.tight_pruning && c.tight {
                    let highest = c.scale * (state.partial[ci][i] + left_max);
                    if highest < state.bounds[ci][i] {
                        feasible = false;
                    }
                }
            }
        }
        feasible
    }

    fn unapply(&self, v: VertexId, parts: &[i64], state: &mut State) {
        for &ci in &self.by_vertex[v] {
            state.unassigned[ci] += 1;
            state.unassigned_mu[ci] += self.mu.value(v);
            for i in 0..self.k {
                state.partial[ci][i] -= parts[i];
            }
        }
    }
}

/// Advances to the next composition (parts >= 1, fixed sum) in
/// lexicographic order. Returns false after the last one.
fn next_composition(parts: &mut [i64]) -> bool {
    let k = parts.len();
    if k < 2 {
        return false;
    }
    // rightmost position i < k-1 that can grow: needs a donor to its right
    // holding more than 1 in total beyond the minimum
    for i in (0..k - 1).rev() {
        let tail: i64 = parts[i + 1..].iter().sum();
        let tail_len = (k - 1 - i) as i64;
        if tail > tail_len {
            parts[i] += 1;
            let rest = tail - 1;
            for p in &mut parts[i + 1..k - 1] {
                *p = 1;
            }
            parts[k - 1] = rest - (tail_len - 1);
            return true;
        }
    }
    false
}
