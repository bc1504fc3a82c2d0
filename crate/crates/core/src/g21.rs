//! The 21-vertex graph on `X ∪ Y ∪ Z` whose canonical ideal has
//! `ω² ≠ ω^(2)`, and a harness that re-establishes each of its properties.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::graph::{self, Cycle, Graph, VertexId};
use crate::lattice::{self, DecomposeOptions, Monomial};
use crate::polytope::{self, certify_not_in_stab, rational, Certificate, RationalVector};

/// Vertex ids of the three 7-element families, indexed mod 7.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct G21Labels {
    pub x: [VertexId; 7],
    pub y: [VertexId; 7],
    pub z: [VertexId; 7],
}

impl G21Labels {
    /// The chordless 7-cycle `x0 x1 … x6`.
    pub fn x_cycle(&self) -> Cycle {
        Cycle::new(self.x.to_vec())
    }

    /// The chordless 7-cycle `z0 z3 z6 z2 z5 z1 z4`.
    pub fn z_cycle(&self) -> Cycle {
        Cycle::new((0..7).map(|i| self.z[(3 * i) % 7]).collect())
    }

    /// The 5-cycle `C_j = x_j y_j z_j y_{j+1} x_{j+1}`.
    pub fn c(&self, j: usize) -> Cycle {
        let k = (j + 1) % 7;
        Cycle::new(vec![self.x[j], self.y[j], self.z[j], self.y[k], self.x[k]])
    }

    pub fn c_cycles(&self) -> Vec<Cycle> {
        (0..7).map(|j| self.c(j)).collect()
    }
}

pub fn build_g21() -> (Graph, G21Labels) {
    let labels = G21Labels {
        x: std::array::from_fn(|i| i),
        y: std::array::from_fn(|i| 7 + i),
        z: std::array::from_fn(|i| 14 + i),
    };
    let names = ["x", "y", "z"]
        .iter()
        .flat_map(|p| (0..7).map(move |i| format!("{p}{i}")))
        .collect();
    let (x, y, z) = (&labels.x, &labels.y, &labels.z);
    let mut edges = Vec::with_capacity(35);
    for i in 0..7 {
        let next = (i + 1) % 7;
        edges.push((x[i], x[next]));
        edges.push((x[i], y[i]));
        edges.push((y[i], z[i]));
        edges.push((z[i], y[next]));
        edges.push((z[i], z[(i + 3) % 7]));
    }
    let g = Graph::with_names(names, &edges).expect("the edge families are distinct");
    (g, labels)
}

/// `x, z ↦ 4`, `y ↦ 3`, degree 10.
pub fn g21_mu() -> Monomial {
    let mut values = vec![4; 21];
    values[7..14].fill(3);
    Monomial::new(values, 10)
}

/// `x, z ↦ 3/7`, `y ↦ 5/14`.
pub fn g21_nu() -> RationalVector {
    let mut values = vec![rational(3, 7); 21];
    values[7..14].fill(rational(5, 14));
    RationalVector(values)
}

/// One verified claim.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub check: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub const REPORT_VERSION: u32 = 1;

type Step<'a> = (&'a str, &'a dyn Fn() -> Result<(bool, Value)>);

/// Inputs of the harness; the default is the graph's own `μ` and `ν`.
#[derive(Clone, Debug)]
pub struct ReplicationInput {
    pub mu: Monomial,
    pub nu: RationalVector,
    pub options: DecomposeOptions,
}

impl Default for ReplicationInput {
    fn default() -> Self {
        ReplicationInput {
            mu: g21_mu(),
            nu: g21_nu(),
            options: DecomposeOptions::default(),
        }
    }
}

pub fn replicate_example() -> Report {
    replicate_example_with(&ReplicationInput::default())
}

/// Runs all six checks. Errors inside a check mark it failed and are
/// recorded under `detail.error`.
pub fn replicate_example_with(input: &ReplicationInput) -> Report {
    let (g, labels) = build_g21();
    let steps: [Step; 6] = [
        ("triangle_free", &|| triangle_free(&g)),
        ("five_cycles_meet_x_and_z", &|| five_cycles(&g, &labels)),
        ("mu_in_u2", &|| mu_in_u2(&g, &input.mu)),
        ("mu_not_sum_of_two_u1", &|| no_decomposition(&g, &input.mu, &input.options)),
        ("nu_in_hstab", &|| nu_in_hstab(&g, &input.nu)),
        ("nu_not_in_stab", &|| nu_not_in_stab(&g, &labels, &input.nu)),
    ];
    let checks = steps
        .iter()
        .map(|(name, run)| {
            let (passed, detail) = match run() {
                Ok(outcome) => outcome,
                Err(e) => (false, json!({ "error": e.to_string() })),
            };
            Check {
                check: name.to_string(),
                passed,
                detail,
            }
        })
        .collect();
    Report {
        version: REPORT_VERSION,
        checks,
    }
}

fn triangle_free(g: &Graph) -> Result<(bool, Value)> {
    let cliques = graph::maximal_cliques(g);
    let largest = cliques.iter().map(|k| k.len()).max().unwrap_or(0);
    Ok((
        graph::is_triangle_free(g),
        json!({ "maximal_cliques": cliques.len(), "largest_clique": largest }),
    ))
}

fn five_cycles(g: &Graph, labels: &G21Labels) -> Result<(bool, Value)> {
    let cycles = graph::chordless_odd_cycles_bounded(g, 5, 5);
    let in_family = |family: &[VertexId; 7], c: &Cycle| family.iter().filter(|&&v| c.contains(v)).count();
    let all_meet = cycles.iter().all(|c| {
        in_family(&labels.x, c) > 0 && in_family(&labels.z, c) > 0 && in_family(&labels.y, c) >= 2
    });
    let mut expected = labels.c_cycles();
    expected.sort();
    let exactly_c = cycles == expected;
    Ok((
        all_meet,
        json!({ "five_cycles": cycles.len(), "all_are_c_j": exactly_c }),
    ))
}

fn mu_in_u2(g: &Graph, mu: &Monomial) -> Result<(bool, Value)> {
    let member = lattice::u_membership(g, mu, 2)?;
    Ok((member, json!({ "deg": mu.deg(), "n": 2 })))
}

fn no_decomposition(g: &Graph, mu: &Monomial, options: &DecomposeOptions) -> Result<(bool, Value)> {
    let report = lattice::decompose_into_u1_with(g, mu, 2, options)?;
    let splits: Vec<String> = report
        .degree_splits
        .iter()
        .map(|s| s.iter().map(i64::to_string).collect::<Vec<_>>().join("+"))
        .collect();
    let found = report.parts.as_ref().map(|parts| {
        parts
            .iter()
            .map(|p| json!({ "values": p.values(), "deg": p.deg() }))
            .collect::<Vec<_>>()
    });
    Ok((
        report.parts.is_none(),
        json!({ "degree_splits": splits, "nodes": report.nodes, "decomposition": found }),
    ))
}

fn nu_in_hstab(g: &Graph, nu: &RationalVector) -> Result<(bool, Value)> {
    let system = polytope::hstab_system(g, true)?;
    let inside = system.contains(nu)?;
    let tight = system.tight_rows(nu)?;
    let tags: Vec<String> = tight.iter().map(|&i| system.rows()[i].tag().render(g.names())).collect();
    Ok((inside, json!({ "rows": system.rows().len(), "tight_rows": tags })))
}

fn nu_not_in_stab(g: &Graph, labels: &G21Labels, nu: &RationalVector) -> Result<(bool, Value)> {
    let mut witnesses = vec![labels.x.to_vec(), labels.z.to_vec()];
    witnesses.extend(labels.c_cycles().iter().map(|c| c.vertices().to_vec()));
    match certify_not_in_stab(g, nu, &witnesses)? {
        Certificate::NotInStab { stable_sets_examined } => Ok((
            true,
            json!({ "witnesses": witnesses.len(), "stable_sets_examined": stable_sets_examined }),
        )),
        Certificate::Inconclusive { surviving } => Ok((
            false,
            json!({ "witnesses": witnesses.len(), "surviving": surviving.len() }),
        )),
    }
}
