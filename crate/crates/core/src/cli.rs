//! Command-line front end. `run` parses arguments, writes results to the
//! given writer and returns the process exit code: 0 on success, 1 when a
//! yes/no query answers "no" under `--expect`, 2 on errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::ehrhart;
use crate::error::{Error, Result};
use crate::g21::{self, ReplicationInput};
use crate::graph::{self, Graph, GraphFormat, GraphKind, Limits, Poset};
use crate::lattice::{self, Branch, DecomposeOptions, LatticeConditions, Monomial, Variant, Witness};
use crate::polytope::{self, format_rational, HalfspaceSystem, RationalVector};

#[derive(Debug, Parser)]
#[command(name = "hstab", about = "Stable set relaxations of graphs and their Ehrhart rings")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Source {
    /// Built-in graph: cycle:N, complete:N, path:N, wheel:N, edgeless:N,
    /// bipartite:AxB, chain:N (comparability graph of a chain), g21.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    gen: Option<String>,

    /// Graph file.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Format of --input; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    format: Option<FileFormat>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FileFormat {
    #[value(name = "edge_list")]
    EdgeList,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Hstab,
    Tstab,
    Qstab,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Hstab => Variant::Hstab,
            VariantArg::Tstab => Variant::Tstab,
            VariantArg::Qstab => Variant::Qstab,
        }
    }
}

#[derive(Debug, Args)]
struct SystemArgs {
    /// Which relaxation to build.
    #[arg(long, value_enum, default_value = "hstab")]
    system: VariantArg,

    /// Use every clique and odd cycle instead of the reduced HSTAB rows.
    #[arg(long)]
    full_system: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximal cliques (or every clique with --all).
    Cliques {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        all: bool,
    },
    /// Chordless odd cycles of length at least --min-len (every odd cycle
    /// with --all).
    Holes {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5)]
        min_len: usize,
        #[arg(long)]
        all: bool,
    },
    /// All stable sets, the empty set included.
    StableSets {
        #[command(flatten)]
        source: Source,
    },
    /// Gorenstein criterion for the Ehrhart ring of the relaxation.
    Gorenstein {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "hstab")]
        variant: VariantArg,
        /// Also run the trace test.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        expect: bool,
    },
    /// Membership of a monomial in U^(n).
    Umember {
        #[command(flatten)]
        source: Source,
        /// Monomial file {"values": {name: int}, "deg": int}.
        #[arg(long)]
        mu: PathBuf,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_enum, default_value = "hstab")]
        variant: VariantArg,
        #[arg(long)]
        expect: bool,
    },
    /// Split a monomial into k monomials of U^(1).
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        mu: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        /// Disable pruning by constraints tight for the input.
        #[arg(long)]
        no_tight_pruning: bool,
        #[arg(long)]
        expect: bool,
    },
    /// Whether STAB equals HSTAB; with --point, whether the point lies in
    /// STAB, optionally certified from --witness sets.
    Hperfect {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        point: Option<PathBuf>,
        /// Comma-separated vertex names; repeatable.
        #[arg(long)]
        witness: Vec<String>,
        #[arg(long)]
        expect: bool,
    },
    /// Vertices of the relaxation; --facets prints the irredundant rows,
    /// --point tests membership of a point.
    Vertices {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, conflicts_with = "point")]
        facets: bool,
        #[arg(long)]
        point: Option<PathBuf>,
    },
    /// Lattice-point counts of dilates and the Ehrhart polynomial.
    Ehrhart {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        system: SystemArgs,
        /// Count dilates 0..=max-k (default: dimension + 2).
        #[arg(long)]
        max_k: Option<i64>,
    },
    /// δ-vector of a lattice relaxation.
    Delta {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Gorenstein property read off the δ-vector.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        expect: bool,
    },
    /// Re-establish the properties of the 21-vertex example graph.
    ReplicateExample {
        #[arg(long)]
        mu: Option<PathBuf>,
        #[arg(long)]
        nu: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
    },
}

/// Library operation names and the subcommand that exposes each.
pub const COMMAND_TABLE: &[(&str, &[&str])] = &[
    ("cliques", &["maximal_cliques", "all_cliques", "is_triangle_free"]),
    ("holes", &["chordless_odd_cycles", "all_odd_cycles"]),
    ("stable-sets", &["stable_sets"]),
    ("gorenstein", &["gorenstein_criterion", "trace_test"]),
    (
        "umember",
        &[
            "u_membership",
            "in_ehrhart_ring",
            "in_canonical_ideal",
            "symbolic_power_membership",
            "tu_membership",
            "qu_membership",
        ],
    ),
    ("decompose", &["decompose_into_u1"]),
    ("hperfect", &["is_h_perfect", "in_convex_hull", "certify_not_in_stab"]),
    (
        "vertices",
        &[
            "hstab_system",
            "tstab_system",
            "qstab_system",
            "vertices",
            "remove_redundant",
            "contains",
            "relint_contains",
        ],
    ),
    ("ehrhart", &["count_lattice_points", "ehrhart_polynomial"]),
    ("delta", &["delta_vector"]),
    ("oracle", &["gorenstein_oracle"]),
    ("replicate-example", &["g21_mu", "g21_nu", "replicate_example"]),
];

/// Operations behind the shared `--gen` / `--input` graph options.
pub const GRAPH_SOURCE_OPS: &[&str] = &["parse_graph", "generate", "build_g21"];

/// Subcommand names as clap knows them.
pub fn subcommand_names() -> Vec<String> {
    use clap::CommandFactory;
    Cli::command()
        .get_subcommands()
        .map(|c| c.get_name().to_string())
        .collect()
}

pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(Outcome::Done) => 0,
        Ok(Outcome::Verdict(v)) => i32::from(!v),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

enum Outcome {
    Done,
    Verdict(bool),
}

fn emit(out: &mut dyn Write, json_mode: bool, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
    let rendered = if json_mode {
        serde_json::to_string(value)?
    } else {
        text()
    };
    writeln!(out, "{rendered}").map_err(|e| Error::InvalidParameter(format!("cannot write output: {e}")))
}

fn verdict(expect: bool, answer: bool) -> Outcome {
    if expect {
        Outcome::Verdict(answer)
    } else {
        Outcome::Done
    }
}

fn parse_gen(spec: &str) -> Result<Graph> {
    if spec == "g21" {
        return Ok(g21::build_g21().0);
    }
    let bad = || Error::InvalidParameter(format!("bad generator `{spec}`"));
    let (name, arg) = spec.split_once(':').ok_or_else(bad)?;
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let kind = match name {
        "cycle" => GraphKind::Cycle(num(arg)?),
        "complete" => GraphKind::Complete(num(arg)?),
        "path" => GraphKind::Path(num(arg)?),
        "wheel" => GraphKind::Wheel(num(arg)?),
        "edgeless" => GraphKind::Edgeless(num(arg)?),
        "chain" => GraphKind::Comparability(Poset::chain(num(arg)?)),
        "bipartite" => {
            let (a, b) = arg.split_once('x').ok_or_else(bad)?;
            GraphKind::CompleteBipartite(num(a)?, num(b)?)
        }
        _ => return Err(bad()),
    };
    graph::generate(&kind)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(source: &Source) -> Result<Graph> {
    if let Some(spec) = &source.gen {
        return parse_gen(spec);
    }
    let path = source.input.as_ref().expect("clap enforces a graph source");
    let format = match source.format {
        Some(FileFormat::Json) => GraphFormat::Json,
        Some(FileFormat::EdgeList) => GraphFormat::EdgeList,
        None if path.extension().is_some_and(|e| e == "json") => GraphFormat::Json,
        None => GraphFormat::EdgeList,
    };
    graph::parse_graph(&read(path)?, format)
}

fn build_system(g: &Graph, args: &SystemArgs) -> Result<HalfspaceSystem> {
    match args.system {
        VariantArg::Hstab => polytope::hstab_system(g, !args.full_system),
        VariantArg::Tstab => polytope::tstab_system(g),
        VariantArg::Qstab => polytope::qstab_system(g),
    }
}

fn names(g: &Graph, ids: &[usize]) -> Vec<String> {
    g.names_of(ids)
}

fn point_json(v: &RationalVector) -> Vec<String> {
    v.0.iter().map(format_rational).collect()
}

fn sets_text(sets: &[Vec<String>]) -> String {
    sets.iter()
        .map(|s| format!("{{{}}}", s.join(",")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    let json_mode = cli.json;
    match &cli.command {
        Command::Cliques { source, all } => {
            let g = load_graph(source)?;
            let cliques = if *all {
                graph::all_cliques(&g)?
            } else {
                graph::maximal_cliques(&g)
            };
            let sets: Vec<Vec<String>> = cliques.iter().map(|k| names(&g, k.vertices())).collect();
            let value = json!({ "cliques": sets, "triangle_free": graph::is_triangle_free(&g) });
            emit(out, json_mode, &value, || sets_text(&sets))?;
            Ok(Outcome::Done)
        }
        Command::Holes { source, min_len, all } => {
            let g = load_graph(source)?;
            let cycles = if *all {
                graph::all_odd_cycles(&g)?
            } else {
                graph::chordless_odd_cycles(&g, *min_len)
            };
            let sets: Vec<Vec<String>> = cycles.iter().map(|c| names(&g, c.vertices())).collect();
            emit(out, json_mode, &json!({ "cycles": sets }), || {
                sets.iter().map(|c| c.join(" ")).collect::<Vec<_>>().join("\n")
            })?;
            Ok(Outcome::Done)
        }
        Command::StableSets { source } => {
            let g = load_graph(source)?;
            let sets: Vec<Vec<String>> = graph::stable_sets_with(&g, &Limits::default())?
                .iter()
                .map(|s| names(&g, s))
                .collect();
            emit(out, json_mode, &json!({ "stable_sets": sets }), || sets_text(&sets))?;
            Ok(Outcome::Done)
        }
        Command::Gorenstein {
            source,
            variant,
            trace,
            expect,
        } => {
            let g = load_graph(source)?;
            let v = lattice::gorenstein_criterion(&g, (*variant).into());
            let mut value = json!({
                "variant": v.variant.as_str(),
                "gorenstein": v.gorenstein,
                "clique_sizes": v.clique_sizes,
            });
            if let Some(n) = v.n {
                value["n"] = json!(n);
            }
            if let Some(b) = v.branch {
                value["branch"] = json!(match b {
                    Branch::A => "a",
                    Branch::B => "b",
                    Branch::C => "c",
                });
            }
            match &v.witness {
                Some(Witness::Cycle(c)) => {
                    value["witness"] = json!({ "cycle": names(&g, c.vertices()), "cycle_len": c.len() });
                }
                Some(Witness::UnequalCliques { smaller, larger }) => {
                    value["witness"] = json!({
                        "smaller_clique": names(&g, smaller.vertices()),
                        "larger_clique": names(&g, larger.vertices()),
                    });
                }
                None => {}
            }
            if *trace {
                value["trace_test"] = json!(LatticeConditions::new(&g, v.variant).trace_test());
            }
            emit(out, json_mode, &value, || {
                let mut s = format!(
                    "{}: {}",
                    v.variant.as_str(),
                    if v.gorenstein { "Gorenstein" } else { "not Gorenstein" }
                );
                if let Some(b) = &value.get("branch") {
                    s.push_str(&format!(" (n = {}, branch {})", value["n"], b.as_str().unwrap_or("")));
                }
                if let Some(w) = value.get("witness") {
                    s.push_str(&format!("\nwitness: {w}"));
                }
                if let Some(t) = value.get("trace_test") {
                    s.push_str(&format!("\ntrace test: {t}"));
                }
                s
            })?;
            Ok(verdict(*expect, v.gorenstein))
        }
        Command::Umember {
            source,
            mu,
            n,
            variant,
            expect,
        } => {
            let g = load_graph(source)?;
            let mu = Monomial::from_json(&read(mu)?, g.names())?;
            let conditions = LatticeConditions::new(&g, (*variant).into());
            let violation = conditions.violation(&mu, *n)?;
            let member = violation.is_none();
            let mut value = json!({ "member": member, "n": n, "variant": conditions.variant().as_str() });
            if let Some(v) = &violation {
                value["violated"] = json!(match v {
                    lattice::Violation::Vertex(x) => format!("vertex:{}", g.name(*x)),
                    lattice::Violation::Clique(k) => format!("clique:{}", names(&g, k.vertices()).join(",")),
                    lattice::Violation::Cycle(c) => format!("cycle:{}", names(&g, c.vertices()).join(",")),
                });
            }
            emit(out, json_mode, &value, || {
                match value.get("violated") {
                    None => "true".to_string(),
                    Some(v) => format!("false (violates {})", v.as_str().unwrap_or("")),
                }
            })?;
            Ok(verdict(*expect, member))
        }
        Command::Decompose {
            source,
            mu,
            k,
            budget,
            no_tight_pruning,
            expect,
        } => {
            let g = load_graph(source)?;
            let mu = Monomial::from_json(&read(mu)?, g.names())?;
            let options = DecomposeOptions {
                budget: *budget,
                tight_pruning: !no_tight_pruning,
                first_degree: None,
            };
            let report = lattice::decompose_into_u1_with(&g, &mu, *k, &options)?;
            let parts: Option<Vec<Value>> = report.parts.as_ref().map(|parts| {
                parts
                    .iter()
                    .map(|p| {
                        let values: serde_json::Map<String, Value> = g
                            .names()
                            .iter()
                            .zip(p.values())
                            .map(|(name, v)| (name.clone(), json!(v)))
                            .collect();
                        json!({ "values": values, "deg": p.deg() })
                    })
                    .collect()
            });
            let value = json!({ "decomposable": parts.is_some(), "parts": parts, "nodes": report.nodes });
            emit(out, json_mode, &value, || match &report.parts {
                Some(parts) => parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n"),
                None => format!("no decomposition ({} nodes)", report.nodes),
            })?;
            Ok(verdict(*expect, report.parts.is_some()))
        }
        Command::Hperfect {
            source,
            point,
            witness,
            expect,
        } => {
            let g = load_graph(source)?;
            let Some(point) = point else {
                let answer = polytope::is_h_perfect(&g)?;
                emit(out, json_mode, &json!({ "h_perfect": answer }), || answer.to_string())?;
                return Ok(verdict(*expect, answer));
            };
            let p = RationalVector::from_json(&read(point)?, g.names())?;
            let chis: Vec<RationalVector> = graph::stable_sets(&g)?
                .iter()
                .map(|s| RationalVector::indicator(g.vertex_count(), s))
                .collect();
            let in_stab = polytope::in_convex_hull(&chis, &p)?;
            let mut value = json!({ "in_stab": in_stab });
            if !witness.is_empty() {
                let sets = witness
                    .iter()
                    .map(|w| {
                        w.split(',')
                            .map(|name| g.id_of(name.trim()).ok_or_else(|| Error::UnknownVertex(name.to_string())))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                value["certificate"] = match polytope::certify_not_in_stab(&g, &p, &sets)? {
                    polytope::Certificate::NotInStab { stable_sets_examined } => {
                        json!({ "not_in_stab": true, "stable_sets_examined": stable_sets_examined })
                    }
                    polytope::Certificate::Inconclusive { surviving } => {
                        json!({ "not_in_stab": false, "surviving": surviving.len() })
                    }
                };
            }
            emit(out, json_mode, &value, || value.to_string())?;
            Ok(verdict(*expect, in_stab))
        }
        Command::Vertices {
            source,
            system,
            facets,
            point,
        } => {
            let g = load_graph(source)?;
            let s = build_system(&g, system)?;
            if let Some(point) = point {
                let p = RationalVector::from_json(&read(point)?, g.names())?;
                let tight: Vec<String> = s
                    .tight_rows(&p)?
                    .iter()
                    .map(|&i| s.rows()[i].tag().render(g.names()))
                    .collect();
                let value = json!({
                    "contains": polytope::contains(&s, &p)?,
                    "relative_interior": polytope::relint_contains(&s, &p)?,
                    "tight_rows": tight,
                });
                emit(out, json_mode, &value, || value.to_string())?;
            } else if *facets {
                let reduced = polytope::remove_redundant(&s)?;
                let text = reduced.to_json()?;
                let value: Value = serde_json::from_str(&text)?;
                emit(out, json_mode, &value, || text.clone())?;
            } else {
                let verts = polytope::vertices(&s)?;
                let list: Vec<Vec<String>> = verts.vertices().iter().map(point_json).collect();
                let value = json!({ "vertices": list, "integral": verts.is_integral() });
                emit(out, json_mode, &value, || {
                    verts.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
                })?;
            }
            Ok(Outcome::Done)
        }
        Command::Ehrhart { source, system, max_k } => {
            let g = load_graph(source)?;
            let s = build_system(&g, system)?;
            let poly = ehrhart::ehrhart_polynomial(&s)?;
            let top = max_k.unwrap_or(poly.dimension as i64 + 2);
            let counts = (0..=top)
                .map(|k| ehrhart::count_lattice_points(&s, k))
                .collect::<Result<Vec<_>>>()?;
            let coefficients: Vec<String> = poly.coefficients.iter().map(format_rational).collect();
            let value = json!({ "L": counts, "coefficients": coefficients, "dimension": poly.dimension });
            emit(out, json_mode, &value, || {
                format!("L = {counts:?}\ncoefficients = [{}]", coefficients.join(", "))
            })?;
            Ok(Outcome::Done)
        }
        Command::Delta { source, system } => {
            let g = load_graph(source)?;
            let delta = ehrhart::delta_vector(&build_system(&g, system)?)?;
            let value = json!({ "delta": delta.coefficients, "normalized_volume": delta.normalized_volume() });
            emit(out, json_mode, &value, || format!("{:?}", delta.coefficients))?;
            Ok(Outcome::Done)
        }
        Command::Oracle { source, system, expect } => {
            let g = load_graph(source)?;
            let report = ehrhart::oracle_report(&build_system(&g, system)?)?;
            let value = serde_json::to_value(&report)?;
            emit(out, json_mode, &value, || {
                format!("delta = {:?}, palindromic = {}", report.delta, report.palindromic)
            })?;
            Ok(verdict(*expect, report.palindromic))
        }
        Command::ReplicateExample { mu, nu, budget } => {
            let (g, _) = g21::build_g21();
            let mut input = ReplicationInput::default();
            if let Some(path) = mu {
                input.mu = Monomial::from_json(&read(path)?, g.names())?;
            }
            if let Some(path) = nu {
                input.nu = RationalVector::from_json(&read(path)?, g.names())?;
            }
            input.options.budget = *budget;
            let report = g21::replicate_example_with(&input);
            let value = serde_json::to_value(&report)?;
            emit(out, json_mode, &value, || {
                report
                    .checks
                    .iter()
                    .map(|c| format!("{:<28} {}", c.check, if c.passed { "pass" } else { "FAIL" }))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok(if report.all_passed() {
                Outcome::Done
            } else {
                Outcome::Verdict(false)
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(std::iter::once("hstab").chain(args.iter().copied()), &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn table_matches_subcommands() {
        let mut table: Vec<&str> = COMMAND_TABLE.iter().map(|(c, _)| *c).collect();
        let mut actual = subcommand_names();
        table.sort_unstable();
        actual.sort();
        assert_eq!(table, actual);
        let mut ops: Vec<&str> = COMMAND_TABLE.iter().flat_map(|(_, ops)| ops.iter().copied()).collect();
        ops.extend(GRAPH_SOURCE_OPS);
        let before = ops.len();
        ops.sort_unstable();
        ops.dedup();
        assert_eq!(ops.len(), before, "an operation is listed twice");
    }

    #[test]
    fn gorenstein_cycles() {
        let (code, out) = run_capture(&["gorenstein", "--gen", "cycle:5", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!((v["gorenstein"].as_bool(), v["n"].as_u64(), v["branch"].as_str()), (Some(true), Some(2), Some("b")));

        let (code, out) = run_capture(&["gorenstein", "--gen", "cycle:7", "--json", "--expect"]);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["witness"]["cycle_len"], 7);
    }

    #[test]
    fn errors_exit_two() {
        assert_eq!(run_capture(&["gorenstein", "--gen", "nonsense:3"]).0, 2);
        assert_eq!(run_capture(&["gorenstein"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
    }

    #[test]
    fn generators() {
        for spec in ["bipartite:2x3", "edgeless:3", "wheel:5", "chain:4", "path:3", "complete:4", "g21"] {
            assert!(parse_gen(spec).is_ok(), "{spec}");
        }
        assert_eq!(parse_gen("bipartite:2x3").unwrap().edge_count(), 6);
    }
}
