//! Acceptance criteria. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line; exits nonzero on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hstab::ehrhart::{count_lattice_points, delta_from_counts, ehrhart_polynomial, gorenstein_oracle};
use hstab::g21::replicate_example;
use hstab::graph::{generate, GraphKind};
use hstab::lattice::{gorenstein_criterion, trace_test, u_membership, LatticeConditions, Monomial, Variant};
use hstab::polytope::{
    hstab_system, is_h_perfect, rational, vertices, RationalVector, RelativeInterior,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_stable_sets, corpus, BruteU, Named};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn odd_cycle_theorem() -> Outcome {
    for (len, expected) in [(3, true), (5, true), (7, false), (9, false), (11, false)] {
        let g = generate(&GraphKind::Cycle(len)).map_err(|e| e.to_string())?;
        let got = gorenstein_criterion(&g, Variant::Hstab).gorenstein;
        ensure(got == expected, || format!("C{len}: criterion says {got}"))?;
    }
    Ok("C3, C5 Gorenstein; C7, C9, C11 not".into())
}

fn oracle_agreement(graphs: &[Named]) -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for Named { name, graph } in graphs {
        if !is_h_perfect(graph).map_err(|e| format!("{name}: {e}"))? {
            continue;
        }
        let system = hstab_system(graph, true).map_err(|e| e.to_string())?;
        let oracle = gorenstein_oracle(&system).map_err(|e| format!("{name}: {e}"))?;
        let criterion = gorenstein_criterion(graph, Variant::Hstab).gorenstein;
        checked += 1;
        if oracle != criterion {
            mismatches.push(format!("{name} (oracle {oracle}, criterion {criterion})"));
        }
    }
    ensure(mismatches.is_empty(), || format!("mismatches: {}", mismatches.join(", ")))?;
    Ok(format!("{checked} h-perfect graphs, 0 mismatches"))
}

fn trace_equivalence(graphs: &[Named]) -> Outcome {
    let mut gorenstein = 0;
    for Named { name, graph } in graphs {
        let criterion = gorenstein_criterion(graph, Variant::Hstab).gorenstein;
        let trace = trace_test(graph);
        ensure(trace == criterion, || format!("{name}: trace {trace}, criterion {criterion}"))?;
        ensure(criterion == common::brute_criterion(graph), || {
            format!("{name}: criterion disagrees with brute-force families")
        })?;
        gorenstein += usize::from(criterion);
    }
    Ok(format!("{} graphs ({gorenstein} Gorenstein), 0 mismatches", graphs.len()))
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> RationalVector {
    let q = rng.gen_range(1..=6i64);
    RationalVector((0..n).map(|_| rational(rng.gen_range(0..=q), q)).collect())
}

fn reduced_vs_full(graphs: &[Named]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut inside, mut outside, mut graphs_checked) = (0usize, 0usize, 0usize);
    for Named { name, graph } in graphs.iter().filter(|g| g.graph.vertex_count() <= 6) {
        let reduced = hstab_system(graph, true).map_err(|e| e.to_string())?;
        let full = hstab_system(graph, false).map_err(|e| e.to_string())?;
        let mut points: Vec<RationalVector> =
            (0..100).map(|_| random_point(&mut rng, graph.vertex_count())).collect();
        // vertices sit on many faces at once
        points.extend(vertices(&reduced).map_err(|e| e.to_string())?.into_vertices());
        for p in &points {
            let a = reduced.contains(p).map_err(|e| e.to_string())?;
            let b = full.contains(p).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{name}: {p} reduced {a}, full {b}"))?;
            if a {
                inside += 1;
            } else {
                outside += 1;
            }
        }
        graphs_checked += 1;
    }
    Ok(format!(
        "{graphs_checked} graphs, {} points ({inside} inside, {outside} outside), 0 mismatches",
        inside + outside
    ))
}

struct ProofVectors {
    n: usize,
    big: i64,
}

impl ProofVectors {
    fn mu1(&self) -> Monomial {
        Monomial::constant(self.n, 1, self.big)
    }

    fn mu2(&self, k: &[usize]) -> Monomial {
        let mut v = vec![1; self.n];
        k.iter().for_each(|&x| v[x] = self.big);
        Monomial::new(v, k.len() as i64 * self.big + 1)
    }

    fn mu3(&self, c: &[usize], c0: usize) -> Monomial {
        let len = c.len() as i64;
        let mut v = vec![1; self.n];
        c.iter().for_each(|&x| v[x] = self.big * (len - 1));
        v[c0] -= 1;
        Monomial::new(v, 2 * self.big * len)
    }

    fn mu4(&self) -> Monomial {
        Monomial::constant(self.n, -1, 0)
    }

    fn signed(&self, set: &[usize], pivot: usize) -> Monomial {
        let mut v = vec![-1; self.n];
        set.iter().for_each(|&x| v[x] = 0);
        v[pivot] = 1;
        Monomial::new(v, 0)
    }
}

fn proof_vectors(graphs: &[Named]) -> Outcome {
    let mut checks = 0usize;
    for Named { name, graph } in graphs {
        let brute = BruteU::new(graph);
        let pv = ProofVectors {
            n: graph.vertex_count(),
            big: graph.vertex_count() as i64 + 1,
        };
        let mut claim = |mu: &Monomial, n: i64, what: &str| -> Result<(), String> {
            let lib = u_membership(graph, mu, n).map_err(|e| e.to_string())?;
            let oracle = brute.contains(mu.values(), mu.deg(), n);
            checks += 1;
            ensure(lib && oracle, || format!("{name}: {what} {mu} in U^({n}): library {lib}, oracle {oracle}"))
        };
        claim(&pv.mu1(), 1, "mu1")?;
        claim(&pv.mu4(), -1, "mu4")?;
        for k in brute.cliques() {
            let mu2 = pv.mu2(k);
            claim(&mu2, 1, "mu2")?;
            ensure(mu2.sum_over(k) == mu2.deg() - 1, || format!("{name}: mu2 not tight on {k:?}"))?;
            for &k0 in k {
                let mu5 = pv.signed(k, k0);
                claim(&mu5, -1, "mu5")?;
                ensure(mu5.sum_over(k) == 1, || format!("{name}: mu5+(K) != 1"))?;
            }
        }
        for c in brute.holes() {
            for &c0 in c {
                let mu3 = pv.mu3(c, c0);
                claim(&mu3, 1, "mu3")?;
                let len = c.len() as i64;
                // μ₃⁺(C) = μ₃(-∞)(#C-1)/2 - 1, doubled
                ensure(2 * mu3.sum_over(c) == mu3.deg() * (len - 1) - 2, || {
                    format!("{name}: mu3 tightness fails on {c:?}")
                })?;
                let mu6 = pv.signed(c, c0);
                claim(&mu6, -1, "mu6")?;
                ensure(mu6.sum_over(c) == 1, || format!("{name}: mu6+(C) != 1"))?;
            }
        }
    }
    Ok(format!("{checks} membership claims over {} graphs, 0 mismatches", graphs.len()))
}

fn g21_replication() -> Outcome {
    let report = replicate_example();
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.check.as_str())
        .collect();
    ensure(report.checks.len() == 6 && failed.is_empty(), || {
        format!("failed checks: {failed:?}")
    })?;
    let nodes = &report.check("mu_not_sum_of_two_u1").unwrap().detail["nodes"];
    Ok(format!("6/6 checks pass; decomposition search exhausted after {nodes} nodes"))
}

fn counting_sanity(graphs: &[Named]) -> Outcome {
    let k2 = hstab_system(&generate(&GraphKind::Complete(2)).unwrap(), true).unwrap();
    for k in 0..=10u64 {
        let got = count_lattice_points(&k2, k as i64).map_err(|e| e.to_string())?;
        ensure(got == (k + 1) * (k + 2) / 2, || format!("L(K2, {k}) = {got}"))?;
    }
    let c5g = generate(&GraphKind::Cycle(5)).unwrap();
    let c5 = count_lattice_points(&hstab_system(&c5g, true).unwrap(), 1).map_err(|e| e.to_string())?;
    let stable = brute_stable_sets(&c5g).len() as u64;
    ensure(c5 == 11 && stable == 11, || format!("L(C5, 1) = {c5}, stable sets {stable}"))?;

    let mut lattice_inputs = 0;
    for Named { name, graph } in graphs {
        if !is_h_perfect(graph).map_err(|e| e.to_string())? {
            continue;
        }
        let system = hstab_system(graph, true).map_err(|e| e.to_string())?;
        let poly = ehrhart_polynomial(&system).map_err(|e| format!("{name}: {e}"))?;
        let delta = delta_from_counts(&poly.counts, poly.dimension).map_err(|e| format!("{name}: {e}"))?;
        let d = poly.dimension as u64;
        ensure(delta.coefficients[0] == 1, || format!("{name}: delta_0 = {}", delta.coefficients[0]))?;
        ensure(delta.coefficients[1] == poly.counts[1] - (d + 1), || {
            format!("{name}: delta_1 = {} but L(1) = {}", delta.coefficients[1], poly.counts[1])
        })?;
        ensure(poly.counts.windows(2).all(|w| w[0] <= w[1]), || format!("{name}: L not monotone"))?;
        ensure(poly.counts[1] == brute_stable_sets(graph).len() as u64, || {
            format!("{name}: L(1) differs from the stable set count")
        })?;
        lattice_inputs += 1;
    }
    Ok(format!(
        "K2 closed form for k <= 10, L(C5,1) = 11, {lattice_inputs} lattice polytopes with delta_0 = 1 and delta >= 0"
    ))
}

fn fractional_vertex() -> Outcome {
    let w5 = generate(&GraphKind::Wheel(5)).unwrap();
    let verts = vertices(&hstab_system(&w5, true).unwrap()).map_err(|e| e.to_string())?;
    let mut target = vec![rational(2, 5); 5];
    target.push(rational(1, 5));
    ensure(verts.contains_vertex(&RationalVector(target)), || "vertex missing".into())?;
    ensure(!is_h_perfect(&w5).map_err(|e| e.to_string())?, || "wheel(5) reported h-perfect".into())?;
    Ok(format!("{} vertices, (2/5,...,2/5,1/5) among them; not h-perfect", verts.len()))
}

fn interior_consistency(graphs: &[Named]) -> Outcome {
    let (mut members, mut total) = (0u64, 0u64);
    for Named { name, graph } in graphs.iter().filter(|g| g.graph.vertex_count() <= 5) {
        let n = graph.vertex_count();
        let interior = RelativeInterior::new(&hstab_system(graph, true).map_err(|e| e.to_string())?)
            .map_err(|e| format!("{name}: {e}"))?;
        let conditions = LatticeConditions::new(graph, Variant::Hstab);
        let mut values = vec![0i64; n];
        loop {
            for deg in 1..=4 {
                let mu = Monomial::new(values.clone(), deg);
                let lattice = conditions.contains(&mu, 1).map_err(|e| e.to_string())?;
                let geometric = interior.contains_ratio(&values, deg).map_err(|e| e.to_string())?;
                ensure(lattice == geometric, || {
                    format!("{name}: {mu}: U^(1) {lattice}, relative interior {geometric}")
                })?;
                members += u64::from(lattice);
                total += 1;
            }
            // odometer over {0..3}^n
            let Some(i) = values.iter().position(|&x| x < 3) else { break };
            values[..i].iter_mut().for_each(|x| *x = 0);
            values[i] += 1;
        }
    }
    Ok(format!("{total} monomials ({members} in U^(1)), 0 mismatches"))
}

type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let graphs = corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 odd-cycle theorem", Duration::from_secs(1), Box::new(odd_cycle_theorem)),
        ("2 oracle agreement", Duration::from_secs(600), Box::new(|| oracle_agreement(&graphs))),
        ("3 trace-test equivalence", Duration::from_secs(60), Box::new(|| trace_equivalence(&graphs))),
        ("4 reduced vs full system", Duration::from_secs(60), Box::new(|| reduced_vs_full(&graphs))),
        ("5 proof vectors", Duration::from_secs(60), Box::new(|| proof_vectors(&graphs))),
        ("6 G21 replication", Duration::from_secs(60), Box::new(g21_replication)),
        ("7 counting sanity", Duration::from_secs(60), Box::new(|| counting_sanity(&graphs))),
        ("8 fractional vertex", Duration::from_secs(5), Box::new(fractional_vertex)),
        ("9 interior consistency", Duration::from_secs(300), Box::new(|| interior_consistency(&graphs))),
    ];
    let mut all_passed = true;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= *limit {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {name}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                all_passed = false;
                println!("criterion {name}: FAIL ({elapsed:.2?}) {why}");
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
