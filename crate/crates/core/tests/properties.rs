mod common;

use hstab::ehrhart::gorenstein_oracle;
use hstab::graph::{chordless_odd_cycles, maximal_cliques, stable_sets, Graph};
use hstab::lattice::{
    decompose_into_u1, gorenstein_criterion, qu_membership, trace_test, tu_membership, u_membership,
    Monomial, Variant,
};
use hstab::polytope::{
    hstab_system, is_h_perfect, qstab_system, rational, remove_redundant, tstab_system, vertices,
    RationalVector,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_labeled_graphs, brute_holes, brute_maximal_cliques, brute_stable_sets, labeled_graph, BruteU};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u32..(1u32 << pairs.min(31)))
    })
    .prop_map(|(n, mask)| labeled_graph(n, mask))
}

fn graph_and_values(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = (Graph, Vec<i64>)> {
    graph_strategy(max_n).prop_flat_map(move |g| {
        let n = g.vertex_count();
        (Just(g), prop::collection::vec(lo..=hi, n))
    })
}

/// Smallest degree putting the values into `U^(n)`, if the vertex
/// conditions hold at all.
fn min_degree(g: &Graph, values: &[i64], n: i64) -> i64 {
    let brute = BruteU::new(g);
    let sum = |s: &[usize]| s.iter().map(|&v| values[v]).sum::<i64>();
    let from_cliques = brute.cliques().iter().map(|k| sum(k) + n).max().unwrap();
    let from_holes = brute
        .holes()
        .iter()
        .map(|c| {
            let len = c.len() as i64 - 1;
            // least d with d·len >= 2·sum + 2n
            (2 * sum(c) + 2 * n).div_euclid(len) + i64::from((2 * sum(c) + 2 * n).rem_euclid(len) != 0)
        })
        .max()
        .unwrap_or(i64::MIN);
    from_cliques.max(from_holes)
}

fn brute_two_part_decomposition(g: &Graph, mu: &Monomial) -> bool {
    let brute = BruteU::new(g);
    let n = mu.len();
    let mut part = vec![1i64; n];
    loop {
        let rest: Vec<i64> = mu.values().iter().zip(&part).map(|(a, b)| a - b).collect();
        if (1..mu.deg()).any(|d| brute.contains(&part, d, 1) && brute.contains(&rest, mu.deg() - d, 1)) {
            return true;
        }
        let Some(i) = (0..n).find(|&i| part[i] < mu.value(i) - 1) else {
            return false;
        };
        part[..i].iter_mut().for_each(|x| *x = 1);
        part[i] += 1;
    }
}

proptest! {
    #[test]
    fn maximal_cliques_match_brute_force(g in graph_strategy(8)) {
        let ours: Vec<Vec<usize>> = maximal_cliques(&g).iter().map(|k| k.vertices().to_vec()).collect();
        prop_assert_eq!(ours, brute_maximal_cliques(&g));
    }

    #[test]
    fn holes_match_brute_force(g in graph_strategy(8)) {
        let mut ours: Vec<Vec<usize>> = chordless_odd_cycles(&g, 5)
            .iter()
            .map(|c| {
                prop_assert!(c.is_cycle_in(&g) && c.is_chordless_in(&g));
                let mut vs = c.vertices().to_vec();
                vs.sort_unstable();
                Ok(vs)
            })
            .collect::<Result<_, _>>()?;
        ours.sort();
        let mut brute = brute_holes(&g, 5);
        brute.sort();
        prop_assert_eq!(ours, brute);
    }

    #[test]
    fn stable_sets_match_brute_force(g in graph_strategy(8)) {
        let mut ours = stable_sets(&g).unwrap();
        ours.sort();
        let mut brute = brute_stable_sets(&g);
        brute.sort();
        prop_assert_eq!(ours, brute);
    }

    #[test]
    fn membership_matches_definition(
        (g, values) in graph_and_values(7, -3, 5),
        deg in -3i64..=12,
        n in -3i64..=3,
    ) {
        let mu = Monomial::new(values.clone(), deg);
        prop_assert_eq!(u_membership(&g, &mu, n).unwrap(), BruteU::new(&g).contains(&values, deg, n));
    }

    #[test]
    fn additivity(
        (g, a) in graph_and_values(8, -3, 4),
        b_seed in prop::collection::vec(-3i64..=4, 8),
        n in -3i64..=3,
        m in -3i64..=3,
        extra in 0i64..3,
    ) {
        let k = g.vertex_count();
        let a: Vec<i64> = a.iter().map(|&x| x.max(n)).collect();
        let b: Vec<i64> = b_seed[..k].iter().map(|&x| x.max(m)).collect();
        let mu = Monomial::new(a.clone(), min_degree(&g, &a, n) + extra);
        let nu = Monomial::new(b.clone(), min_degree(&g, &b, m));
        prop_assert!(u_membership(&g, &mu, n).unwrap());
        prop_assert!(u_membership(&g, &nu, m).unwrap());
        prop_assert!(u_membership(&g, &(&mu + &nu), n + m).unwrap());
    }

    #[test]
    fn decompositions_are_sound(
        (g, values) in graph_and_values(6, 1, 4),
        deg in 2i64..=12,
        k in 1usize..=3,
    ) {
        let mu = Monomial::new(values, deg);
        if let Some(parts) = decompose_into_u1(&g, &mu, k).unwrap() {
            prop_assert_eq!(parts.len(), k);
            let total = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| &acc + p);
            prop_assert_eq!(&total, &mu);
            for p in &parts {
                prop_assert!(u_membership(&g, p, 1).unwrap());
            }
            prop_assert!(u_membership(&g, &mu, k as i64).unwrap());
        }
    }

    #[test]
    fn two_part_search_is_exhaustive(
        (g, values) in graph_and_values(4, 1, 4),
        deg in 2i64..=10,
    ) {
        let mu = Monomial::new(values, deg);
        let found = decompose_into_u1(&g, &mu, 2).unwrap().is_some();
        prop_assert_eq!(found, brute_two_part_decomposition(&g, &mu));
    }

    #[test]
    fn redundancy_removal_keeps_the_polytope(
        g in graph_strategy(6),
        seed in any::<u64>(),
    ) {
        let system = hstab_system(&g, true).unwrap();
        let facets = remove_redundant(&system).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let q = rng.gen_range(1..=5i64);
            let p = RationalVector((0..g.vertex_count()).map(|_| rational(rng.gen_range(0..=q), q)).collect());
            prop_assert_eq!(system.contains(&p).unwrap(), facets.contains(&p).unwrap());
        }
    }

    #[test]
    fn vertices_lie_on_enough_faces(g in graph_strategy(6)) {
        let system = hstab_system(&g, true).unwrap();
        for v in vertices(&system).unwrap().vertices() {
            prop_assert!(system.contains(v).unwrap());
            prop_assert!(system.tight_rows(v).unwrap().len() >= g.vertex_count());
        }
    }
}

#[test]
fn h_perfect_means_stable_set_vertices() {
    let mut graphs = all_labeled_graphs(4);
    graphs.extend_from_slice(&all_labeled_graphs(5)[..200]);
    graphs.push(hstab::graph::generate(&hstab::graph::GraphKind::Wheel(5)).unwrap());
    for g in &graphs {
        let verts = vertices(&hstab_system(g, true).unwrap()).unwrap();
        let mut chis: Vec<RationalVector> = brute_stable_sets(g)
            .iter()
            .map(|s| RationalVector::indicator(g.vertex_count(), s))
            .collect();
        chis.sort();
        assert_eq!(is_h_perfect(g).unwrap(), verts.vertices() == chis.as_slice());
    }
}

#[test]
fn hstab_inside_tstab_on_samples() {
    for g in all_labeled_graphs(5).iter().step_by(7) {
        let t = tstab_system(g).unwrap();
        for v in vertices(&hstab_system(g, true).unwrap()).unwrap().vertices() {
            assert!(t.contains(v).unwrap(), "{g:?}");
        }
    }
}

#[test]
fn tu_agrees_with_u_on_c5() {
    let g = hstab::graph::generate(&hstab::graph::GraphKind::Cycle(5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let mu = Monomial::new((0..5).map(|_| rng.gen_range(-2..=4)).collect(), rng.gen_range(-2..=12));
        let n = rng.gen_range(-2..=2);
        assert_eq!(tu_membership(&g, &mu, n).unwrap(), u_membership(&g, &mu, n).unwrap(), "{mu}");
    }
}

/// Exhaustive version of the trace test over a box of candidate `η`.
fn exhaustive_trace(g: &Graph) -> bool {
    let brute = BruteU::new(g);
    let n = g.vertex_count();
    let mut eta = vec![-1i64; n];
    loop {
        let neg: Vec<i64> = eta.iter().map(|x| -x).collect();
        if (-2..=8).any(|d| brute.contains(&eta, d, 1) && brute.contains(&neg, -d, -1)) {
            return true;
        }
        let Some(i) = eta.iter().position(|&x| x < 2) else {
            return false;
        };
        eta[..i].iter_mut().for_each(|x| *x = -1);
        eta[i] += 1;
    }
}

#[test]
fn trace_test_matches_exhaustive_search() {
    let mut graphs: Vec<Graph> = (1..=4).flat_map(all_labeled_graphs).collect();
    graphs.push(hstab::graph::generate(&hstab::graph::GraphKind::Cycle(5)).unwrap());
    graphs.push(hstab::graph::generate(&hstab::graph::GraphKind::Wheel(5)).unwrap());
    for g in &graphs {
        assert_eq!(trace_test(g), exhaustive_trace(g), "{g:?}");
    }
}

#[test]
fn relaxation_variants_against_the_oracle() {
    // t-perfect and perfect graphs on five vertices: the variant criteria
    // are compared with δ-palindromicity of the matching relaxation
    let (mut t_checked, mut q_checked) = (0, 0);
    for g in all_labeled_graphs(5) {
        let t = tstab_system(&g).unwrap();
        if vertices(&t).unwrap().is_integral() {
            assert_eq!(
                gorenstein_oracle(&t).unwrap(),
                gorenstein_criterion(&g, Variant::Tstab).gorenstein,
                "tstab {g:?}"
            );
            t_checked += 1;
        }
        let q = qstab_system(&g).unwrap();
        if vertices(&q).unwrap().is_integral() {
            assert_eq!(
                gorenstein_oracle(&q).unwrap(),
                gorenstein_criterion(&g, Variant::Qstab).gorenstein,
                "qstab {g:?}"
            );
            q_checked += 1;
        }
    }
    assert!(t_checked > 0 && q_checked > 0);
}

#[test]
fn qu_ignores_cycles() {
    let c7 = hstab::graph::generate(&hstab::graph::GraphKind::Cycle(7)).unwrap();
    // edges: 6 <= 7 - 1, cycle: 2·21 > 7·6 - 2
    let mu = Monomial::constant(7, 3, 7);
    assert!(qu_membership(&c7, &mu, 1).unwrap());
    assert!(!u_membership(&c7, &mu, 1).unwrap());
}
