use num_traits::{One, Zero};

use super::lp::{LpOutcome, StandardLp};
use super::{Rational, RationalVector};
use crate::error::{Error, Result};
use crate::graph::{stable_sets, Graph, VertexSet};

/// Exact test of `target ∈ conv(points)`.
///
/// Solves the feasibility problem `Σ λ_j p_j = target, Σ λ_j = 1, λ >= 0`
/// with the rational simplex. An empty point list has an empty hull.
pub fn in_convex_hull(points: &[RationalVector], target: &RationalVector) -> Result<bool> {
    let d = target.len();
    if let Some(bad) = points.iter().find(|p| p.len() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: bad.len(),
        });
    }
    if points.is_empty() {
        return Ok(false);
    }
    let columns: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut col = p.0.clone();
            col.push(Rational::one());
            col
        })
        .collect();
    let mut rhs = target.0.clone();
    rhs.push(Rational::one());
    let objective = vec![Rational::zero(); points.len()];
    Ok(matches!(
        StandardLp::new(d + 1, columns, rhs, objective).solve(),
        LpOutcome::Optimal { .. }
    ))
}

/// Outcome of the tight-witness filtering argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// No stable set attains every witness maximum, so `p` has no convex
    /// representation by stable sets.
    NotInStab { stable_sets_examined: usize },
    /// These stable sets attain every witness maximum; the argument proves
    /// nothing.
    Inconclusive { surviving: Vec<VertexSet> },
}

/// Tries to prove `p ∉ STAB(G)` from witness sets `W` on which `p⁺(W)`
/// equals the largest `#(S ∩ W)` over stable sets `S`.
///
/// Any convex combination of stable sets equal to `p` must use only stable
/// sets attaining that maximum for every witness; if none does, `p` is
/// outside STAB(G).
pub fn certify_not_in_stab(
    g: &Graph,
    p: &RationalVector,
    witness_sets: &[VertexSet],
) -> Result<Certificate> {
    if p.len() != g.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: g.vertex_count(),
            actual: p.len(),
        });
    }
    let sets = stable_sets(g)?;
    let mut membership = vec![false; g.vertex_count()];
    let mut targets = Vec::with_capacity(witness_sets.len());
    for w in witness_sets {
        if let Some(&v) = w.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(Error::InvalidParameter(format!("witness vertex {v} out of range")));
        }
        membership.iter_mut().for_each(|m| *m = false);
        for &v in w {
            membership[v] = true;
        }
        let best = sets
            .iter()
            .map(|s| s.iter().filter(|&&v| membership[v]).count())
            .max()
            .unwrap_or(0);
        let weight = p.sum_over(w);
        if weight != Rational::from_integer(best.into()) {
            return Err(Error::PreconditionFailed(format!(
                "witness {:?} has weight {weight} but stable sets reach at most {best}",
                g.names_of(w)
            )));
        }
        targets.push((w, best));
    }
    let surviving: Vec<VertexSet> = sets
        .iter()
        .filter(|s| {
            targets
                .iter()
                .all(|(w, best)| s.iter().filter(|v| w.contains(v)).count() == *best)
        })
        .cloned()
        .collect();
    Ok(if surviving.is_empty() {
        Certificate::NotInStab {
            stable_sets_examined: sets.len(),
        }
    } else {
        Certificate::Inconclusive { surviving }
    })
}
