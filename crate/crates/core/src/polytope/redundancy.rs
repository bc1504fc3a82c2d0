use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::lp::{maximize_over_inequalities, LpOutcome};
use super::{HalfspaceSystem, Rational, RationalVector, ScaledPoint};
use crate::error::{Error, Result};

fn row_refs(system: &HalfspaceSystem, skip: Option<usize>) -> Vec<(&[Rational], &Rational)> {
    system
        .rows()
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != skip)
        .map(|(_, r)| (r.coeffs(), r.bound()))
        .collect()
}

/// Coordinate-wise `(min, max)` over the polyhedron, or `None` if it is empty.
pub fn bounding_box(system: &HalfspaceSystem) -> Result<Option<Vec<(Rational, Rational)>>> {
    let d = system.dimension();
    let rows = row_refs(system, None);
    let mut out = Vec::with_capacity(d);
    for j in 0..d {
        let mut objective = vec![Rational::zero(); d];
        objective[j] = Rational::one();
        let hi = match maximize_over_inequalities(&objective, &rows) {
            LpOutcome::Optimal { value, .. } => value,
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        };
        objective[j] = -Rational::one();
        let lo = match maximize_over_inequalities(&objective, &rows) {
            LpOutcome::Optimal { value, .. } => -value,
            LpOutcome::Infeasible => return Ok(None),
            LpOutcome::Unbounded => return Err(Error::Unbounded),
        };
        out.push((lo, hi));
    }
    Ok(Some(out))
}

/// Whether some point satisfies every row strictly.
pub fn is_full_dimensional(system: &HalfspaceSystem) -> Result<bool> {
    let d = system.dimension();
    let mut lifted: Vec<(Vec<Rational>, Rational)> = Vec::new();
    for row in system.rows() {
        if row.coeffs().iter().all(Zero::is_zero) {
            if row.bound() < &Rational::zero() {
                return Ok(false);
            }
            continue;
        }
        let mut coeffs = row.coeffs().to_vec();
        coeffs.push(Rational::one());
        lifted.push((coeffs, row.bound().clone()));
    }
    let mut cap = vec![Rational::zero(); d + 1];
    cap[d] = Rational::one();
    lifted.push((cap.clone(), Rational::one()));
    let refs: Vec<(&[Rational], &Rational)> =
        lifted.iter().map(|(a, b)| (a.as_slice(), b)).collect();
    Ok(match maximize_over_inequalities(&cap, &refs) {
        LpOutcome::Optimal { value, .. } => value > Rational::zero(),
        LpOutcome::Infeasible => false,
        LpOutcome::Unbounded => unreachable!("slack variable is capped at one"),
    })
}

/// Drops rows implied by the others, scanning in row order.
///
/// Row `i` is redundant iff maximizing its left-hand side over the remaining
/// rows stays within its bound. Of several identical rows the last survives.
pub fn remove_redundant(system: &HalfspaceSystem) -> Result<HalfspaceSystem> {
    if bounding_box(system)?.is_none() {
        return Err(Error::PreconditionFailed("polyhedron is empty".into()));
    }
    let mut keep = vec![true; system.rows().len()];
    for (i, row) in system.rows().iter().enumerate() {
        let others: Vec<(&[Rational], &Rational)> = system
            .rows()
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && keep[*j])
            .map(|(_, r)| (r.coeffs(), r.bound()))
            .collect();
        let redundant = match maximize_over_inequalities(row.coeffs(), &others) {
            LpOutcome::Optimal { value, .. } => &value <= row.bound(),
            LpOutcome::Unbounded => false,
            LpOutcome::Infeasible => unreachable!("dropping a row cannot empty the polyhedron"),
        };
        if redundant {
            keep[i] = false;
        }
    }
    Ok(system.subsystem(|i| keep[i]))
}

/// The facet description of a full-dimensional polytope, for repeated
/// interior queries.
#[derive(Clone, Debug)]
pub struct RelativeInterior {
    facets: HalfspaceSystem,
}

impl RelativeInterior {
    pub fn new(system: &HalfspaceSystem) -> Result<Self> {
        if !is_full_dimensional(system)? {
            return Err(Error::NotFullDimensional);
        }
        Ok(RelativeInterior {
            facets: remove_redundant(system)?,
        })
    }

    pub fn facets(&self) -> &HalfspaceSystem {
        &self.facets
    }

    pub fn contains(&self, p: &RationalVector) -> Result<bool> {
        self.facets.strictly_contains(p)
    }

    /// Interior test for the point `numerators / denominator`, which must
    /// be positive.
    pub fn contains_ratio(&self, numerators: &[i64], denominator: i64) -> Result<bool> {
        if numerators.len() != self.facets.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.facets.dimension(),
                actual: numerators.len(),
            });
        }
        if denominator <= 0 {
            return Err(Error::InvalidParameter(format!(
                "denominator {denominator} is not positive"
            )));
        }
        let point = ScaledPoint::from_parts(
            numerators.iter().map(|&x| BigInt::from(x)).collect(),
            BigInt::from(denominator),
        );
        Ok(self
            .facets
            .rows()
            .iter()
            .all(|row| row.compare(&point) == Ordering::Less))
    }
}

/// True iff `p` lies strictly inside every facet of the polytope.
pub fn relint_contains(system: &HalfspaceSystem, p: &RationalVector) -> Result<bool> {
    RelativeInterior::new(system)?.contains(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind, Limits};
    use crate::polytope::{hstab_system, hstab_system_with, int, rational, Row, RowTag};

    fn unit_square(duplicate: bool) -> HalfspaceSystem {
        let mut s = HalfspaceSystem::with_dimension(2);
        let rows = [([-1, 0], 0), ([0, -1], 0), ([1, 0], 1), ([0, 1], 1)];
        for (a, b) in rows {
            s.push(Row::new(a.iter().map(|&v| int(v)).collect(), int(b), RowTag::Custom))
                .unwrap();
        }
        if duplicate {
            s.push(Row::new(vec![int(1), int(0)], int(1), RowTag::Custom))
                .unwrap();
        }
        s
    }

    #[test]
    fn full_k3_keeps_only_facets() {
        let k3 = generate(&GraphKind::Complete(3)).unwrap();
        let full = hstab_system_with(&k3, false, &Limits::default()).unwrap();
        let facets = remove_redundant(&full).unwrap();
        // 3 nonnegativity rows and the triangle row; singleton and edge rows
        // go. The triangle appears twice (clique and odd cycle), one copy stays.
        assert_eq!(facets.rows().len(), 4);
        assert!(facets
            .rows()
            .iter()
            .any(|r| r.coeffs().iter().all(|c| c == &int(1)) && r.bound() == &int(1)));
        assert!(!facets
            .rows()
            .iter()
            .any(|r| matches!(r.tag(), RowTag::Clique(k) if k.len() < 3)));
    }

    #[test]
    fn k2_is_already_irredundant() {
        let k2 = generate(&GraphKind::Complete(2)).unwrap();
        let s = hstab_system(&k2, true).unwrap();
        assert_eq!(remove_redundant(&s).unwrap(), s);
    }

    #[test]
    fn duplicate_row_removed() {
        let s = unit_square(true);
        let facets = remove_redundant(&s).unwrap();
        assert_eq!(facets.rows().len(), 4);
    }

    #[test]
    fn interval_interior() {
        let k1 = generate(&GraphKind::Complete(1)).unwrap();
        let s = hstab_system(&k1, true).unwrap();
        assert!(relint_contains(&s, &RationalVector(vec![rational(1, 2)])).unwrap());
        assert!(!relint_contains(&s, &RationalVector(vec![int(0)])).unwrap());
        let interior = RelativeInterior::new(&s).unwrap();
        assert!(interior.contains_ratio(&[1], 3).unwrap());
        assert!(!interior.contains_ratio(&[3], 3).unwrap());
        assert!(interior.contains_ratio(&[1], 0).is_err());
    }

    #[test]
    fn c5_uniform_point_is_on_the_boundary() {
        let c5 = generate(&GraphKind::Cycle(5)).unwrap();
        let s = hstab_system(&c5, true).unwrap();
        let p = RationalVector::constant(5, rational(2, 5));
        assert!(s.contains(&p).unwrap());
        assert!(!relint_contains(&s, &p).unwrap());
    }

    #[test]
    fn degenerate_systems() {
        let mut flat = HalfspaceSystem::with_dimension(1);
        flat.push(Row::new(vec![int(1)], int(0), RowTag::Custom)).unwrap();
        flat.push(Row::new(vec![int(-1)], int(0), RowTag::Custom)).unwrap();
        assert!(!is_full_dimensional(&flat).unwrap());
        assert!(matches!(
            relint_contains(&flat, &RationalVector(vec![int(0)])),
            Err(Error::NotFullDimensional)
        ));

        let mut ray = HalfspaceSystem::with_dimension(1);
        ray.push(Row::new(vec![int(-1)], int(0), RowTag::Custom)).unwrap();
        assert!(matches!(remove_redundant(&ray), Err(Error::Unbounded)));
    }

    #[test]
    fn box_of_the_square() {
        let b = bounding_box(&unit_square(false)).unwrap().unwrap();
        assert_eq!(b, vec![(int(0), int(1)), (int(0), int(1))]);
    }
}
