//! Exact two-phase revised simplex over the rationals.
//!
//! Standard form `max c·x, A x = b, x >= 0`. Pivoting follows Bland's rule
//! (lowest-index entering column, lowest-index leaving variable on ratio
//! ties), which rules out cycling. The basis inverse is kept explicitly; the
//! row counts here are small while column counts can reach the tens of
//! thousands, so pricing works on integer-scaled columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

struct Column {
    entries: Vec<(usize, Rational)>,
    // entries = scaled / scale, with scaled integral and scale > 0
    scaled: Vec<(usize, BigInt)>,
    scale: BigInt,
}

impl Column {
    fn new(dense: &[Rational]) -> Self {
        let entries: Vec<(usize, Rational)> = dense
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        let scale = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        let scaled = entries
            .iter()
            .map(|(i, v)| (*i, v.numer() * (&scale / v.denom())))
            .collect();
        Column {
            entries,
            scaled,
            scale,
        }
    }
}

pub(crate) struct StandardLp {
    rows: usize,
    columns: Vec<Column>,
    rhs: Vec<Rational>,
    objective: Vec<Rational>,
}

impl StandardLp {
    /// `columns[j]` is the dense column of variable `j`; rows with negative
    /// right-hand side are negated internally.
    pub(crate) fn new(
        rows: usize,
        columns: Vec<Vec<Rational>>,
        rhs: Vec<Rational>,
        objective: Vec<Rational>,
    ) -> Self {
        assert_eq!(rhs.len(), rows);
        assert_eq!(objective.len(), columns.len());
        let flip: Vec<bool> = rhs.iter().map(|b| b.is_negative()).collect();
        let columns = columns
            .into_iter()
            .map(|mut col| {
                assert_eq!(col.len(), rows);
                for (v, &f) in col.iter_mut().zip(&flip) {
                    if f {
                        *v = -v.clone();
                    }
                }
                Column::new(&col)
            })
            .collect();
        let rhs = rhs.into_iter().map(|b| b.abs()).collect();
        StandardLp {
            rows,
            columns,
            rhs,
            objective,
        }
    }

    pub(crate) fn solve(&self) -> LpOutcome {
        Tableau::new(self).run()
    }
}

struct Tableau<'a> {
    lp: &'a StandardLp,
    // variable ids: 0..n structural, n..n+m artificial (artificial i = e_i)
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    inverse: Vec<Vec<Rational>>,
    values: Vec<Rational>,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<'a> Tableau<'a> {
    fn new(lp: &'a StandardLp) -> Self {
        let m = lp.rows;
        let n = lp.columns.len();
        let mut inverse = vec![vec![Rational::zero(); m]; m];
        for (i, row) in inverse.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        let mut is_basic = vec![false; n + m];
        for flag in &mut is_basic[n..] {
            *flag = true;
        }
        Tableau {
            lp,
            basis: (n..n + m).collect(),
            is_basic,
            inverse,
            values: lp.rhs.clone(),
        }
    }

    fn structural(&self) -> usize {
        self.lp.columns.len()
    }

    fn cost(&self, var: usize, phase_one: bool) -> Rational {
        let n = self.structural();
        match (phase_one, var < n) {
            (true, true) => Rational::zero(),
            (true, false) => -Rational::one(),
            (false, true) => self.lp.objective[var].clone(),
            (false, false) => Rational::zero(),
        }
    }

    fn run(mut self) -> LpOutcome {
        let n = self.structural();
        if self.lp.rows > 0 {
            match self.iterate(true) {
                Step::Optimal => {}
                Step::Unbounded => unreachable!("phase one objective is bounded by zero"),
            }
            let infeasibility: Rational = self
                .basis
                .iter()
                .zip(&self.values)
                .filter(|(&var, _)| var >= n)
                .map(|(_, v)| v.clone())
                .sum();
            if infeasibility.is_positive() {
                return LpOutcome::Infeasible;
            }
            self.drive_out_artificials();
        }
        match self.iterate(false) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut x = vec![Rational::zero(); n];
                for (&var, v) in self.basis.iter().zip(&self.values) {
                    if var < n {
                        x[var] = v.clone();
                    }
                }
                let value = x
                    .iter()
                    .zip(&self.lp.objective)
                    .filter(|(v, _)| !v.is_zero())
                    .map(|(v, c)| v * c)
                    .sum();
                LpOutcome::Optimal { value, x }
            }
        }
    }

    fn duals(&self, phase_one: bool) -> Vec<Rational> {
        let m = self.lp.rows;
        let mut y = vec![Rational::zero(); m];
        for (pos, &var) in self.basis.iter().enumerate() {
            let c = self.cost(var, phase_one);
            if c.is_zero() {
                continue;
            }
            for (yj, inv) in y.iter_mut().zip(&self.inverse[pos]) {
                if !inv.is_zero() {
                    *yj += &c * inv;
                }
            }
        }
        y
    }

    /// Lowest-index nonbasic variable with positive reduced cost.
    fn entering(&self, phase_one: bool) -> Option<usize> {
        let y = self.duals(phase_one);
        let common = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let y_scaled: Vec<BigInt> = y.iter().map(|v| v.numer() * (&common / v.denom())).collect();
        let n = self.structural();
        for (j, col) in self.lp.columns.iter().enumerate() {
            if self.is_basic[j] {
                continue;
            }
            let t: BigInt = col
                .scaled
                .iter()
                .filter(|(i, _)| !y_scaled[*i].is_zero())
                .map(|(i, a)| &y_scaled[*i] * a)
                .sum();
            let c = self.cost(j, phase_one);
            let positive = if c.is_zero() {
                t.is_negative()
            } else {
                c > Rational::new(t, &common * &col.scale)
            };
            if positive {
                return Some(j);
            }
        }
        if phase_one {
            for i in 0..self.lp.rows {
                let var = n + i;
                if !self.is_basic[var] && -Rational::one() - &y[i] > Rational::zero() {
                    return Some(var);
                }
            }
        }
        None
    }

    fn column_image(&self, var: usize) -> Vec<Rational> {
        let n = self.structural();
        if var >= n {
            let i = var - n;
            return self.inverse.iter().map(|row| row[i].clone()).collect();
        }
        let col = &self.lp.columns[var];
        self.inverse
            .iter()
            .map(|row| {
                col.entries
                    .iter()
                    .filter(|(i, _)| !row[*i].is_zero())
                    .map(|(i, a)| &row[*i] * a)
                    .sum()
            })
            .collect()
    }

    fn iterate(&mut self, phase_one: bool) -> Step {
        loop {
            let Some(enter) = self.entering(phase_one) else {
                return Step::Optimal;
            };
            let u = self.column_image(enter);
            let mut leave: Option<(usize, Rational)> = None;
            for (pos, ui) in u.iter().enumerate() {
                if !ui.is_positive() {
                    continue;
                }
                let ratio = &self.values[pos] / ui;
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio
                            || (ratio == *best_ratio && self.basis[pos] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((pos, ratio));
                }
            }
            let Some((pos, _)) = leave else {
                return Step::Unbounded;
            };
            self.pivot(pos, enter, &u);
        }
    }

    fn pivot(&mut self, pos: usize, enter: usize, u: &[Rational]) {
        let pivot = u[pos].clone();
        for v in self.inverse[pos].iter_mut() {
            if !v.is_zero() {
                *v /= &pivot;
            }
        }
        self.values[pos] /= &pivot;
        let pivot_row = self.inverse[pos].clone();
        let pivot_value = self.values[pos].clone();
        for (i, ui) in u.iter().enumerate() {
            if i == pos || ui.is_zero() {
                continue;
            }
            for (v, p) in self.inverse[i].iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= ui * p;
                }
            }
            self.values[i] -= ui * &pivot_value;
        }
        let leaving = self.basis[pos];
        self.is_basic[leaving] = false;
        self.is_basic[enter] = true;
        self.basis[pos] = enter;
    }

    // Artificials left in the basis sit at value zero; swap them for any
    // structural column with a nonzero entry in their row. If none exists
    // the row is linearly dependent and the artificial stays at zero.
    fn drive_out_artificials(&mut self) {
        let n = self.structural();
        for pos in 0..self.lp.rows {
            if self.basis[pos] < n {
                continue;
            }
            let candidate = (0..n).find(|&j| {
                !self.is_basic[j]
                    && self.lp.columns[j]
                        .entries
                        .iter()
                        .any(|(i, a)| !(&self.inverse[pos][*i] * a).is_zero())
            });
            if let Some(j) = candidate {
                let u = self.column_image(j);
                if !u[pos].is_zero() {
                    self.pivot(pos, j, &u);
                }
            }
        }
    }
}

/// Maximizes `objective · x` over `{x free : rows[i].0 · x <= rows[i].1}`.
pub(crate) fn maximize_over_inequalities(
    objective: &[Rational],
    rows: &[(&[Rational], &Rational)],
) -> LpOutcome {
    let d = objective.len();
    let m = rows.len();
    // variables: x+ (d), x- (d), slack (m)
    let mut columns = Vec::with_capacity(2 * d + m);
    for sign in [1, -1] {
        for j in 0..d {
            columns.push(
                rows.iter()
                    .map(|(a, _)| if sign == 1 { a[j].clone() } else { -a[j].clone() })
                    .collect::<Vec<_>>(),
            );
        }
    }
    for i in 0..m {
        let mut col = vec![Rational::zero(); m];
        col[i] = Rational::one();
        columns.push(col);
    }
    let mut cost: Vec<Rational> = objective.to_vec();
    cost.extend(objective.iter().map(|c| -c.clone()));
    cost.extend(std::iter::repeat_n(Rational::zero(), m));
    let rhs = rows.iter().map(|(_, b)| (*b).clone()).collect();
    match StandardLp::new(m, columns, rhs, cost).solve() {
        LpOutcome::Optimal { value, x } => {
            let point = (0..d).map(|j| &x[j] - &x[d + j]).collect();
            LpOutcome::Optimal { value, x: point }
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{int, rational};

    fn row(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| int(v)).collect()
    }

    #[test]
    fn small_maximization() {
        // max x + y  s.t. x + 2y <= 4, 3x + y <= 6
        let a1 = row(&[1, 2]);
        let a2 = row(&[3, 1]);
        let (b1, b2) = (int(4), int(6));
        let out = maximize_over_inequalities(&row(&[1, 1]), &[(&a1, &b1), (&a2, &b2)]);
        match out {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rational(14, 5));
                assert_eq!(x, vec![rational(8, 5), rational(6, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn detects_unbounded_and_infeasible() {
        let a = row(&[-1]);
        let b = int(0);
        assert_eq!(
            maximize_over_inequalities(&row(&[1]), &[(&a, &b)]),
            LpOutcome::Unbounded
        );
        let up = row(&[1]);
        let down = row(&[-1]);
        let (b1, b2) = (int(1), int(-2));
        assert_eq!(
            maximize_over_inequalities(&row(&[1]), &[(&up, &b1), (&down, &b2)]),
            LpOutcome::Infeasible
        );
    }

    #[test]
    fn degenerate_problem_terminates() {
        // a classic cycling example for Dantzig's rule (Beale)
        let cols = vec![
            vec![rational(1, 4), rational(1, 2), int(0)],
            vec![int(-60), int(-90), int(0)],
            vec![rational(-1, 25), rational(-1, 50), int(1)],
            vec![int(9), int(3), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(1)],
        ];
        let cost = vec![
            rational(3, 4),
            int(-150),
            rational(1, 50),
            int(-6),
            int(0),
            int(0),
            int(0),
        ];
        let lp = StandardLp::new(3, cols, vec![int(0), int(0), int(1)], cost);
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rational(1, 20)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn redundant_equality_rows() {
        // x + y = 1 stated twice
        let cols = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        let lp = StandardLp::new(2, cols, vec![int(1), int(1)], vec![int(2), int(1)]);
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, int(2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
