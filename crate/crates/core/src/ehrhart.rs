//! Lattice-point counting in dilates of a polytope, its Ehrhart polynomial
//! and δ-vector, and the palindromicity test for the Gorenstein property.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{bounding_box, is_full_dimensional, vertices, HalfspaceSystem, Rational};

/// Cap on DFS nodes in a single count.
pub const MAX_COUNT_NODES: u64 = 2_000_000_000;

struct IntRow {
    coeffs: Vec<i64>,
    bound: i64,
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().filter(|v| v.abs() < 1 << 40).ok_or(Error::SizeLimitExceeded {
        what: "integer row entry magnitude",
        limit: 1 << 40,
        actual: usize::MAX,
    })
}

fn integer_rows(system: &HalfspaceSystem, k: i64) -> Result<Vec<IntRow>> {
    system
        .rows()
        .iter()
        .map(|row| {
            let s = row.scaled();
            Ok(IntRow {
                coeffs: s.coeffs().iter().map(to_i64).collect::<Result<_>>()?,
                bound: to_i64(s.bound())?
                    .checked_mul(k)
                    .ok_or(Error::InvalidParameter(format!("dilation factor {k} too large")))?,
            })
        })
        .collect()
}

fn floor_of(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

fn ceil_of(r: &Rational) -> BigInt {
    -((-r.numer()).div_floor(r.denom()))
}

/// Number of integer points in `k·S`.
///
/// Coordinates are fixed one at a time; before fixing coordinate `j`, each
/// row bounds it by its slack after the fixed coordinates and the smallest
/// possible contribution of the free ones (taken from the bounding box).
pub fn count_lattice_points(system: &HalfspaceSystem, k: i64) -> Result<u64> {
    let Some(bbox) = bounding_box(system)? else {
        return Ok(0);
    };
    count_in_box(system, &bbox, k)
}

/// Counting with a precomputed bounding box of `S` (not of `k·S`).
fn count_in_box(system: &HalfspaceSystem, bbox: &[(Rational, Rational)], k: i64) -> Result<u64> {
    if k < 0 {
        return Err(Error::InvalidParameter(format!("dilation factor {k} is negative")));
    }
    let d = system.dimension();
    let kk = Rational::from_integer(k.into());
    let mut lo = Vec::with_capacity(d);
    let mut hi = Vec::with_capacity(d);
    for (l, h) in bbox {
        lo.push(to_i64(&ceil_of(&(l * &kk)))?);
        hi.push(to_i64(&floor_of(&(h * &kk)))?);
    }
    if lo.iter().zip(&hi).any(|(l, h)| l > h) {
        return Ok(0);
    }
    let rows = integer_rows(system, k)?;
    // rest_min[r][j]: least value of Σ_{i >= j} a_ri x_i over the box
    let rest_min: Vec<Vec<i64>> = rows
        .iter()
        .map(|row| {
            let mut acc = vec![0i64; d + 1];
            for j in (0..d).rev() {
                let a = row.coeffs[j];
                acc[j] = acc[j + 1] + (a * lo[j]).min(a * hi[j]);
            }
            acc
        })
        .collect();
    let mut counter = Counter {
        rows: &rows,
        rest_min: &rest_min,
        lo: &lo,
        hi: &hi,
        partial: vec![0; rows.len()],
        nodes: 0,
        count: 0,
    };
    counter.dfs(0)?;
    Ok(counter.count)
}

struct Counter<'a> {
    rows: &'a [IntRow],
    rest_min: &'a [Vec<i64>],
    lo: &'a [i64],
    hi: &'a [i64],
    partial: Vec<i64>,
    nodes: u64,
    count: u64,
}

impl Counter<'_> {
    fn dfs(&mut self, j: usize) -> Result<()> {
        let d = self.lo.len();
        if j == d {
            self.count += 1;
            return Ok(());
        }
        self.nodes += 1;
        if self.nodes > MAX_COUNT_NODES {
            return Err(Error::SizeLimitExceeded {
                what: "lattice point search nodes",
                limit: MAX_COUNT_NODES as usize,
                actual: self.nodes as usize,
            });
        }
        let (mut low, mut high) = (self.lo[j], self.hi[j]);
        for (r, row) in self.rows.iter().enumerate() {
            let slack = row.bound - self.partial[r] - self.rest_min[r][j + 1];
            let a = row.coeffs[j];
            if a > 0 {
                high = high.min(slack.div_euclid(a));
            } else if a < 0 {
                low = low.max(-(slack.div_euclid(-a)));
            } else if slack < 0 {
                return Ok(());
            }
        }
        for x in low..=high {
            for (r, row) in self.rows.iter().enumerate() {
                self.partial[r] += row.coeffs[j] * x;
            }
            self.dfs(j + 1)?;
            for (r, row) in self.rows.iter().enumerate() {
                self.partial[r] -= row.coeffs[j] * x;
            }
        }
        Ok(())
    }
}

fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for cc in c..cols {
                let delta = &f * &rows[r][cc];
                rows[i][cc] -= delta;
            }
        }
        r += 1;
    }
    r
}

/// Checks the lattice-polytope precondition and returns the affine
/// dimension.
fn lattice_dimension(system: &HalfspaceSystem) -> Result<usize> {
    let verts = vertices(system)?;
    if let Some(v) = verts.vertices().iter().find(|v| !v.is_integral()) {
        return Err(Error::NotLatticePolytope(v.to_string()));
    }
    if verts.is_empty() {
        return Err(Error::PreconditionFailed("polytope is empty".into()));
    }
    if is_full_dimensional(system)? {
        return Ok(system.dimension());
    }
    let base = &verts.vertices()[0];
    let diffs = verts.vertices()[1..]
        .iter()
        .map(|v| v.0.iter().zip(&base.0).map(|(a, b)| a - b).collect())
        .collect();
    Ok(rank(diffs))
}

/// `L(k) = #(kP ∩ ℤ^d)` as an exact polynomial in `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EhrhartPolynomial {
    /// Affine dimension of the polytope, which is the degree of `L`.
    pub dimension: usize,
    /// Power-basis coefficients, constant term first.
    #[serde(serialize_with = "serialize_rationals")]
    pub coefficients: Vec<Rational>,
    /// Direct counts `L(0), …, L(d + 2)`; the last two validated the
    /// interpolation.
    pub counts: Vec<u64>,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::polytope::format_rational))
}

impl EhrhartPolynomial {
    pub fn evaluate(&self, k: i64) -> Rational {
        let x = Rational::from_integer(k.into());
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Power-basis coefficients of the degree-`d` polynomial through
/// `(k, values[k])` for `k = 0..=d`, via Newton forward differences.
fn interpolate(values: &[u64]) -> Vec<Rational> {
    let d = values.len() - 1;
    let mut diffs: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
    let mut leading = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        leading.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let mut coefficients = vec![Rational::zero(); d + 1];
    // falling factorial k(k-1)…(k-j+1) / j!, built incrementally
    let mut basis = vec![Rational::one()];
    for (j, delta) in leading.iter().enumerate() {
        let delta = Rational::from_integer(delta.clone());
        for (c, b) in coefficients.iter_mut().zip(&basis) {
            *c += &delta * b;
        }
        let shift = Rational::from_integer(BigInt::from(j));
        let scale = Rational::from_integer(BigInt::from(j + 1));
        let mut next = vec![Rational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &scale;
            next[i] -= &shift * b / &scale;
        }
        basis = next;
    }
    coefficients
}

/// The Ehrhart polynomial of a lattice polytope.
pub fn ehrhart_polynomial(system: &HalfspaceSystem) -> Result<EhrhartPolynomial> {
    let d = lattice_dimension(system)?;
    let bbox = bounding_box(system)?.ok_or_else(|| Error::PreconditionFailed("polytope is empty".into()))?;
    let counts = (0..=d as i64 + 2)
        .map(|k| count_in_box(system, &bbox, k))
        .collect::<Result<Vec<_>>>()?;
    let poly = EhrhartPolynomial {
        dimension: d,
        coefficients: interpolate(&counts[..=d]),
        counts,
    };
    for k in [d + 1, d + 2] {
        let predicted = poly.evaluate(k as i64);
        if predicted != Rational::from_integer(poly.counts[k].into()) {
            return Err(Error::ValidationFailed(format!(
                "L({k}) interpolates to {predicted} but {} points were counted",
                poly.counts[k]
            )));
        }
    }
    Ok(poly)
}

/// Numerator of the Ehrhart series `Σ L(k) t^k = δ(t) / (1-t)^{d+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaVector {
    pub coefficients: Vec<u64>,
}

impl DeltaVector {
    /// Coefficients up to the last nonzero one.
    pub fn trimmed(&self) -> &[u64] {
        let end = self.coefficients.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
        &self.coefficients[..end]
    }

    pub fn is_palindromic(&self) -> bool {
        let t = self.trimmed();
        t.iter().eq(t.iter().rev())
    }

    /// `Σ δ_i`, the normalized volume.
    pub fn normalized_volume(&self) -> u64 {
        self.coefficients.iter().sum()
    }
}

/// `δ_i = Σ_j (-1)^j C(d+1, j) L(i-j)` from the counts of an Ehrhart
/// polynomial of degree `d`.
pub fn delta_from_counts(counts: &[u64], d: usize) -> Result<DeltaVector> {
    let mut coefficients = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut acc: i128 = 0;
        for j in 0..=i {
            let term = binomial(d as u64 + 1, j as u64) * counts[i - j] as i128;
            acc += if j % 2 == 0 { term } else { -term };
        }
        if acc < 0 {
            return Err(Error::NegativeDelta {
                index: i,
                value: acc.to_string(),
            });
        }
        coefficients.push(acc as u64);
    }
    Ok(DeltaVector { coefficients })
}

pub fn delta_vector(system: &HalfspaceSystem) -> Result<DeltaVector> {
    let poly = ehrhart_polynomial(system)?;
    delta_from_counts(&poly.counts, poly.dimension)
}

/// Gorenstein property of the Ehrhart ring of a lattice polytope, read off
/// as palindromicity of its δ-vector.
pub fn gorenstein_oracle(system: &HalfspaceSystem) -> Result<bool> {
    Ok(delta_vector(system)?.is_palindromic())
}

/// Counts, δ-vector and verdict in one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    #[serde(rename = "L")]
    pub counts: Vec<u64>,
    pub delta: Vec<u64>,
    pub palindromic: bool,
}

pub fn oracle_report(system: &HalfspaceSystem) -> Result<OracleReport> {
    let poly = ehrhart_polynomial(system)?;
    let delta = delta_from_counts(&poly.counts, poly.dimension)?;
    Ok(OracleReport {
        palindromic: delta.is_palindromic(),
        counts: poly.counts,
        delta: delta.coefficients,
    })
}
