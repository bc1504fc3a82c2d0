//! Vertex enumeration by the double description method.
//!
//! The polytope `{x : A x <= b}` is homogenized to the cone
//! `{(x, t) : b t - A x >= 0, t >= 0}`. Starting from the simplicial cone of
//! the first full-rank set of rows, the remaining rows are inserted one at a
//! time in index order. Two rays are combined only if they are adjacent,
//! decided by the rank of the rows tight at both. Rays are primitive integer
//! vectors throughout.

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::redundancy::bounding_box;
use super::{hstab_system, HalfspaceSystem, Rational, RationalVector, MAX_VERTEX_ENUM_DIMENSION};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRepresentation {
    vertices: Vec<RationalVector>,
}

impl VRepresentation {
    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: &RationalVector) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(RationalVector::is_integral)
    }

    pub fn into_vertices(self) -> Vec<RationalVector> {
        self.vertices
    }
}

struct Ray {
    coords: Vec<BigInt>,
    zeros: FixedBitSet,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x /= &g;
        }
    }
    v
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Rank of a set of integer rows, by fraction-free elimination.
fn rank(rows: &[&[BigInt]]) -> usize {
    let Some(first) = rows.first() else {
        return 0;
    };
    let cols = first.len();
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let (a, b) = (m[r][c].clone(), m[i][c].clone());
            for k in c..cols {
                let v = &m[i][k] * &a - &m[r][k] * &b;
                m[i][k] = v;
            }
            let reduced = primitive(std::mem::take(&mut m[i]));
            m[i] = reduced;
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves for the columns of `basis⁻¹`, each scaled to a primitive integer
/// vector (positive multiples of the true columns).
fn inverse_columns(basis: &[&[BigInt]]) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|x| Rational::from_integer(x.clone())).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !aug[i][c].is_zero())
            .expect("basis rows are linearly independent");
        aug.swap(c, p);
        let pivot = aug[c][c].clone();
        for v in aug[c].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &f * p;
            }
        }
    }
    (0..n)
        .map(|k| {
            let col: Vec<Rational> = (0..n).map(|i| aug[i][n + k].clone()).collect();
            let den = col.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            primitive(col.iter().map(|r| r.numer() * (&den / r.denom())).collect())
        })
        .collect()
}

/// All vertices of a bounded polyhedron, sorted and duplicate-free.
pub fn vertices(system: &HalfspaceSystem) -> Result<VRepresentation> {
    vertices_with(system, MAX_VERTEX_ENUM_DIMENSION)
}

pub fn vertices_with(system: &HalfspaceSystem, max_dimension: usize) -> Result<VRepresentation> {
    let d = system.dimension();
    if d > max_dimension {
        return Err(Error::SizeLimitExceeded {
            what: "vertex enumeration dimension",
            limit: max_dimension,
            actual: d,
        });
    }
    let width = d + 1;

    // row 0 is t >= 0, row i+1 is b_i t - a_i x >= 0
    let mut homogeneous: Vec<Vec<BigInt>> = Vec::with_capacity(system.rows().len() + 1);
    let mut t_row = vec![BigInt::zero(); width];
    t_row[d] = BigInt::one();
    homogeneous.push(t_row);
    for row in system.rows() {
        let scaled = row.scaled();
        let mut h: Vec<BigInt> = scaled.coeffs().iter().map(|a| -a).collect();
        h.push(scaled.bound().clone());
        homogeneous.push(h);
    }
    let total = homogeneous.len();

    let mut basis_rows: Vec<usize> = Vec::with_capacity(width);
    for i in 0..total {
        let mut trial: Vec<&[BigInt]> = basis_rows.iter().map(|&j| homogeneous[j].as_slice()).collect();
        trial.push(&homogeneous[i]);
        if rank(&trial) == trial.len() {
            basis_rows.push(i);
            if basis_rows.len() == width {
                break;
            }
        }
    }
    if basis_rows.len() < width {
        // a lineality space: either unbounded or empty
        return match bounding_box(system)? {
            None => Ok(VRepresentation { vertices: vec![] }),
            Some(_) => Err(Error::Unbounded),
        };
    }

    let basis: Vec<&[BigInt]> = basis_rows.iter().map(|&j| homogeneous[j].as_slice()).collect();
    let mut processed = FixedBitSet::with_capacity(total);
    for &j in &basis_rows {
        processed.insert(j);
    }
    let mut rays: Vec<Ray> = inverse_columns(&basis)
        .into_iter()
        .enumerate()
        .map(|(k, coords)| {
            let mut zeros = FixedBitSet::with_capacity(total);
            for (pos, &j) in basis_rows.iter().enumerate() {
                if pos != k {
                    zeros.insert(j);
                }
            }
            Ray { coords, zeros }
        })
        .collect();

    for h in 0..total {
        if processed.contains(h) {
            continue;
        }
        let row = &homogeneous[h];
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();

        let mut created = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let mut common = rays[p].zeros.clone();
                common.intersect_with(&rays[n].zeros);
                if common.count_ones(..) < width - 2 {
                    continue;
                }
                let tight: Vec<&[BigInt]> = common.ones().map(|j| homogeneous[j].as_slice()).collect();
                if rank(&tight) != width - 2 {
                    continue;
                }
                let (sp, sn) = (&values[p], &values[n]);
                let coords = rays[n]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(yn, yp)| sp * yn - sn * yp)
                    .collect();
                common.insert(h);
                created.push(Ray {
                    coords: primitive(coords),
                    zeros: common,
                });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (ray, value) in rays.into_iter().zip(&values) {
            if value.is_negative() {
                continue;
            }
            let mut ray = ray;
            if value.is_zero() {
                ray.zeros.insert(h);
            }
            next.push(ray);
        }
        next.extend(created);
        rays = next;
        processed.insert(h);
    }

    let mut out = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = &ray.coords[d];
        if !t.is_positive() {
            return Err(Error::Unbounded);
        }
        out.push(RationalVector(
            ray.coords[..d]
                .iter()
                .map(|x| Rational::new(x.clone(), t.clone()))
                .collect(),
        ));
    }
    out.sort();
    out.dedup();
    Ok(VRepresentation { vertices: out })
}

/// Whether HSTAB(G) equals STAB(G), i.e. every vertex of the reduced
/// clique/odd-cycle system is a 0/1 vector.
pub fn is_h_perfect(g: &Graph) -> Result<bool> {
    is_h_perfect_with(g, MAX_VERTEX_ENUM_DIMENSION)
}

pub fn is_h_perfect_with(g: &Graph, max_dimension: usize) -> Result<bool> {
    let system = hstab_system(g, true)?;
    Ok(vertices_with(&system, max_dimension)?.is_integral())
}
