//! Exact rational H-descriptions of the stable set relaxations and the
//! polyhedral machinery built on them: vertex enumeration, redundancy
//! removal, interior tests and convex-hull membership.
//!
//! No floating point is used anywhere below this module.

mod dd;
mod hull;
mod lp;
mod redundancy;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, Limits, VertexId};

pub use dd::{is_h_perfect, is_h_perfect_with, vertices, vertices_with, VRepresentation};
pub use hull::{certify_not_in_stab, in_convex_hull, Certificate};
pub use redundancy::{
    bounding_box, is_full_dimensional, relint_contains, remove_redundant, RelativeInterior,
};

pub type Rational = BigRational;

/// Default cap on the ambient dimension for vertex enumeration.
pub const MAX_VERTEX_ENUM_DIMENSION: usize = 12;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats a rational as `p/q`, always including the denominator.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a plain integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidParameter(format!("`{s}` is not a rational of the form p/q"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A point with exact rational coordinates, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalVector(pub Vec<Rational>);

#[derive(Serialize, Deserialize)]
struct RationalVectorFile {
    values: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawEntry {
    Text(String),
    Integer(i64),
}

#[derive(Deserialize)]
struct RawVectorFile {
    values: BTreeMap<String, RawEntry>,
}

impl RationalVector {
    pub fn zeros(n: usize) -> Self {
        RationalVector(vec![Rational::zero(); n])
    }

    pub fn from_integers(values: &[i64]) -> Self {
        RationalVector(values.iter().map(|&v| int(v)).collect())
    }

    /// Characteristic vector of `set` in dimension `n`.
    pub fn indicator(n: usize, set: &[VertexId]) -> Self {
        let mut v = Self::zeros(n);
        for &i in set {
            v.0[i] = Rational::one();
        }
        v
    }

    pub fn constant(n: usize, value: Rational) -> Self {
        RationalVector(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the coordinates in `set`, the `f⁺(set)` of the stable set
    /// literature.
    pub fn sum_over(&self, set: &[VertexId]) -> Rational {
        set.iter().fold(Rational::zero(), |acc, &v| acc + &self.0[v])
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    pub fn is_binary(&self) -> bool {
        self.0.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn to_json(&self, names: &[String]) -> Result<String> {
        if names.len() != self.len() {
            return Err(Error::DimensionMismatch {
                expected: names.len(),
                actual: self.len(),
            });
        }
        let file = RationalVectorFile {
            values: names
                .iter()
                .cloned()
                .zip(self.0.iter().map(format_rational))
                .collect(),
        };
        Ok(serde_json::to_string(&file)?)
    }

    /// Reads `{"values": {"name": "p/q"}}`; every name must be present.
    /// Plain JSON integers are accepted as entries too.
    pub fn from_json(text: &str, names: &[String]) -> Result<Self> {
        let file: RawVectorFile = serde_json::from_str(text)?;
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let raw = file
                .values
                .get(name)
                .ok_or_else(|| Error::InvalidParameter(format!("missing value for `{name}`")))?;
            out.push(match raw {
                RawEntry::Text(t) => parse_rational(t)?,
                RawEntry::Integer(v) => int(*v),
            });
        }
        if let Some(extra) = file.values.keys().find(|k| !names.contains(k)) {
            return Err(Error::UnknownVertex(extra.clone()));
        }
        Ok(RationalVector(out))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Where a row of a [`HalfspaceSystem`] came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowTag {
    Nonnegative(VertexId),
    UpperBound(VertexId),
    Clique(Vec<VertexId>),
    OddCycle(Vec<VertexId>),
    Custom,
}

impl RowTag {
    pub fn render(&self, names: &[String]) -> String {
        let list = |ids: &[VertexId]| {
            ids.iter()
                .map(|&v| names[v].as_str())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            RowTag::Nonnegative(v) => format!("nonneg:{}", names[*v]),
            RowTag::UpperBound(v) => format!("upper:{}", names[*v]),
            RowTag::Clique(k) => format!("clique:{}", list(k)),
            RowTag::OddCycle(c) => format!("cycle:{}", list(c)),
            RowTag::Custom => "custom".into(),
        }
    }

    fn parse(text: &str, names: &[String]) -> Result<Self> {
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };
        let list = |s: &str| s.split(',').map(lookup).collect::<Result<Vec<_>>>();
        Ok(match text.split_once(':') {
            Some(("nonneg", v)) => RowTag::Nonnegative(lookup(v)?),
            Some(("upper", v)) => RowTag::UpperBound(lookup(v)?),
            Some(("clique", k)) => RowTag::Clique(list(k)?),
            Some(("cycle", c)) => RowTag::OddCycle(list(c)?),
            _ => RowTag::Custom,
        })
    }
}

/// One inequality `coeffs · x <= bound`.
#[derive(Clone, Debug)]
pub struct Row {
    coeffs: Vec<Rational>,
    bound: Rational,
    tag: RowTag,
    scaled: ScaledRow,
}

impl PartialEq for Row {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.bound == other.bound && self.tag == other.tag
    }
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, bound: Rational, tag: RowTag) -> Self {
        let scaled = ScaledRow::new(&coeffs, &bound);
        Row {
            coeffs,
            bound,
            tag,
            scaled,
        }
    }

    /// `Σ_{v in set} x_v <= bound`.
    pub fn sum_at_most(dim: usize, set: &[VertexId], bound: Rational, tag: RowTag) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        for &v in set {
            coeffs[v] = Rational::one();
        }
        Row::new(coeffs, bound, tag)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn tag(&self) -> &RowTag {
        &self.tag
    }

    pub fn lhs(&self, p: &RationalVector) -> Rational {
        self.coeffs
            .iter()
            .zip(&p.0)
            .filter(|(a, _)| !a.is_zero())
            .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
    }

    /// Ordering of `coeffs · p` against `bound`.
    pub(crate) fn compare(&self, p: &ScaledPoint) -> Ordering {
        self.scaled.compare(p)
    }

    pub(crate) fn scaled(&self) -> &ScaledRow {
        &self.scaled
    }
}

/// A row multiplied through by the common denominator of its entries.
#[derive(Clone, Debug)]
pub(crate) struct ScaledRow {
    coeffs: Vec<BigInt>,
    bound: BigInt,
    small: Option<(Vec<i64>, i64)>,
}

const SMALL_LIMIT: i64 = 1 << 31;

fn fits_small(x: &BigInt) -> Option<i64> {
    x.to_i64().filter(|v| v.abs() < SMALL_LIMIT)
}

impl ScaledRow {
    fn new(coeffs: &[Rational], bound: &Rational) -> Self {
        let den = coeffs
            .iter()
            .chain(std::iter::once(bound))
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &Rational| r.numer() * (&den / r.denom());
        let coeffs: Vec<BigInt> = coeffs.iter().map(scale).collect();
        let bound = scale(bound);
        let small = coeffs
            .iter()
            .map(fits_small)
            .collect::<Option<Vec<_>>>()
            .zip(fits_small(&bound));
        ScaledRow {
            coeffs,
            bound,
            small,
        }
    }

    pub(crate) fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub(crate) fn bound(&self) -> &BigInt {
        &self.bound
    }

    fn compare(&self, p: &ScaledPoint) -> Ordering {
        if let (Some((a, b)), Some((x, d))) = (&self.small, &p.small) {
            let lhs: i128 = a
                .iter()
                .zip(x)
                .map(|(&ai, &xi)| ai as i128 * xi as i128)
                .sum();
            return lhs.cmp(&(*b as i128 * *d as i128));
        }
        let lhs: BigInt = self
            .coeffs
            .iter()
            .zip(&p.nums)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, x)| a * x)
            .sum();
        lhs.cmp(&(&self.bound * &p.den))
    }
}

/// A point written as integer numerators over one positive denominator.
#[derive(Clone, Debug)]
pub(crate) struct ScaledPoint {
    nums: Vec<BigInt>,
    den: BigInt,
    small: Option<(Vec<i64>, i64)>,
}

impl ScaledPoint {
    pub(crate) fn new(p: &RationalVector) -> Self {
        let den = p.0.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let nums: Vec<BigInt> = p.0.iter().map(|r| r.numer() * (&den / r.denom())).collect();
        Self::from_parts(nums, den)
    }

    pub(crate) fn from_parts(nums: Vec<BigInt>, den: BigInt) -> Self {
        let small = nums
            .iter()
            .map(fits_small)
            .collect::<Option<Vec<_>>>()
            .zip(fits_small(&den));
        ScaledPoint { nums, den, small }
    }
}

/// A list of exact inequalities `a · x <= b` over coordinates labelled by
/// vertex names.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfspaceSystem {
    labels: Vec<String>,
    rows: Vec<Row>,
}

#[derive(Serialize, Deserialize)]
struct RowFile {
    coeffs: BTreeMap<String, String>,
    bound: String,
    tag: String,
}

impl HalfspaceSystem {
    pub fn new(labels: Vec<String>) -> Self {
        HalfspaceSystem {
            labels,
            rows: Vec::new(),
        }
    }

    pub fn with_dimension(dim: usize) -> Self {
        Self::new((0..dim).map(|i| i.to_string()).collect())
    }

    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn push(&mut self, row: Row) -> Result<()> {
        if row.coeffs.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: row.coeffs.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub(crate) fn subsystem(&self, keep: impl Fn(usize) -> bool) -> Self {
        HalfspaceSystem {
            labels: self.labels.clone(),
            rows: self
                .rows
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, r)| r.clone())
                .collect(),
        }
    }

    fn check_dim(&self, p: &RationalVector) -> Result<()> {
        if p.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: p.len(),
            });
        }
        Ok(())
    }

    /// True iff `p` satisfies every row.
    pub fn contains(&self, p: &RationalVector) -> Result<bool> {
        self.check_dim(p)?;
        let sp = ScaledPoint::new(p);
        Ok(self.rows.iter().all(|r| r.compare(&sp) != Ordering::Greater))
    }

    /// True iff `p` satisfies every row strictly.
    pub fn strictly_contains(&self, p: &RationalVector) -> Result<bool> {
        self.check_dim(p)?;
        let sp = ScaledPoint::new(p);
        Ok(self.rows.iter().all(|r| r.compare(&sp) == Ordering::Less))
    }

    /// Indices of the rows that hold with equality at `p`.
    pub fn tight_rows(&self, p: &RationalVector) -> Result<Vec<usize>> {
        self.check_dim(p)?;
        let sp = ScaledPoint::new(p);
        Ok(self
            .rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.compare(&sp) == Ordering::Equal)
            .map(|(i, _)| i)
            .collect())
    }

    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<RowFile> = self
            .rows
            .iter()
            .map(|r| RowFile {
                coeffs: self
                    .labels
                    .iter()
                    .zip(&r.coeffs)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(n, c)| (n.clone(), format_rational(c)))
                    .collect(),
                bound: format_rational(&r.bound),
                tag: r.tag.render(&self.labels),
            })
            .collect();
        Ok(serde_json::to_string(&rows)?)
    }

    pub fn from_json(text: &str, labels: Vec<String>) -> Result<Self> {
        let raw: Vec<RowFile> = serde_json::from_str(text)?;
        let mut system = HalfspaceSystem::new(labels);
        for row in raw {
            let mut coeffs = vec![Rational::zero(); system.dimension()];
            for (name, value) in &row.coeffs {
                let idx = system
                    .labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
                coeffs[idx] = parse_rational(value)?;
            }
            let tag = RowTag::parse(&row.tag, &system.labels)?;
            system.push(Row::new(coeffs, parse_rational(&row.bound)?, tag))?;
        }
        Ok(system)
    }
}

fn nonnegativity_rows(g: &Graph, system: &mut HalfspaceSystem) {
    let n = g.vertex_count();
    for v in g.vertices() {
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[v] = -Rational::one();
        system.rows.push(Row::new(coeffs, Rational::zero(), RowTag::Nonnegative(v)));
    }
}

fn odd_cycle_bound(len: usize) -> Rational {
    int(((len - 1) / 2) as i64)
}

/// The clique/odd-cycle relaxation HSTAB(G).
///
/// With `reduced`, only maximal cliques and chordless odd cycles of length
/// at least 5 contribute rows; this describes the same point set as the
/// full variant over every clique and every odd cycle.
pub fn hstab_system(g: &Graph, reduced: bool) -> Result<HalfspaceSystem> {
    hstab_system_with(g, reduced, &Limits::default())
}

pub fn hstab_system_with(g: &Graph, reduced: bool, limits: &Limits) -> Result<HalfspaceSystem> {
    let n = g.vertex_count();
    let mut system = HalfspaceSystem::new(g.names().to_vec());
    nonnegativity_rows(g, &mut system);
    let (cliques, cycles) = if reduced {
        (graph::maximal_cliques(g), graph::chordless_odd_cycles(g, 5))
    } else {
        (
            graph::all_cliques_with(g, limits)?,
            graph::all_odd_cycles_with(g, limits)?,
        )
    };
    for k in cliques {
        system.rows.push(Row::sum_at_most(
            n,
            k.vertices(),
            Rational::one(),
            RowTag::Clique(k.vertices().to_vec()),
        ));
    }
    for c in cycles {
        system.rows.push(Row::sum_at_most(
            n,
            c.vertices(),
            odd_cycle_bound(c.len()),
            RowTag::OddCycle(c.vertices().to_vec()),
        ));
    }
    Ok(system)
}

/// TSTAB(G): `0 <= x <= 1`, edge rows and a row for every odd cycle.
pub fn tstab_system(g: &Graph) -> Result<HalfspaceSystem> {
    let n = g.vertex_count();
    let cycles = graph::all_odd_cycles(g)?;
    let mut system = HalfspaceSystem::new(g.names().to_vec());
    nonnegativity_rows(g, &mut system);
    for v in g.vertices() {
        system
            .rows
            .push(Row::sum_at_most(n, &[v], Rational::one(), RowTag::UpperBound(v)));
    }
    for &(u, v) in g.edges() {
        system.rows.push(Row::sum_at_most(
            n,
            &[u, v],
            Rational::one(),
            RowTag::Clique(vec![u, v]),
        ));
    }
    for c in cycles {
        system.rows.push(Row::sum_at_most(
            n,
            c.vertices(),
            odd_cycle_bound(c.len()),
            RowTag::OddCycle(c.vertices().to_vec()),
        ));
    }
    Ok(system)
}

/// QSTAB(G): nonnegativity plus one row per maximal clique.
pub fn qstab_system(g: &Graph) -> Result<HalfspaceSystem> {
    let n = g.vertex_count();
    let mut system = HalfspaceSystem::new(g.names().to_vec());
    nonnegativity_rows(g, &mut system);
    for k in graph::maximal_cliques(g) {
        system.rows.push(Row::sum_at_most(
            n,
            k.vertices(),
            Rational::one(),
            RowTag::Clique(k.vertices().to_vec()),
        ));
    }
    Ok(system)
}

/// Alias of [`HalfspaceSystem::contains`].
pub fn contains(system: &HalfspaceSystem, p: &RationalVector) -> Result<bool> {
    system.contains(p)
}
