//! Newton polygons of two-variable staircases and their limiting shapes.
//!
//! A polygon is stored as its lower-left boundary chain, from the vertex on
//! the y-axis to the vertex on the x-axis. The region it describes is
//! everything above and to the right of the chain inside the first quadrant.

use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cohomology::hilbert_function;
use crate::configuration::ConfigurationType;
use crate::error::{Error, Result};
use crate::staircase::{staircase_from_hilbert, Staircase};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p.trim().parse().ok()?, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `(b - a) x (c - a)`; positive when `c` lies to the left of `a -> b`.
fn cross(a: &Point, b: &Point, c: &Point) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<Point>,
}

impl RationalPolygon {
    /// Validates a boundary chain: starts on the y-axis, ends on the x-axis,
    /// strictly convex with x increasing and y decreasing.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidPolygon(msg));
        let (Some(first), Some(last)) = (vertices.first(), vertices.last()) else {
            return bad("no vertices".into());
        };
        if !first.x.is_zero() {
            return bad(format!("first vertex {first} is not on the y-axis"));
        }
        if !last.y.is_zero() {
            return bad(format!("last vertex {last} is not on the x-axis"));
        }
        if vertices.iter().any(|p| p.x.is_negative() || p.y.is_negative()) {
            return bad("vertices must lie in the first quadrant".into());
        }
        for (a, b) in vertices.iter().tuple_windows() {
            if a.x >= b.x || a.y <= b.y {
                return bad(format!("{a} -> {b} is not a down-right step"));
            }
        }
        for (a, b, c) in vertices.iter().tuple_windows() {
            if !cross(a, b, c).is_positive() {
                return bad(format!("{a}, {b}, {c} is not strictly convex"));
            }
        }
        Ok(RationalPolygon { vertices })
    }

    /// Lower-left convex hull of `points`, which must include a point on
    /// each axis. Points not on the chain, repeated and collinear points are
    /// dropped.
    pub fn hull(points: impl IntoIterator<Item = Point>) -> Result<Self> {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        // Keep, for each x, the lowest point, then only points strictly below
        // everything to their left.
        let mut staircase: Vec<Point> = Vec::new();
        for p in pts {
            match staircase.last() {
                Some(q) if q.x == p.x => continue,
                Some(q) if q.y <= p.y => continue,
                _ => staircase.push(p),
            }
        }
        let mut chain: Vec<Point> = Vec::new();
        for p in staircase {
            while chain.len() >= 2 {
                let n = chain.len();
                if cross(&chain[n - 2], &chain[n - 1], &p).is_positive() {
                    break;
                }
                chain.pop();
            }
            chain.push(p);
        }
        Self::new(chain)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn scale(&self, factor: &Rational) -> Result<Self> {
        if !factor.is_positive() {
            return Err(Error::InvalidPolygon(format!("scale factor {factor} must be positive")));
        }
        Ok(RationalPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(&p.x * factor, &p.y * factor))
                .collect(),
        })
    }

    /// Area between the chain and the coordinate axes.
    pub fn complement_area(&self) -> Rational {
        self.vertices
            .iter()
            .tuple_windows()
            .map(|(a, b)| (&b.x - &a.x) * (&a.y + &b.y) / int(2))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `(x-intercept, y-intercept)`.
    pub fn intercepts(&self) -> (Rational, Rational) {
        (
            self.vertices.last().expect("nonempty").x.clone(),
            self.vertices[0].y.clone(),
        )
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Whether `p` lies in the region above the chain.
    pub fn region_contains(&self, p: &Point) -> bool {
        if p.x.is_negative() || p.y.is_negative() {
            return false;
        }
        if self.vertices.len() == 1 {
            return true;
        }
        self.vertices
            .iter()
            .tuple_windows()
            .all(|(a, b)| !cross(a, b, p).is_negative())
    }

    /// Whether `p` lies on the boundary chain.
    pub fn on_boundary(&self, p: &Point) -> bool {
        self.vertices.iter().tuple_windows().any(|(a, b)| {
            cross(a, b, p).is_zero() && a.x <= p.x && p.x <= b.x
        }) || self.vertices.contains(p)
    }

    /// Region inclusion `inner ⊆ self`; both regions are upward closed so
    /// checking the vertices of `inner` suffices.
    pub fn contains(&self, inner: &RationalPolygon) -> bool {
        inner.vertices.iter().all(|p| self.region_contains(p))
    }
}

impl fmt::Display for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices.iter().join(" -- "))
    }
}

pub fn contains(outer: &RationalPolygon, inner: &RationalPolygon) -> bool {
    outer.contains(inner)
}

/// Serialized as a list of `["p/q", "p/q"]` pairs.
impl Serialize for RationalPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .vertices
            .iter()
            .map(|p| [p.x.to_string(), p.y.to_string()])
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPolygon {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let pairs: Vec<[String; 2]> = Vec::deserialize(d)?;
        let vertices = pairs
            .iter()
            .map(|[x, y]| {
                let px = parse_rational(x).ok_or_else(|| D::Error::custom(format!("bad rational {x:?}")))?;
                let py = parse_rational(y).ok_or_else(|| D::Error::custom(format!("bad rational {y:?}")))?;
                Ok(Point::new(px, py))
            })
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        RationalPolygon::new(vertices).map_err(D::Error::custom)
    }
}

/// Newton polygon of the staircase ideal: the hull of `(i, lambda_i)` and
/// `(alpha, 0)`.
pub fn newton_polytope(s: &Staircase) -> RationalPolygon {
    let points = s
        .minimal_generators()
        .into_iter()
        .map(|(i, j)| Point::from_ints(i as i64, j as i64));
    RationalPolygon::hull(points).expect("staircase generators span both axes")
}

pub fn scale(p: &RationalPolygon, factor: &Rational) -> Result<RationalPolygon> {
    p.scale(factor)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitReport {
    pub limit: RationalPolygon,
    /// Unscaled Newton polygons per multiplicity.
    pub samples: Vec<(u64, RationalPolygon)>,
    /// True when every tracked vertex is an exact affine function of `m`
    /// over the samples; `limit` then holds the slopes. Otherwise `limit`
    /// is the scaled polygon of the largest sample.
    pub exact: bool,
}

/// Newton polygon of the generic initial ideal of `I^(m)`.
pub fn newton_polytope_for(cfg: &ConfigurationType, m: u64) -> Result<RationalPolygon> {
    let table = hilbert_function(cfg, m)?;
    Ok(newton_polytope(&staircase_from_hilbert(&table)?))
}

const MAX_MATCHINGS: usize = 1 << 16;

pub fn limiting_shape(cfg: &ConfigurationType, m_list: &[u64]) -> Result<LimitReport> {
    if m_list.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "limit extrapolation needs at least 3 multiplicities, got {}",
            m_list.len()
        )));
    }
    if m_list.iter().any(|&m| m == 0) || !m_list.iter().all_unique() {
        return Err(Error::InsufficientData("multiplicities must be distinct and positive".into()));
    }
    let mut samples: Vec<(u64, RationalPolygon)> = m_list
        .par_iter()
        .map(|&m| newton_polytope_for(cfg, m).map(|p| (m, p)))
        .collect::<Result<_>>()?;
    samples.sort_by_key(|(m, _)| *m);
    Ok(limit_from_samples(samples))
}

/// Extrapolates `lim P_m / m` from unscaled polygons.
pub fn limit_from_samples(samples: Vec<(u64, RationalPolygon)>) -> LimitReport {
    match fit_vertex_families(&samples) {
        Some(limit) => LimitReport {
            limit,
            samples,
            exact: true,
        },
        None => {
            let (m, p) = samples.iter().max_by_key(|(m, _)| *m).expect("nonempty samples");
            let limit = p.scale(&int(*m as i64).recip()).expect("positive factor");
            LimitReport {
                limit,
                samples,
                exact: false,
            }
        }
    }
}

/// Vertex families are matched across samples by boundary position. A
/// sample with fewer vertices is assumed to have some adjacent families
/// coinciding, so every monotone surjection from the families onto its
/// vertices is tried until all families are affine in `m`.
///
/// The limit is the union of the nested `P_m / m`, so a fit that fails to
/// contain every scaled sample is a coincidence of the samples and rejected.
fn fit_vertex_families(samples: &[(u64, RationalPolygon)]) -> Option<RationalPolygon> {
    let families = samples.iter().map(|(_, p)| p.vertices().len()).max()?;
    let per_sample: Vec<Vec<Vec<usize>>> = samples
        .iter()
        .map(|(_, p)| monotone_surjections(families, p.vertices().len()))
        .collect();
    let total = per_sample
        .iter()
        .try_fold(1usize, |acc, v| acc.checked_mul(v.len()))?;
    if total == 0 || total > MAX_MATCHINGS {
        return None;
    }
    for choice in per_sample.iter().multi_cartesian_product() {
        if let Some(slopes) = affine_slopes(samples, &choice, families) {
            if let Ok(limit) = RationalPolygon::hull(slopes) {
                let covers = samples.iter().all(|(m, p)| {
                    p.scale(&int(*m as i64).recip()).is_ok_and(|q| limit.contains(&q))
                });
                if covers {
                    return Some(limit);
                }
            }
        }
    }
    None
}

/// All non-decreasing surjections `{0..n} -> {0..k}` as index vectors.
fn monotone_surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 || k > n {
        return vec![];
    }
    // choose the k-1 positions (among n-1 gaps) where the target increments
    (1..n)
        .combinations(k - 1)
        .map(|steps| {
            let mut out = Vec::with_capacity(n);
            let mut target = 0;
            for i in 0..n {
                if steps.contains(&i) {
                    target += 1;
                }
                out.push(target);
            }
            out
        })
        .collect()
}

fn affine_slopes(
    samples: &[(u64, RationalPolygon)],
    choice: &[&Vec<usize>],
    families: usize,
) -> Option<Vec<Point>> {
    let (m0, p0) = &samples[0];
    let (m1, p1) = &samples[1];
    let dm = int(*m1 as i64 - *m0 as i64);
    (0..families)
        .map(|f| {
            let v0 = &p0.vertices()[choice[0][f]];
            let v1 = &p1.vertices()[choice[1][f]];
            let slope = Point::new((&v1.x - &v0.x) / &dm, (&v1.y - &v0.y) / &dm);
            let fits = samples.iter().zip(choice).skip(2).all(|((m, p), map)| {
                let v = &p.vertices()[map[f]];
                let k = int(*m as i64 - *m0 as i64);
                v.x == &v0.x + &slope.x * &k && v.y == &v0.y + &slope.y * &k
            });
            fits.then_some(slope)
        })
        .collect()
}
