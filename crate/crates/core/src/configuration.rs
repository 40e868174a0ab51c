//! Configuration types of points in the plane, described by their defining
//! curves: lines through at least three of the points and irreducible conics
//! through six of them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard::DivisorClass;

/// Number of points in every catalog configuration.
pub const SIX: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DefiningCurve {
    pub degree: u8,
    /// 1-based point indices, sorted and without repetition.
    pub points: Vec<usize>,
}

impl DefiningCurve {
    pub fn line(points: impl IntoIterator<Item = usize>) -> Self {
        Self::new(1, points)
    }

    pub fn conic(points: impl IntoIterator<Item = usize>) -> Self {
        Self::new(2, points)
    }

    pub fn new(degree: u8, points: impl IntoIterator<Item = usize>) -> Self {
        let points: BTreeSet<usize> = points.into_iter().collect();
        DefiningCurve {
            degree,
            points: points.into_iter().collect(),
        }
    }

    /// Minimum number of points a curve of this degree must contain to
    /// define the configuration: `C(d+2, 2)`.
    fn min_points(degree: u8) -> Option<usize> {
        match degree {
            1 => Some(3),
            2 => Some(6),
            _ => None,
        }
    }

    pub fn label(&self) -> CurveLabel {
        CurveLabel {
            degree: self.degree,
            points: self.points.len(),
        }
    }

    /// The class `(d; chi_S)` of the strict transform.
    pub fn class(&self, r: usize) -> DivisorClass {
        let mults = (1..=r).map(|i| i64::from(self.points.contains(&i)));
        DivisorClass::new(i64::from(self.degree), mults)
    }

    fn relabeled(&self, perm: &[usize]) -> DefiningCurve {
        DefiningCurve::new(self.degree, self.points.iter().map(|&p| perm[p - 1] + 1))
    }
}

impl fmt::Display for DefiningCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.degree == 1 { "line" } else { "conic" };
        write!(f, "{kind}{{{}}}", self.points.iter().join(","))
    }
}

/// The `C_{d,N}` label of a defining curve: degree `d` through `N` points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveLabel {
    pub degree: u8,
    pub points: usize,
}

impl fmt::Display for CurveLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C_{{{},{}}}", self.degree, self.points)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConfigurationType {
    r: usize,
    curves: Vec<DefiningCurve>,
}

impl ConfigurationType {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn curves(&self) -> &[DefiningCurve] {
        &self.curves
    }

    pub fn is_generic(&self) -> bool {
        self.curves.is_empty()
    }

    /// Applies the point relabeling `i -> perm[i]` (0-based).
    pub fn relabeled(&self, perm: &[usize]) -> ConfigurationType {
        let mut curves: Vec<_> = self.curves.iter().map(|c| c.relabeled(perm)).collect();
        curves.sort();
        ConfigurationType { r: self.r, curves }
    }

    /// Lexicographically least relabeling under the full symmetric group.
    pub fn canonical(&self) -> ConfigurationType {
        (0..self.r)
            .permutations(self.r)
            .map(|perm| self.relabeled(&perm))
            .min()
            .expect("at least one permutation")
    }

    pub fn is_equivalent(&self, other: &ConfigurationType) -> bool {
        self.r == other.r && self.canonical() == other.canonical()
    }
}

impl fmt::Display for ConfigurationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.curves.is_empty() {
            return write!(f, "{} points, no defining curves", self.r);
        }
        write!(f, "{} points: {}", self.r, self.curves.iter().join(" "))
    }
}

/// Checks the incidence constraints a set of defining curves must satisfy to
/// describe distinct points in the plane.
pub fn validate(curves: &[DefiningCurve], r: usize) -> Result<ConfigurationType> {
    let invalid = |msg: String| Err(Error::InvalidConfiguration(msg));
    if !(1..=crate::picard::MAX_POINTS).contains(&r) {
        return Err(Error::UnsupportedSurface(r));
    }
    let mut seen = BTreeSet::new();
    for c in curves {
        let Some(min) = DefiningCurve::min_points(c.degree) else {
            return invalid(format!("{c}: unsupported degree {}", c.degree));
        };
        if c.points.windows(2).any(|w| w[0] >= w[1]) {
            return invalid(format!("{c}: point list must be strictly increasing"));
        }
        if c.points.iter().any(|&p| p == 0 || p > r) {
            return invalid(format!("{c}: point index outside 1..={r}"));
        }
        if c.points.len() < min {
            return invalid(format!(
                "{c}: a degree-{} curve needs at least {min} points",
                c.degree
            ));
        }
        if !seen.insert(c.clone()) {
            return invalid(format!("{c} is listed twice"));
        }
    }
    let has_conic = curves.iter().any(|c| c.degree == 2);
    let has_line = curves.iter().any(|c| c.degree == 1);
    if has_conic && has_line {
        return invalid("an irreducible conic through the points excludes three collinear points".into());
    }
    if curves.iter().filter(|c| c.degree == 2).count() > 1 {
        return invalid("two distinct conics share at most four points".into());
    }
    for (a, b) in curves.iter().filter(|c| c.degree == 1).tuple_combinations() {
        let shared = a.points.iter().filter(|p| b.points.contains(p)).count();
        if shared >= 2 {
            return invalid(format!("{a} and {b} share {shared} points"));
        }
    }
    let mut curves = curves.to_vec();
    curves.sort();
    Ok(ConfigurationType { r, curves })
}

/// The classes of negative curves on the blow-up: the defining curves (self
/// intersection at most -2) together with every `(-1)`-curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeCurves {
    /// Classes with self-intersection below -1.
    pub neg: Vec<DivisorClass>,
    /// All negative classes, `neg` included, sorted.
    pub all: Vec<DivisorClass>,
}

impl NegativeCurves {
    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    /// Members that are curves of positive degree, i.e. everything except
    /// the exceptional classes `e_i`. The `e_i` never take part in a
    /// reduction beyond clamping, so this is the list one works with by hand.
    pub fn plane_curves(&self) -> Vec<DivisorClass> {
        self.all.iter().filter(|c| c.degree().sign() == num_bigint::Sign::Plus).cloned().collect()
    }

    pub fn exceptional(&self) -> Vec<DivisorClass> {
        self.all.iter().filter(|c| c.degree().sign() != num_bigint::Sign::Plus).cloned().collect()
    }
}

pub fn neg_classes(cfg: &ConfigurationType) -> Vec<DivisorClass> {
    let mut out: Vec<_> = cfg.curves.iter().map(|c| c.class(cfg.r)).collect();
    out.sort();
    out
}

/// Candidate exceptional classes: the `e_i`, lines `e0 - sum e_i` over at
/// least two points and conics `2e0 - sum e_i` over at least five.
fn exceptional_candidates(r: usize) -> Vec<DivisorClass> {
    let mut out: Vec<DivisorClass> = (1..=r).map(|i| DivisorClass::exceptional(i, r)).collect();
    for (degree, min_size) in [(1u8, 2usize), (2, 5)] {
        for size in min_size..=r {
            for subset in (1..=r).combinations(size) {
                out.push(DefiningCurve::new(degree, subset).class(r));
            }
        }
    }
    out
}

pub fn enumerate_neg(cfg: &ConfigurationType) -> Result<NegativeCurves> {
    if cfg.r != SIX {
        return Err(Error::UnsupportedSurface(cfg.r));
    }
    let neg = neg_classes(cfg);
    let minus_one = num_bigint::BigInt::from(-1);
    let mut all: BTreeSet<DivisorClass> = neg.iter().cloned().collect();
    for c in exceptional_candidates(cfg.r) {
        if c.self_intersection() != minus_one {
            continue;
        }
        let compatible = neg
            .iter()
            .all(|d| c.intersect(d).map(|v| v.sign() != num_bigint::Sign::Minus).unwrap_or(false));
        if compatible {
            all.insert(c);
        }
    }
    Ok(NegativeCurves {
        neg,
        all: all.into_iter().collect(),
    })
}

/// Letter names attached to catalog entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Alias {
    /// The letter is fixed by the incidence data.
    Pinned(char),
    /// The letter is an educated guess and must not be relied upon.
    Presumed(char),
}

impl Alias {
    pub fn letter(self) -> char {
        match self {
            Alias::Pinned(c) | Alias::Presumed(c) => c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub slug: &'static str,
    pub alias: Option<Alias>,
    pub config: ConfigurationType,
}

pub const CATALOG_SLUGS: [&str; 11] = [
    "generic",
    "one-line-3",
    "two-lines-3-disjoint",
    "two-lines-3-meeting",
    "three-lines-3",
    "four-lines-3",
    "line-4",
    "line-4-line-3",
    "line-5",
    "line-6",
    "conic-6",
];

fn catalog_curves(slug: &str) -> Option<(Vec<DefiningCurve>, Option<Alias>)> {
    use DefiningCurve as C;
    let entry = match slug {
        "generic" => (vec![], Some(Alias::Presumed('A'))),
        "one-line-3" => (vec![C::line([1, 2, 3])], Some(Alias::Pinned('B'))),
        "two-lines-3-disjoint" => (vec![C::line([1, 2, 3]), C::line([4, 5, 6])], None),
        "two-lines-3-meeting" => (
            vec![C::line([1, 2, 3]), C::line([1, 4, 5])],
            Some(Alias::Pinned('H')),
        ),
        // Triangle: vertices p1, p2, p4; the third point of each side is p3, p5, p6.
        "three-lines-3" => (
            vec![C::line([1, 2, 3]), C::line([1, 4, 5]), C::line([2, 4, 6])],
            None,
        ),
        // Complete quadrilateral: the six points are the pairwise
        // intersections of four lines.
        "four-lines-3" => (
            vec![
                C::line([1, 2, 3]),
                C::line([1, 4, 5]),
                C::line([2, 4, 6]),
                C::line([3, 5, 6]),
            ],
            None,
        ),
        "line-4" => (vec![C::line([1, 2, 3, 4])], None),
        "line-4-line-3" => (
            vec![C::line([1, 2, 3, 4]), C::line([4, 5, 6])],
            Some(Alias::Pinned('F')),
        ),
        "line-5" => (vec![C::line([1, 2, 3, 4, 5])], None),
        "line-6" => (vec![C::line([1, 2, 3, 4, 5, 6])], None),
        "conic-6" => (vec![C::conic([1, 2, 3, 4, 5, 6])], None),
        _ => return None,
    };
    Some(entry)
}

pub fn lookup(slug: &str) -> Result<CatalogEntry> {
    let slug = CATALOG_SLUGS
        .iter()
        .copied()
        .find(|s| *s == slug)
        .ok_or_else(|| Error::UnknownSlug(slug.to_string()))?;
    let (curves, alias) = catalog_curves(slug).expect("every slug has curves");
    let config = validate(&curves, SIX).expect("catalog entries are valid");
    Ok(CatalogEntry {
        slug,
        alias,
        config,
    })
}

pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG_SLUGS
        .iter()
        .map(|s| lookup(s).expect("catalog slug"))
        .collect()
}

/// Every configuration type of `r` points, up to relabeling, in canonical
/// form. Only `r = 6` is supported.
pub fn enumerate_all_types(r: usize) -> Result<Vec<ConfigurationType>> {
    if r != SIX {
        return Err(Error::UnsupportedSurface(r));
    }
    let lines: Vec<DefiningCurve> = (3..=r)
        .flat_map(|k| (1..=r).combinations(k))
        .map(DefiningCurve::line)
        .collect();

    let mut found = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<DefiningCurve>)> = vec![(0, vec![])];
    while let Some((next, chosen)) = stack.pop() {
        found.insert(validate(&chosen, r)?.canonical());
        for (i, line) in lines.iter().enumerate().skip(next) {
            let mut extended = chosen.clone();
            extended.push(line.clone());
            if validate(&extended, r).is_ok() {
                stack.push((i + 1, extended));
            }
        }
    }
    let conic = validate(&[DefiningCurve::conic(1..=r)], r)?;
    found.insert(conic.canonical());
    Ok(found.into_iter().collect())
}

/// The multiset of defining-curve labels through a point.
pub type IncidenceType = Vec<CurveLabel>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidencePartition {
    /// Incidence type of each point, indexed by point (0-based).
    pub per_point: Vec<IncidenceType>,
    /// Distinct incidence types with the 1-based points carrying them.
    pub classes: BTreeMap<IncidenceType, Vec<usize>>,
}

impl IncidencePartition {
    pub fn distinct(&self) -> usize {
        self.classes.len()
    }
}

pub fn incidence_types(cfg: &ConfigurationType) -> IncidencePartition {
    let per_point: Vec<IncidenceType> = (1..=cfg.r)
        .map(|p| {
            let mut labels: Vec<_> = cfg
                .curves
                .iter()
                .filter(|c| c.points.contains(&p))
                .map(DefiningCurve::label)
                .collect();
            labels.sort();
            labels
        })
        .collect();
    let mut classes: BTreeMap<IncidenceType, Vec<usize>> = BTreeMap::new();
    for (i, ty) in per_point.iter().enumerate() {
        classes.entry(ty.clone()).or_default().push(i + 1);
    }
    IncidencePartition { per_point, classes }
}
