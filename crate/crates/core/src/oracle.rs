//! Ground truth for fat-point Hilbert functions by exact linear algebra.
//!
//! Each configuration type is realized by explicit integer coordinates, and
//! `dim I^(m)_t` is computed as the number of degree-`t` monomials minus the
//! rank of the matrix of vanishing conditions: all Taylor coefficients of
//! order below `m` at every point. No divisor theory is involved.

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::configuration::{ConfigurationType, DefiningCurve};
use crate::error::{Error, Result};

pub type Coords = [i64; 3];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    pub points: Vec<Coords>,
}

impl PointSet {
    pub fn new(points: Vec<Coords>) -> Self {
        PointSet { points }
    }
}

fn det3(a: &Coords, b: &Coords, c: &Coords) -> i128 {
    let [a0, a1, a2] = a.map(i128::from);
    let [b0, b1, b2] = b.map(i128::from);
    let [c0, c1, c2] = c.map(i128::from);
    a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)
}

fn same_projective_point(a: &Coords, b: &Coords) -> bool {
    let [a0, a1, a2] = a.map(i128::from);
    let [b0, b1, b2] = b.map(i128::from);
    a0 * b1 == a1 * b0 && a0 * b2 == a2 * b0 && a1 * b2 == a2 * b1
}

fn conic_matrix(ps: &PointSet) -> Vec<Vec<BigInt>> {
    ps.points
        .iter()
        .map(|&[x, y, z]| {
            [x * x, x * y, x * z, y * y, y * z, z * z]
                .into_iter()
                .map(BigInt::from)
                .collect()
        })
        .collect()
}

/// Whether the witness has exactly the defining curves of `cfg`: declared
/// lines are collinear, no other triple is, and an irreducible conic passes
/// through all six points exactly when one is declared.
///
/// A conic through three collinear points contains their line, so the conic
/// test only applies when no three points are collinear; otherwise a
/// singular conic matrix just reflects a pair of lines.
pub fn verify_realization(ps: &PointSet, cfg: &ConfigurationType) -> bool {
    let n = ps.points.len();
    if n != cfg.r() || ps.points.iter().any(|p| *p == [0, 0, 0]) {
        return false;
    }
    if ps
        .points
        .iter()
        .tuple_combinations()
        .any(|(a, b)| same_projective_point(a, b))
    {
        return false;
    }
    let lines: Vec<&DefiningCurve> = cfg.curves().iter().filter(|c| c.degree == 1).collect();
    let mut any_collinear = false;
    for triple in (1..=n).combinations(3) {
        let [i, j, k] = [triple[0], triple[1], triple[2]];
        let declared = lines
            .iter()
            .any(|l| triple.iter().all(|p| l.points.contains(p)));
        let collinear = det3(&ps.points[i - 1], &ps.points[j - 1], &ps.points[k - 1]) == 0;
        if declared != collinear {
            return false;
        }
        any_collinear |= collinear;
    }
    let conic_declared = cfg.curves().iter().any(|c| c.degree == 2);
    if any_collinear {
        return !conic_declared;
    }
    if n != 6 {
        return !conic_declared;
    }
    let singular = rank(conic_matrix(ps)) < 6;
    singular == conic_declared
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent triples `(a, b, c)` with `a + b + c = t`.
fn monomials(t: usize) -> Vec<[usize; 3]> {
    (0..=t)
        .flat_map(|a| (0..=t - a).map(move |b| [a, b, t - a - b]))
        .collect()
}

/// Rows of the vanishing-conditions matrix for one point. In the affine
/// chart where coordinate `w` is nonzero, with the other two coordinates
/// `u, v`, the row for the Taylor coefficient of order `(k, l)` has entry
/// `C(i,k) C(j,l) p_u^(i-k) p_v^(j-l) p_w^e` at the monomial
/// `u^i v^j w^e` (scaled by a power of `p_w` to stay integral).
fn condition_rows(p: &Coords, m: usize, monos: &[[usize; 3]]) -> Vec<Vec<BigInt>> {
    let w = (0..3).rev().find(|&i| p[i] != 0).expect("nonzero point");
    let (u, v) = match w {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let pow = |base: i64, e: usize| BigInt::from(base).pow(e as u32);
    let mut rows = Vec::new();
    for order in 0..m {
        for k in 0..=order {
            let l = order - k;
            let row: Vec<BigInt> = monos
                .iter()
                .map(|e| {
                    let (i, j, ew) = (e[u], e[v], e[w]);
                    if i < k || j < l {
                        return BigInt::zero();
                    }
                    binomial(i, k) * binomial(j, l) * pow(p[u], i - k) * pow(p[v], j - l) * pow(p[w], ew)
                })
                .collect();
            rows.push(row);
        }
    }
    rows
}

/// Exact rank by integer elimination. Rows with a single nonzero entry are
/// pivoted first; the rest are eliminated with cross-multiplication and
/// divided by their content after every step.
pub fn rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut rank = 0;

    // Unit-row pass: a row with one nonzero entry pivots that column, which
    // can then be cleared from every other row.
    loop {
        let Some(pos) = rows
            .iter()
            .position(|r| r.iter().filter(|x| !x.is_zero()).count() == 1)
        else {
            break;
        };
        let row = rows.swap_remove(pos);
        let col = row.iter().position(|x| !x.is_zero()).expect("one nonzero");
        for r in rows.iter_mut() {
            r[col] = BigInt::zero();
        }
        rank += 1;
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    }

    for r in rows.iter_mut() {
        normalize(r);
    }
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(pivot) = (top..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (rows[i][col].bits(), i))
        else {
            continue;
        };
        rows.swap(top, pivot);
        let (head, tail) = rows.split_at_mut(top + 1);
        let prow = &head[top];
        let p = &prow[col];
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let g = p.gcd(&r[col]);
            let a = p / &g;
            let b = &r[col] / &g;
            for j in col..cols {
                if prow[j].is_zero() && r[j].is_zero() {
                    continue;
                }
                r[j] = &a * &r[j] - &b * &prow[j];
            }
            debug_assert!(r[col].is_zero());
            normalize(r);
        }
        top += 1;
    }
    rank + top
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// `dim I^(m)_t` for the fat-point ideal of order `m` at the witness points.
pub fn oracle_hilbert(ps: &PointSet, m: u64, t: u64) -> u64 {
    let t = t as usize;
    let monos = monomials(t);
    let rows: Vec<Vec<BigInt>> = ps
        .points
        .iter()
        .flat_map(|p| condition_rows(p, m as usize, &monos))
        .collect();
    let cols = monos.len();
    (cols - rank(rows)) as u64
}

fn affine(pts: &[(i64, i64)]) -> Vec<Coords> {
    pts.iter().map(|&(x, y)| [x, y, 1]).collect()
}

/// Committed witness coordinates for a catalog configuration.
pub fn realize(slug: &str) -> Result<PointSet> {
    let points = match slug {
        "generic" => vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 5], [2, 5, 3]],
        "one-line-3" => affine(&[(0, 0), (1, 0), (3, 0), (0, 1), (1, 3), (4, 7)]),
        "two-lines-3-disjoint" => affine(&[(0, 0), (1, 0), (3, 0), (0, 1), (2, 1), (5, 1)]),
        "two-lines-3-meeting" => affine(&[(0, 0), (1, 0), (2, 0), (0, 1), (0, 2), (1, 2)]),
        "three-lines-3" => affine(&[(0, 0), (4, 0), (1, 0), (0, 4), (0, 3), (2, 2)]),
        "four-lines-3" => vec![[0, 0, 1], [2, 0, 1], [3, 0, 1], [0, 2, 1], [0, 1, 1], [3, 1, 2]],
        "line-4" => affine(&[(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 2)]),
        "line-4-line-3" => affine(&[(1, 0), (2, 0), (3, 0), (0, 0), (1, 1), (2, 2)]),
        "line-5" => affine(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (0, 1)]),
        "line-6" => affine(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0)]),
        "conic-6" => (0..6).map(|t| [t * t, t, 1]).collect(),
        _ => return Err(Error::UnknownSlug(slug.to_string())),
    };
    Ok(PointSet::new(points))
}

/// A second, independently chosen witness with three of the points at the
/// coordinate vertices where the type allows it. Conditions at a coordinate
/// vertex are single monomials, which keeps the elimination small.
pub fn realize_alternate(slug: &str) -> Result<PointSet> {
    let points = match slug {
        "generic" => vec![[0, 1, 0], [1, 2, 2], [1, -1, 0], [1, 0, 1], [0, 0, 1], [1, 1, -1]],
        "one-line-3" => vec![[0, 0, 1], [0, 1, -1], [0, 1, 0], [1, -1, 0], [1, 0, 1], [1, 1, -1]],
        "two-lines-3-disjoint" => {
            vec![[0, 0, 1], [0, 1, -1], [0, 1, 1], [1, 0, 0], [1, -1, 0], [1, 1, 0]]
        }
        "two-lines-3-meeting" => {
            vec![[0, 0, 1], [0, 1, 0], [0, 1, -1], [1, 0, 0], [1, 0, 1], [1, -1, -1]]
        }
        "three-lines-3" => vec![[0, 0, 1], [0, 1, 0], [0, 1, -1], [1, 0, 0], [1, 0, -1], [1, 1, 0]],
        "four-lines-3" => vec![[0, 0, 1], [0, 1, -1], [0, 1, 0], [1, 0, 1], [1, 0, 0], [1, 1, 0]],
        "line-4" => vec![[0, 0, 1], [0, 1, 0], [0, 1, -1], [0, 1, 1], [1, -1, 0], [1, 1, 1]],
        "line-4-line-3" => vec![[0, 1, 0], [0, 1, -1], [0, 1, 1], [0, 0, 1], [1, 0, 0], [1, 0, -1]],
        "line-5" => vec![[0, 0, 1], [0, 1, 0], [0, 1, -2], [0, 1, -1], [0, 1, 1], [1, 0, 0]],
        "line-6" => vec![[0, 0, 1], [0, 1, 0], [0, 1, -2], [0, 1, -1], [0, 1, 1], [0, 1, 2]],
        "conic-6" => vec![[0, 0, 1], [1, -1, 1], [1, 1, 1], [4, -2, 1], [4, 2, 1], [9, -3, 1]],
        _ => return Err(Error::UnknownSlug(slug.to_string())),
    };
    Ok(PointSet::new(points))
}

/// Witness for an arbitrary six-point configuration: the catalog witness of
/// the equivalent type, with points reordered to match the labeling of `cfg`.
pub fn realize_config(cfg: &ConfigurationType) -> Result<PointSet> {
    for entry in crate::configuration::catalog() {
        if entry.config.r() != cfg.r() {
            continue;
        }
        let Some(perm) = (0..cfg.r())
            .permutations(cfg.r())
            .find(|perm| entry.config.relabeled(perm) == *cfg)
        else {
            continue;
        };
        // catalog point i becomes point perm[i] of cfg
        let base = realize(entry.slug)?;
        let mut points = vec![[0i64; 3]; cfg.r()];
        for (i, &p) in perm.iter().enumerate() {
            points[p] = base.points[i];
        }
        return Ok(PointSet::new(points));
    }
    Err(Error::InvalidConfiguration(format!(
        "no catalog type is equivalent to {cfg}"
    )))
}

/// Oracle values `H(0..=t_max)`.
pub fn oracle_table(ps: &PointSet, m: u64, t_max: u64) -> Vec<u64> {
    (0..=t_max).map(|t| oracle_hilbert(ps, m, t)).collect()
}
