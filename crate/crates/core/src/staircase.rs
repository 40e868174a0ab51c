//! Borel-fixed monomial ideals in `x, y` viewed inside `K[x, y, z]`.
//!
//! Such an ideal is `(x^a, x^(a-1) y^l_(a-1), ..., x y^l_1, y^l_0)` with
//! `l_0 > l_1 > ... > l_(a-1) >= 1`, and it is determined by its Hilbert
//! function: in degree `t` it contains exactly the `c_t = H(t) - H(t-1)`
//! largest monomials `x^t, x^(t-1) y, ...` in `x, y`, times powers of `z`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohomology::HilbertTable;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Staircase {
    alpha: usize,
    lambdas: Vec<usize>,
}

impl Staircase {
    pub fn new(alpha: usize, lambdas: Vec<usize>) -> Result<Self> {
        if lambdas.len() != alpha {
            return Err(Error::InconsistentStaircase(format!(
                "{} exponents for alpha = {alpha}",
                lambdas.len()
            )));
        }
        if let Some(&last) = lambdas.last() {
            if last == 0 {
                return Err(Error::InconsistentStaircase(
                    "the last exponent must be at least 1".into(),
                ));
            }
        }
        if let Some(i) = lambdas.windows(2).position(|w| w[1] >= w[0]) {
            return Err(Error::InconsistentStaircase(format!(
                "lambda_{} = {} is not below lambda_{} = {}",
                i + 1,
                lambdas[i + 1],
                i,
                lambdas[i]
            )));
        }
        Ok(Staircase { alpha, lambdas })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn lambdas(&self) -> &[usize] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> usize {
        self.lambdas.get(i).copied().unwrap_or(0)
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= self.alpha || j >= self.lambdas[i]
    }

    /// Number of monomials in `x, y` alone of degree `t` in the ideal.
    pub fn xy_count(&self, t: usize) -> usize {
        (0..=t).filter(|&i| self.contains(i, t - i)).count()
    }

    /// `(x-exponent, y-exponent)` of the minimal generators, by increasing
    /// x-exponent and ending with `(alpha, 0)`.
    pub fn minimal_generators(&self) -> Vec<(usize, usize)> {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| (i, l))
            .chain(std::iter::once((self.alpha, 0)))
            .collect()
    }

    pub fn generator_count_by_degree(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for (i, j) in self.minimal_generators() {
            *out.entry(i + j).or_default() += 1;
        }
        out
    }

    /// Hilbert function of the ideal in `K[x, y, z]` at degree `t`.
    pub fn hilbert(&self, t: usize) -> u64 {
        (0..=t).map(|d| self.xy_count(d) as u64).sum()
    }
}

/// The `c_t` sequence of first differences, checked for the growth a
/// two-variable Borel-fixed ideal must have. The table must reach closure
/// (`c_t = t + 1`) at its last entry.
fn xy_counts(values: &[u64]) -> Result<Vec<usize>> {
    let mut counts = Vec::with_capacity(values.len());
    let mut prev_h = 0u64;
    for (t, &h) in values.iter().enumerate() {
        let c = h.checked_sub(prev_h).ok_or_else(|| Error::UnrealizableHilbert {
            degree: t,
            reason: format!("H({t}) = {h} is below H({}) = {prev_h}", t.saturating_sub(1)),
        })? as usize;
        if c > t + 1 {
            return Err(Error::UnrealizableHilbert {
                degree: t,
                reason: format!("{c} monomials of degree {t} in x, y exceed the {} available", t + 1),
            });
        }
        if let Some(&before) = counts.last() {
            // multiplying by x and y maps `before` monomials onto before+1.
            let needed = if before > 0 { before + 1 } else { 0 };
            if c < needed {
                return Err(Error::UnrealizableHilbert {
                    degree: t,
                    reason: format!("c({t}) = {c} but degree {} forces at least {needed}", t - 1),
                });
            }
        }
        counts.push(c);
        prev_h = h;
    }
    match counts.last() {
        Some(&c) if c == counts.len() => Ok(counts),
        _ => Err(Error::InsufficientData(
            "Hilbert table does not reach the degree where all monomials in x, y are present".into(),
        )),
    }
}

/// Rebuilds the staircase from Hilbert function values `H(0), H(1), ...`.
pub fn staircase_from_values(values: &[u64]) -> Result<Staircase> {
    let counts = xy_counts(values)?;
    let closure = counts.len() - 1;
    let c = |t: usize| if t <= closure { counts[t] } else { t + 1 };
    // x^i y^j is in the ideal iff j < c(i + j).
    let lambda = |i: usize| (0..).find(|&j| j < c(i + j)).expect("closure bounds the search");
    let mut lambdas = Vec::new();
    loop {
        let l = lambda(lambdas.len());
        if l == 0 {
            break;
        }
        lambdas.push(l);
    }
    Staircase::new(lambdas.len(), lambdas)
}

pub fn staircase_from_hilbert(table: &HilbertTable) -> Result<Staircase> {
    staircase_from_values(&table.values)
}

/// Minimal generators per degree from the Hilbert function alone:
/// `gens(t) = c_t - c_(t-1) - [c_(t-1) > 0]`.
pub fn generator_counts_from_values(values: &[u64]) -> Result<BTreeMap<usize, usize>> {
    let counts = xy_counts(values)?;
    let mut out = BTreeMap::new();
    for t in 0..counts.len() {
        let before = if t == 0 { 0 } else { counts[t - 1] };
        let gens = counts[t] - before - usize::from(before > 0);
        if gens > 0 {
            out.insert(t, gens);
        }
    }
    Ok(out)
}
