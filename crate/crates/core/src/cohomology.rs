//! Global sections of divisors on the blow-up and Hilbert functions of
//! uniform fat-point ideals.
//!
//! A divisor `F` is reduced by repeatedly removing negative curves `C` with
//! `F.C < 0` (which does not change `h^0`) until it is either nef, where
//! Riemann-Roch applies, or visibly not effective.
//!
//! The first reduction step removes negative multiplicities. Literally
//! replacing `F` by `F - (F.e_i) E_i` would double a negative multiplicity
//! under the `(d; m1, ..., mr)` sign convention, so the multiplicity is
//! clamped to zero instead: this is `|m_i|` successive removals of `E_i`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::configuration::{self, ConfigurationType, NegativeCurves};
use crate::error::{Error, Result};
use crate::picard::{canonical_class, fat_point_class, DivisorClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Nef,
    NotEffective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionResult {
    pub input: DivisorClass,
    pub final_class: DivisorClass,
    /// Removed classes with multiplicity.
    pub subtracted: BTreeMap<DivisorClass, u64>,
    pub status: Status,
    pub h0: BigInt,
}

impl ReductionResult {
    /// `final + sum(subtracted)`, which must equal `input`.
    pub fn reassembled(&self) -> DivisorClass {
        self.subtracted
            .iter()
            .fold(self.final_class.clone(), |acc, (c, &k)| {
                &acc + &(&BigInt::from(k) * c)
            })
    }

    pub fn copies_of(&self, c: &DivisorClass) -> u64 {
        self.subtracted.get(c).copied().unwrap_or(0)
    }
}

/// `h^0` of a nef class via Riemann-Roch: `(h^2 - h.K)/2 + 1`.
pub fn riemann_roch_nef(h: &DivisorClass) -> Result<BigInt> {
    let k = canonical_class(h.r())?;
    let twice = h.self_intersection() - h.intersect(&k)?;
    let (half, rem) = twice.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "h^2 - h.K is odd for {h}"
        )));
    }
    Ok(half + 1)
}

/// Picks which of the currently negative curves to remove next. Receives the
/// current class and `(index into NEG, intersection)` for every candidate,
/// and returns a position in that candidate slice.
pub trait TieBreak {
    fn choose(&mut self, negs: &[DivisorClass], candidates: &[(usize, BigInt)]) -> usize;
}

/// Smallest intersection first, then the lexicographically smallest tuple.
#[derive(Clone, Copy, Debug, Default)]
pub struct Deterministic;

impl TieBreak for Deterministic {
    fn choose(&mut self, negs: &[DivisorClass], candidates: &[(usize, BigInt)]) -> usize {
        candidates
            .iter()
            .enumerate()
            .min_by(|(_, (ia, va)), (_, (ib, vb))| va.cmp(vb).then_with(|| negs[*ia].cmp(&negs[*ib])))
            .map(|(pos, _)| pos)
            .expect("nonempty candidates")
    }
}

impl<F> TieBreak for F
where
    F: FnMut(&[DivisorClass], &[(usize, BigInt)]) -> usize,
{
    fn choose(&mut self, negs: &[DivisorClass], candidates: &[(usize, BigInt)]) -> usize {
        self(negs, candidates)
    }
}

pub fn reduce(f: &DivisorClass, negs: &NegativeCurves) -> Result<ReductionResult> {
    reduce_with(f, negs, &mut Deterministic)
}

pub fn reduce_with<T: TieBreak + ?Sized>(
    f: &DivisorClass,
    negs: &NegativeCurves,
    tie_break: &mut T,
) -> Result<ReductionResult> {
    let curves = &negs.all;
    let r = f.r();
    if let Some(bad) = curves.iter().find(|c| c.r() != r) {
        return Err(Error::DimensionMismatch { left: r, right: bad.r() });
    }
    let bound = (f.degree().max(&BigInt::zero()) + 1u32) * BigInt::from(curves.len())
        + f.total_abs_mult();

    // gram[j][k] = C_j . C_k; intersections are then updated incrementally.
    let gram: Vec<Vec<BigInt>> = curves
        .iter()
        .map(|a| curves.iter().map(|b| a.intersect(b).expect("same r")).collect())
        .collect();
    let mut current = f.clone();
    let mut inter: Vec<BigInt> = curves
        .iter()
        .map(|c| current.intersect(c))
        .collect::<Result<_>>()?;
    let mut subtracted: BTreeMap<DivisorClass, u64> = BTreeMap::new();
    let mut steps = BigInt::zero();

    loop {
        // Clamp negative multiplicities: remove |m_i| copies of E_i.
        for i in 0..r {
            let mi = current.mults()[i].clone();
            if mi.sign() == Sign::Minus {
                let copies = -&mi;
                for (j, c) in curves.iter().enumerate() {
                    // E_i . C_j = (C_j)_i
                    inter[j] -= &copies * &c.mults()[i];
                }
                current.set_mult(i, BigInt::zero());
                let count = copies.to_u64().ok_or_else(|| {
                    Error::InternalConsistency(format!("multiplicity {mi} out of range"))
                })?;
                *subtracted.entry(DivisorClass::exceptional(i + 1, r)).or_default() += count;
            }
        }

        if current.degree().is_negative() {
            return Ok(ReductionResult {
                input: f.clone(),
                final_class: current,
                subtracted,
                status: Status::NotEffective,
                h0: BigInt::zero(),
            });
        }

        let candidates: Vec<(usize, BigInt)> = inter
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_negative())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        if candidates.is_empty() {
            let h0 = riemann_roch_nef(&current)?;
            if h0.is_negative() {
                return Err(Error::InternalConsistency(format!(
                    "Riemann-Roch gives {h0} for the nef class {current}"
                )));
            }
            return Ok(ReductionResult {
                input: f.clone(),
                final_class: current,
                subtracted,
                status: Status::Nef,
                h0,
            });
        }

        steps += 1u32;
        if steps > bound {
            return Err(Error::Divergence {
                class: f.to_string(),
                bound: bound.to_string(),
            });
        }
        let pick = tie_break.choose(curves, &candidates);
        let (k, _) = candidates.get(pick).ok_or_else(|| {
            Error::InternalConsistency(format!("tie-break chose {pick} of {}", candidates.len()))
        })?;
        let k = *k;
        current = &current - &curves[k];
        for (j, row) in gram.iter().enumerate() {
            inter[j] -= &row[k];
        }
        *subtracted.entry(curves[k].clone()).or_default() += 1;
    }
}

/// Values `H(t)` of the Hilbert function of the symbolic power `I^(m)` for
/// `0 <= t <= t_stop`, where `t_stop` is the first degree at which every
/// monomial in `x, y` of that degree lies in the generic initial ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertTable {
    pub config: ConfigurationType,
    pub m: u64,
    pub values: Vec<u64>,
    pub alpha: usize,
}

impl HilbertTable {
    pub fn t_stop(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, t: usize) -> Option<u64> {
        self.values.get(t).copied()
    }

    /// Value at any degree, using the closed form past `t_stop`.
    pub fn value(&self, t: usize) -> u64 {
        match self.values.get(t) {
            Some(&v) => v,
            None => tail_value(t as u64, self.m, self.config.r() as u64),
        }
    }
}

/// `C(t+2, 2) - r*C(m+1, 2)` clamped at zero.
pub fn tail_value(t: u64, m: u64, r: u64) -> u64 {
    ((t + 2) * (t + 1) / 2).saturating_sub(r * m * (m + 1) / 2)
}

pub fn hilbert_value(cfg: &ConfigurationType, negs: &NegativeCurves, m: u64, t: u64) -> Result<u64> {
    let f = fat_point_class(t, m, cfg.r());
    let res = reduce(&f, negs)?;
    res.h0
        .to_u64()
        .ok_or_else(|| Error::InternalConsistency(format!("h0 {} does not fit", res.h0)))
}

pub fn hilbert_function(cfg: &ConfigurationType, m: u64) -> Result<HilbertTable> {
    if m == 0 {
        return Err(Error::InvalidConfiguration("multiplicity must be positive".into()));
    }
    let negs = configuration::enumerate_neg(cfg)?;
    let mut values: Vec<u64> = Vec::new();
    let mut alpha = None;
    // Closure happens by degree r*m (all points on one line is the worst case).
    let limit = (cfg.r() as u64) * (m + 1) + 2;
    for t in 0..=limit {
        let h = hilbert_value(cfg, &negs, m, t)?;
        let prev = values.last().copied().unwrap_or(0);
        if h < prev {
            return Err(Error::InternalConsistency(format!(
                "H({t}) = {h} < H({}) = {prev}",
                t.saturating_sub(1)
            )));
        }
        values.push(h);
        if alpha.is_none() && h > 0 {
            alpha = Some(t as usize);
        }
        if h - prev == t + 1 {
            return Ok(HilbertTable {
                config: cfg.clone(),
                m,
                values,
                alpha: alpha.expect("closure implies a nonzero value"),
            });
        }
    }
    Err(Error::InternalConsistency(format!(
        "Hilbert function of {cfg} with m = {m} did not close by degree {limit}"
    )))
}

/// `(h^2 - h.K)` parity check exposed for property tests.
pub fn riemann_roch_numerator(h: &DivisorClass) -> Result<BigInt> {
    let k = canonical_class(h.r())?;
    Ok(h.self_intersection() - h.intersect(&k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::lookup;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn binomial2(n: u64) -> u64 {
        n * n.saturating_sub(1) / 2
    }

    fn class(d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(d, m.iter().copied())
    }

    fn h() -> ConfigurationType {
        lookup("two-lines-3-meeting").unwrap().config
    }

    #[test]
    fn riemann_roch_examples() {
        assert_eq!(riemann_roch_nef(&DivisorClass::zero(6)).unwrap(), BigInt::from(1));
        assert_eq!(riemann_roch_nef(&DivisorClass::line(6)).unwrap(), BigInt::from(3));
        let f36 = fat_point_class(36, 12, 6);
        assert_eq!(riemann_roch_nef(&f36).unwrap(), BigInt::from(235));
        // 1/2 t^2 - 3m^2 + 3/2 t - 3m + 1 at t = 36, m = 12
        assert_eq!((36 * 36 + 3 * 36) / 2 - 3 * 144 - 36 + 1, 235);
    }

    #[test]
    fn reduce_h_degree_28() {
        let negs = configuration::enumerate_neg(&h()).unwrap();
        let res = reduce(&fat_point_class(28, 12, 6), &negs).unwrap();
        assert_eq!(res.status, Status::Nef);
        assert_eq!(res.final_class, class(12, &[4, 4, 4, 4, 4, 8]));
        assert_eq!(res.h0, BigInt::from(5));
        let a1 = class(1, &[1, 1, 1, 0, 0, 0]);
        let a2 = class(1, &[1, 0, 0, 1, 1, 0]);
        let q = class(2, &[0, 1, 1, 1, 1, 1]);
        assert_eq!(res.copies_of(&a1), 4);
        assert_eq!(res.copies_of(&a2), 4);
        assert_eq!(res.copies_of(&q), 4);
        assert_eq!(res.subtracted.len(), 3);
        assert_eq!(res.reassembled(), res.input);
    }

    #[test]
    fn reduce_h_degree_27_is_not_effective() {
        let negs = configuration::enumerate_neg(&h()).unwrap();
        let res = reduce(&fat_point_class(27, 12, 6), &negs).unwrap();
        assert_eq!(res.status, Status::NotEffective);
        assert!(res.h0.is_zero());
        assert!(res.final_class.degree().is_negative());
        assert_eq!(res.reassembled(), res.input);
    }

    #[test]
    fn generic_is_nef_from_five_halves_m() {
        let negs = configuration::enumerate_neg(&lookup("generic").unwrap().config).unwrap();
        for m in 1..10u64 {
            for t in (5 * m).div_ceil(2)..5 * m {
                let f = fat_point_class(t, m, 6);
                let res = reduce(&f, &negs).unwrap();
                assert_eq!(res.status, Status::Nef);
                assert_eq!(res.final_class, f);
                assert!(res.subtracted.is_empty());
            }
        }
    }

    #[test]
    fn clamping_removes_negative_multiplicities() {
        let negs = configuration::enumerate_neg(&lookup("generic").unwrap().config).unwrap();
        let f = class(3, &[-2, 0, 0, 0, 0, 0]);
        let res = reduce(&f, &negs).unwrap();
        assert_eq!(res.final_class, class(3, &[0; 6]));
        assert_eq!(res.copies_of(&DivisorClass::exceptional(1, 6)), 2);
        assert_eq!(res.h0, BigInt::from(10));
        assert_eq!(res.reassembled(), f);
    }

    #[test]
    fn hilbert_function_h_golden() {
        let table = hilbert_function(&h(), 12).unwrap();
        assert_eq!(table.get(27), Some(0));
        assert_eq!(table.get(28), Some(5));
        assert_eq!(table.get(29), Some(22));
        assert_eq!(table.get(36), Some(235));
        assert_eq!(table.alpha, 28);
        assert_eq!(table.t_stop(), 36);
    }

    #[test]
    fn hilbert_table_invariants_on_catalog() {
        for entry in configuration::catalog() {
            for m in 1..=6u64 {
                let table = hilbert_function(&entry.config, m).unwrap();
                assert_eq!(table.values[0], 0);
                for t in 1..table.values.len() {
                    let step = table.values[t] - table.values[t - 1];
                    assert!(step <= t as u64 + 1, "{} m={m} t={t}", entry.slug);
                    assert!(table.values[t] <= binomial2(t as u64 + 2));
                }
                let ts = table.t_stop();
                for t in ts.saturating_sub(1)..ts + 5 {
                    assert_eq!(table.value(t), tail_value(t as u64, m, 6), "{} m={m} t={t}", entry.slug);
                }
            }
        }
    }

    #[test]
    fn tail_formula_matches_riemann_roch_polynomial() {
        // 1/2 t^2 + 3/2 t - 3m^2 - 3m + 1 == C(t+2,2) - 6 C(m+1,2)
        for m in 0..40i64 {
            for t in 3 * m..3 * m + 20 {
                let lhs2 = t * t + 3 * t - 6 * m * m - 6 * m + 2;
                let rhs = ((t + 2) * (t + 1) / 2) - 6 * (m * (m + 1) / 2);
                assert_eq!(lhs2, 2 * rhs);
                let f = fat_point_class(t as u64, m as u64, 6);
                assert_eq!(riemann_roch_nef(&f).unwrap(), BigInt::from(rhs));
            }
        }
    }

    #[test]
    fn order_independence_under_random_tie_breaks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for entry in configuration::catalog() {
            let negs = configuration::enumerate_neg(&entry.config).unwrap();
            for m in 1..=4u64 {
                for t in 0..=3 * m + 4 {
                    let f = fat_point_class(t, m, 6);
                    let reference = reduce(&f, &negs).unwrap();
                    for _ in 0..10 {
                        let mut pick = |_: &[DivisorClass], c: &[(usize, BigInt)]| rng.gen_range(0..c.len());
                        let res = reduce_with(&f, &negs, &mut pick).unwrap();
                        assert_eq!(res.h0, reference.h0, "{} m={m} t={t}", entry.slug);
                        assert_eq!(res.status, reference.status);
                        assert_eq!(res.reassembled(), f);
                    }
                }
            }
        }
    }

    #[test]
    fn parity_holds_for_random_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let d: i64 = rng.gen_range(-500..500);
            let m: Vec<i64> = (0..6).map(|_| rng.gen_range(-500..500)).collect();
            let n = riemann_roch_numerator(&DivisorClass::new(d, m)).unwrap();
            assert!(n.is_even());
        }
    }
}
