//! Divisor classes on the blow-up of the plane at `r` points.
//!
//! A class is written as the tuple `(d; m1, ..., mr)` and stands for
//! `d*E0 - m1*E1 - ... - mr*Er`, where `E0` is the pullback of a line and
//! `Ei` are the exceptional curves. With this convention the intersection
//! form is `d*d' - sum(mi*mi')`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Largest number of blown-up points for which the canonical class and
/// Riemann-Roch computations are supported.
pub const MAX_POINTS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass {
    d: BigInt,
    mults: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new<D, M, I>(d: D, mults: I) -> Self
    where
        D: Into<BigInt>,
        M: Into<BigInt>,
        I: IntoIterator<Item = M>,
    {
        DivisorClass {
            d: d.into(),
            mults: mults.into_iter().map(Into::into).collect(),
        }
    }

    pub fn zero(r: usize) -> Self {
        DivisorClass {
            d: BigInt::zero(),
            mults: vec![BigInt::zero(); r],
        }
    }

    /// The class `e0` of a general line.
    pub fn line(r: usize) -> Self {
        let mut c = Self::zero(r);
        c.d = BigInt::from(1);
        c
    }

    /// The exceptional class `e_i` for `1 <= i <= r`, i.e. the tuple with `-1`
    /// in position `i`.
    pub fn exceptional(i: usize, r: usize) -> Self {
        assert!((1..=r).contains(&i), "exceptional index {i} out of 1..={r}");
        let mut c = Self::zero(r);
        c.mults[i - 1] = BigInt::from(-1);
        c
    }

    pub fn r(&self) -> usize {
        self.mults.len()
    }

    pub fn degree(&self) -> &BigInt {
        &self.d
    }

    pub fn mults(&self) -> &[BigInt] {
        &self.mults
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.mults.iter().all(Zero::is_zero)
    }

    fn check_same_r(&self, other: &DivisorClass) -> Result<()> {
        if self.r() == other.r() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.r(),
                right: other.r(),
            })
        }
    }

    pub fn intersect(&self, other: &DivisorClass) -> Result<BigInt> {
        self.check_same_r(other)?;
        let mut acc = &self.d * &other.d;
        for (a, b) in self.mults.iter().zip(&other.mults) {
            acc -= a * b;
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> BigInt {
        self.intersect(self).expect("same r")
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check_same_r(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        self.check_same_r(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &DivisorClass, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        DivisorClass {
            d: f(&self.d, &other.d),
            mults: self
                .mults
                .iter()
                .zip(&other.mults)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Sum of the absolute values of the multiplicities.
    pub fn total_abs_mult(&self) -> BigInt {
        self.mults.iter().map(|m| m.abs()).sum()
    }

    /// Applies a relabeling of the points: position `i` of the result holds
    /// the multiplicity of point `perm[i]` (0-based).
    pub fn permuted(&self, perm: &[usize]) -> DivisorClass {
        assert_eq!(perm.len(), self.r());
        DivisorClass {
            d: self.d.clone(),
            mults: perm.iter().map(|&p| self.mults[p].clone()).collect(),
        }
    }

    pub(crate) fn set_mult(&mut self, i: usize, value: BigInt) {
        self.mults[i] = value;
    }
}

pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<BigInt> {
    a.intersect(b)
}

/// `K_X = -3E0 + E1 + ... + Er`, i.e. the tuple `(-3; -1, ..., -1)`.
pub fn canonical_class(r: usize) -> Result<DivisorClass> {
    if !(1..=MAX_POINTS).contains(&r) {
        return Err(Error::UnsupportedSurface(r));
    }
    Ok(DivisorClass::new(-3, vec![-1; r]))
}

/// `F_t = t*E0 - m*(E1 + ... + Er)`.
pub fn fat_point_class(t: u64, m: u64, r: usize) -> DivisorClass {
    DivisorClass::new(t, vec![m; r])
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    /// Panics when the classes live on different surfaces; use
    /// [`DivisorClass::checked_add`] for a fallible version.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs).expect("classes with equal r")
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs).expect("classes with equal r")
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass {
            d: -&self.d,
            mults: self.mults.iter().map(|m| -m).collect(),
        }
    }
}

impl Mul<&DivisorClass> for &BigInt {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass {
            d: self * &rhs.d,
            mults: rhs.mults.iter().map(|m| self * m).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.d)?;
        for (i, m) in self.mults.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{m}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn class(d: i64, m: &[i64]) -> DivisorClass {
        DivisorClass::new(d, m.iter().copied())
    }

    #[test]
    fn intersect_examples() {
        let a = class(1, &[1, 1, 1, 0, 0, 0]);
        let b = class(1, &[1, 0, 0, 1, 1, 0]);
        assert_eq!(a.intersect(&b).unwrap(), BigInt::from(0));

        let e0 = DivisorClass::line(6);
        assert_eq!(e0.self_intersection(), BigInt::from(1));

        for (t, m) in [(28u64, 12u64), (5, 1), (0, 3)] {
            let f = fat_point_class(t, m, 6);
            let expected = t as i64 - 3 * m as i64;
            assert_eq!(f.intersect(&a).unwrap(), BigInt::from(expected));
            let q = class(2, &[0, 1, 1, 1, 1, 1]);
            assert_eq!(
                f.intersect(&q).unwrap(),
                BigInt::from(2 * t as i64 - 5 * m as i64)
            );
        }
    }

    #[test]
    fn mismatched_r_is_rejected() {
        let a = DivisorClass::line(6);
        let b = DivisorClass::line(5);
        assert_eq!(
            a.intersect(&b),
            Err(Error::DimensionMismatch { left: 6, right: 5 })
        );
        assert!(a.checked_sub(&b).is_err());
    }

    #[test]
    fn canonical_class_examples() {
        let k6 = canonical_class(6).unwrap();
        assert_eq!(k6, class(-3, &[-1; 6]));
        assert_eq!(k6.self_intersection(), BigInt::from(3));
        assert_eq!(canonical_class(1).unwrap(), class(-3, &[-1]));
        assert_eq!(canonical_class(0), Err(Error::UnsupportedSurface(0)));
        assert_eq!(canonical_class(9), Err(Error::UnsupportedSurface(9)));
    }

    #[test]
    fn fat_point_class_examples() {
        assert_eq!(fat_point_class(28, 12, 6), class(28, &[12; 6]));
        assert!(fat_point_class(0, 0, 6).is_zero());
    }

    #[test]
    fn gram_matrix_of_basis() {
        let r = 6;
        let mut basis = vec![DivisorClass::line(r)];
        basis.extend((1..=r).map(|i| DivisorClass::exceptional(i, r)));
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let expected = match (i, j) {
                    (0, 0) => 1,
                    _ if i == j => -1,
                    _ => 0,
                };
                assert_eq!(a.intersect(b).unwrap(), BigInt::from(expected));
            }
        }
    }

    fn arb_class(r: usize) -> impl Strategy<Value = DivisorClass> {
        (
            -1000i64..1000,
            proptest::collection::vec(-1000i64..1000, r),
        )
            .prop_map(|(d, m)| DivisorClass::new(d, m))
    }

    proptest! {
        #[test]
        fn intersection_is_bilinear_and_symmetric(
            a in arb_class(6), b in arb_class(6), c in arb_class(6), k in -50i64..50,
        ) {
            let ab = &a + &b;
            prop_assert_eq!(
                ab.intersect(&c).unwrap(),
                a.intersect(&c).unwrap() + b.intersect(&c).unwrap()
            );
            prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
            let ka = &BigInt::from(k) * &a;
            prop_assert_eq!(ka.intersect(&c).unwrap(), BigInt::from(k) * a.intersect(&c).unwrap());
            prop_assert_eq!(&(&ab - &b), &a);
        }
    }
}
