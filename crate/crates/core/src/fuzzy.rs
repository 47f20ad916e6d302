//! Trapezoidal fuzzy variables and their credibility calculus.
//!
//! A trapezoid `(r1, r2, r3, r4)` has membership rising linearly on `[r1, r2]`,
//! equal to one on `[r2, r3]` and falling linearly on `[r3, r4]`. Degenerate
//! ramps (`r1 == r2` or `r3 == r4`) are steps, so crisp numbers and triangles
//! are special cases.

use std::fmt;
use std::ops::Neg;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("non-monotone trapezoid ({0}, {1}, {2}, {3})")]
    NonMonotone(f64, f64, f64, f64),
    #[error("non-finite trapezoid component")]
    NonFinite,
    #[error("confidence level {0} outside (0, 1]")]
    AlphaOutOfRange(f64),
    #[error("negative weight {0} in linear combination")]
    NegativeWeight(f64),
}

/// A trapezoidal fuzzy variable `(r1, r2, r3, r4)` with `r1 <= r2 <= r3 <= r4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[T; 4]", into = "[T; 4]")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct TrapezoidalFuzzy<T> {
    r: [T; 4],
}

impl<T: Scalar> TrapezoidalFuzzy<T> {
    pub fn new(r1: T, r2: T, r3: T, r4: T) -> Result<Self, FuzzyError> {
        let r = [r1, r2, r3, r4];
        if r.iter().any(|v| !v.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        if !(r1 <= r2 && r2 <= r3 && r3 <= r4) {
            return Err(FuzzyError::NonMonotone(
                to_f64(r1),
                to_f64(r2),
                to_f64(r3),
                to_f64(r4),
            ));
        }
        Ok(Self { r })
    }

    pub fn crisp(c: T) -> Self {
        Self { r: [c; 4] }
    }

    pub fn zero() -> Self {
        Self::crisp(T::zero())
    }

    pub fn components(&self) -> [T; 4] {
        self.r
    }

    pub fn r1(&self) -> T {
        self.r[0]
    }
    pub fn r2(&self) -> T {
        self.r[1]
    }
    pub fn r3(&self) -> T {
        self.r[2]
    }
    pub fn r4(&self) -> T {
        self.r[3]
    }

    pub fn is_crisp(&self) -> bool {
        self.r[0] == self.r[3]
    }

    /// Possibility distribution. Plateau endpoints belong to the plateau.
    pub fn membership(&self, x: T) -> T {
        let [r1, r2, r3, r4] = self.r;
        if x < r1 || x > r4 {
            T::zero()
        } else if x >= r2 && x <= r3 {
            T::one()
        } else if x < r2 {
            (x - r1) / (r2 - r1)
        } else {
            (r4 - x) / (r4 - r3)
        }
    }

    /// `Pos{xi <= x}`: supremum of the membership over `(-inf, x]`.
    pub fn possibility_leq(&self, x: T) -> T {
        let [r1, r2, _, _] = self.r;
        if x >= r2 {
            T::one()
        } else if x < r1 {
            T::zero()
        } else {
            (x - r1) / (r2 - r1)
        }
    }

    /// `Nec{xi <= x} = 1 - Pos{xi > x}`.
    pub fn necessity_leq(&self, x: T) -> T {
        let [_, _, r3, r4] = self.r;
        if x >= r4 {
            T::one()
        } else if x < r3 {
            T::zero()
        } else {
            (x - r3) / (r4 - r3)
        }
    }

    /// `Cr{xi <= x}`, the half-sum of possibility and necessity.
    pub fn credibility_leq(&self, x: T) -> T {
        (self.possibility_leq(x) + self.necessity_leq(x)) * T::lit(0.5)
    }

    /// `Cr{xi >= x}`.
    pub fn credibility_geq(&self, x: T) -> T {
        let [r1, r2, r3, r4] = self.r;
        let pos = if x <= r3 {
            T::one()
        } else if x > r4 {
            T::zero()
        } else {
            (r4 - x) / (r4 - r3)
        };
        let nec = if x <= r1 {
            T::one()
        } else if x > r2 {
            T::zero()
        } else {
            (r2 - x) / (r2 - r1)
        };
        (pos + nec) * T::lit(0.5)
    }

    /// α-pessimistic value `inf{r : Cr{xi <= r} >= alpha}`.
    pub fn pessimistic_value(&self, alpha: T) -> Result<T, FuzzyError> {
        check_alpha(alpha)?;
        let [r1, r2, r3, r4] = self.r;
        let two = T::lit(2.0);
        // (1-2α)r1 + 2α r2 and 2(1-α)r3 + (2α-1)r4, written as interpolations
        // so degenerate ramps return their endpoint exactly.
        Ok(if alpha <= T::lit(0.5) {
            r1 + two * alpha * (r2 - r1)
        } else {
            r4 - two * (T::one() - alpha) * (r4 - r3)
        })
    }

    /// α-optimistic value `sup{r : Cr{xi >= r} >= alpha}`.
    pub fn optimistic_value(&self, alpha: T) -> Result<T, FuzzyError> {
        check_alpha(alpha)?;
        let [r1, r2, r3, r4] = self.r;
        let two = T::lit(2.0);
        Ok(if alpha <= T::lit(0.5) {
            r4 - two * alpha * (r4 - r3)
        } else {
            r1 + two * (T::one() - alpha) * (r2 - r1)
        })
    }

    /// Scales by a nonnegative weight.
    pub fn scale(&self, weight: T) -> Result<Self, FuzzyError> {
        if weight < T::zero() {
            return Err(FuzzyError::NegativeWeight(to_f64(weight)));
        }
        Ok(Self {
            r: self.r.map(|v| v * weight),
        })
    }
}

impl<T: Scalar> Neg for TrapezoidalFuzzy<T> {
    type Output = Self;

    fn neg(self) -> Self {
        let [r1, r2, r3, r4] = self.r;
        Self {
            r: [-r4, -r3, -r2, -r1],
        }
    }
}

impl<T: Scalar> TryFrom<[T; 4]> for TrapezoidalFuzzy<T> {
    type Error = FuzzyError;

    fn try_from(r: [T; 4]) -> Result<Self, Self::Error> {
        Self::new(r[0], r[1], r[2], r[3])
    }
}

impl<T> From<TrapezoidalFuzzy<T>> for [T; 4] {
    fn from(t: TrapezoidalFuzzy<T>) -> Self {
        t.r
    }
}

impl<T: Scalar> fmt::Display for TrapezoidalFuzzy<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.r;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// Componentwise weighted sum of trapezoids. Weights must be nonnegative;
/// the empty sum is the crisp zero.
pub fn linear_combination<'a, T, I>(terms: I) -> Result<TrapezoidalFuzzy<T>, FuzzyError>
where
    T: Scalar,
    I: IntoIterator<Item = (T, &'a TrapezoidalFuzzy<T>)>,
{
    let mut acc = [T::zero(); 4];
    for (weight, xi) in terms {
        let scaled = xi.scale(weight)?;
        for (a, s) in acc.iter_mut().zip(scaled.r) {
            *a += s;
        }
    }
    // Sums of ordered tuples with nonnegative weights stay ordered.
    Ok(TrapezoidalFuzzy { r: acc })
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<(), FuzzyError> {
    if alpha > T::zero() && alpha <= T::one() {
        Ok(())
    } else {
        Err(FuzzyError::AlphaOutOfRange(to_f64(alpha)))
    }
}

fn to_f64<T: Scalar>(v: T) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tz(a: f64, b: f64, c: f64, d: f64) -> TrapezoidalFuzzy<f64> {
        TrapezoidalFuzzy::new(a, b, c, d).unwrap()
    }

    #[test]
    fn membership_examples() {
        let xi = tz(1.0, 2.0, 3.0, 4.0);
        assert_eq!(xi.membership(2.5), 1.0);
        assert_eq!(xi.membership(1.5), 0.5);
        assert_eq!(xi.membership(5.0), 0.0);
        assert_eq!(xi.membership(2.0), 1.0);
        assert_eq!(xi.membership(3.0), 1.0);
    }

    #[test]
    fn step_ramps() {
        let left_step = tz(1.0, 1.0, 3.0, 4.0);
        assert_eq!(left_step.membership(1.0), 1.0);
        assert_eq!(left_step.credibility_leq(1.0), 0.5);
        assert_eq!(left_step.credibility_leq(0.999), 0.0);
        let right_step = tz(1.0, 2.0, 3.0, 3.0);
        assert_eq!(right_step.credibility_leq(2.999), 0.5);
        assert_eq!(right_step.credibility_leq(3.0), 1.0);
    }

    #[test]
    fn credibility_examples() {
        let xi = tz(1.0, 2.0, 3.0, 4.0);
        assert_eq!(xi.credibility_leq(2.0), 0.5);
        assert_eq!(xi.credibility_leq(0.0), 0.0);
        assert_eq!(xi.credibility_leq(3.5), 0.75);
        assert_eq!(xi.credibility_leq(4.0), 1.0);
        assert_eq!(xi.credibility_geq(3.5), 0.25);
    }

    #[test]
    fn pessimistic_examples() {
        let xi = tz(101.0, 102.0, 104.0, 105.0);
        assert!((xi.pessimistic_value(0.9).unwrap() - 104.8).abs() < 1e-12);
        assert_eq!(xi.pessimistic_value(0.5).unwrap(), 102.0);
        assert_eq!(xi.pessimistic_value(1.0).unwrap(), 105.0);
    }

    #[test]
    fn optimistic_examples() {
        let xi = tz(1.0, 2.0, 3.0, 4.0);
        assert_eq!(xi.optimistic_value(0.5).unwrap(), 3.0);
        assert_eq!(xi.optimistic_value(1.0).unwrap(), 1.0);
        assert_eq!(xi.optimistic_value(0.25).unwrap(), 3.5);
    }

    #[test]
    fn alpha_domain() {
        let xi = tz(1.0, 2.0, 3.0, 4.0);
        for bad in [0.0, -0.1, 1.0000001, f64::NAN] {
            assert!(matches!(
                xi.pessimistic_value(bad),
                Err(FuzzyError::AlphaOutOfRange(_))
            ));
            assert!(xi.optimistic_value(bad).is_err());
        }
    }

    #[test]
    fn linear_combination_examples() {
        let a = tz(1.0, 2.0, 3.0, 4.0);
        let b = tz(0.0, 1.0, 1.0, 2.0);
        assert_eq!(
            linear_combination([(2.0, &a)]).unwrap(),
            tz(2.0, 4.0, 6.0, 8.0)
        );
        assert_eq!(
            linear_combination([(1.0, &a), (1.0, &b)]).unwrap(),
            tz(1.0, 3.0, 4.0, 6.0)
        );
        assert_eq!(
            linear_combination::<f64, _>(std::iter::empty()).unwrap(),
            TrapezoidalFuzzy::zero()
        );
        assert!(matches!(
            linear_combination([(-1.0, &a)]),
            Err(FuzzyError::NegativeWeight(_))
        ));
    }

    #[test]
    fn constructor_rejects_bad_order() {
        assert!(matches!(
            TrapezoidalFuzzy::new(4.0, 3.0, 2.0, 1.0),
            Err(FuzzyError::NonMonotone(..))
        ));
        assert!(TrapezoidalFuzzy::new(0.0, f64::NAN, 1.0, 2.0).is_err());
    }

    #[test]
    fn works_in_f32() {
        let xi = TrapezoidalFuzzy::<f32>::new(101.0, 102.0, 104.0, 105.0).unwrap();
        assert!((xi.pessimistic_value(0.9).unwrap() - 104.8).abs() < 1e-4);
        assert_eq!(xi.credibility_leq(103.0), 0.5);
    }

    #[test]
    fn serde_as_array() {
        let xi = tz(1.0, 2.0, 3.0, 4.0);
        let s = serde_json::to_string(&xi).unwrap();
        assert_eq!(s, "[1.0,2.0,3.0,4.0]");
        let back: TrapezoidalFuzzy<f64> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, xi);
        assert!(serde_json::from_str::<TrapezoidalFuzzy<f64>>("[4,3,2,1]").is_err());
    }
}
