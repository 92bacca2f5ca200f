use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{rat, Poly, RatFunc};
use crate::{Error, Result};

/// One of the three torus-fixed points `p₀, p₁, p₂` of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedPoint {
    P0,
    P1,
    P2,
}

impl FixedPoint {
    pub const ALL: [FixedPoint; 3] = [FixedPoint::P0, FixedPoint::P1, FixedPoint::P2];

    pub fn from_index(i: usize) -> Result<Self> {
        Self::ALL
            .get(i)
            .copied()
            .ok_or(Error::FixedPointOutOfRange(i))
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// The weight `λᵢ`.
    pub fn lambda(self) -> Weight {
        match self {
            FixedPoint::P0 => Weight::new(1, 0),
            FixedPoint::P1 => Weight::new(0, 1),
            FixedPoint::P2 => Weight::new(-1, -1),
        }
    }

    /// The fixed point distinct from both `self` and `other`. Requires
    /// `self != other`.
    pub fn third(self, other: FixedPoint) -> FixedPoint {
        debug_assert_ne!(self, other);
        Self::ALL[3 - self.index() - other.index()]
    }

    /// Cyclic relabelling `p₀ → p₁ → p₂ → p₀`.
    pub fn rotate(self) -> FixedPoint {
        Self::ALL[(self.index() + 1) % 3]
    }
}

impl fmt::Display for FixedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Integer linear form `c0·λ₀ + c1·λ₁` in the torus weights, with `λ₂`
/// eliminated through `λ₀ + λ₁ + λ₂ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Weight {
    pub c0: i64,
    pub c1: i64,
}

impl Weight {
    pub const fn new(c0: i64, c1: i64) -> Self {
        Weight { c0, c1 }
    }

    pub fn is_zero(self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }

    /// Dehomogenised image `c0 + c1·t` (`λ₀ = 1`, `λ₁ = t`).
    pub fn to_poly(self) -> Poly {
        Poly::linear(rat(self.c0, 1), rat(self.c1, 1))
    }
}

pub fn weight_of(fixed_point_index: usize) -> Result<Weight> {
    FixedPoint::from_index(fixed_point_index).map(FixedPoint::lambda)
}

pub fn weight_to_ratfunc(w: Weight) -> RatFunc {
    RatFunc::from_poly(w.to_poly())
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        Weight::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        Weight::new(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::new(-self.c0, -self.c1)
    }
}

impl Mul<Weight> for i64 {
    type Output = Weight;
    fn mul(self, w: Weight) -> Weight {
        Weight::new(self * w.c0, self * w.c1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basis_and_relation() {
        assert_eq!(weight_of(0).unwrap(), Weight::new(1, 0));
        assert_eq!(weight_of(1).unwrap(), Weight::new(0, 1));
        assert_eq!(weight_of(2).unwrap(), Weight::new(-1, -1));
        let sum = weight_of(0).unwrap() + weight_of(1).unwrap() + weight_of(2).unwrap();
        assert!(sum.is_zero());
        assert_eq!(weight_of(3), Err(Error::FixedPointOutOfRange(3)));
    }

    #[test]
    fn dehomogenisation() {
        assert_eq!(weight_to_ratfunc(Weight::new(1, 0)), RatFunc::one());
        assert_eq!(weight_to_ratfunc(Weight::new(0, 1)), RatFunc::t());
        assert_eq!(
            weight_to_ratfunc(Weight::new(-1, -1)),
            RatFunc::from_poly(Poly::linear(rat(-1, 1), rat(-1, 1)))
        );
    }

    #[test]
    fn third_point() {
        use FixedPoint::*;
        assert_eq!(P0.third(P1), P2);
        assert_eq!(P2.third(P0), P1);
        assert_eq!(P2.rotate(), P0);
    }

    proptest! {
        #[test]
        fn image_is_additive(a0 in -50i64..50, a1 in -50i64..50, b0 in -50i64..50, b1 in -50i64..50) {
            let (a, b) = (Weight::new(a0, a1), Weight::new(b0, b1));
            prop_assert_eq!(weight_to_ratfunc(a + b), weight_to_ratfunc(a) + weight_to_ratfunc(b));
        }
    }
}
