use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rat};
use crate::{Error, Result};

/// Reduced rational function `num/den` in `t`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` is monic. The zero function
/// is `0/1`. Canonical form makes structural equality coincide with equality
/// in `ℚ(t)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(op: ArithOp, a: &RatFunc, b: &RatFunc) -> Result<RatFunc> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl RatFunc {
    /// Builds and reduces `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::normalize(num, den)
    }

    // Assumes num and den are coprime.
    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rat(super::rat(c, 1))
    }

    pub fn from_poly(num: Poly) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: i32) -> Result<Self> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        let e = exp.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Exact value at `t = t0`.
    pub fn specialize(&self, t0: &Rat) -> Result<Rat> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            return Err(Error::Pole(t0.clone()));
        }
        Ok(self.num.eval(t0) / d)
    }

    /// The value when the function does not depend on `t`.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        Self::from_poly(p)
    }
}

impl From<Rat> for RatFunc {
    fn from(c: Rat) -> Self {
        Self::from_rat(c)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // With g = gcd(b, d): a/b + c/d = (a·d' + c·b') / (b'·d), and the only
        // common factors of that fraction divide g.
        let g = Poly::gcd(&self.den, &rhs.den);
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (self.den.exact_div(&g), rhs.den.exact_div(&g))
        };
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let den = &b1 * &rhs.den;
        if g.is_one() {
            return RatFunc::normalize(num, den);
        }
        let h = Poly::gcd(&num, &g);
        if h.is_one() {
            RatFunc::normalize(num, den)
        } else {
            RatFunc::normalize(num.exact_div(&h), den.exact_div(&h))
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel: both operands are already reduced.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFunc::normalize(num, den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl core::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::zero(), |a, b| a + b)
    }
}

impl core::iter::Product for RatFunc {
    fn product<I: Iterator<Item = RatFunc>>(iter: I) -> Self {
        iter.fold(RatFunc::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    fn f(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn add_cancels_to_constant() {
        // 3/(1−t) + 3t/(t−1) = 3
        let a = f(&[3], &[1, -1]);
        let b = f(&[0, 3], &[-1, 1]);
        let sum = ratfunc_arith(ArithOp::Add, &a, &b).unwrap();
        assert_eq!(sum, RatFunc::from_int(3));
        assert_eq!(sum.constant_value(), Some(rat(3, 1)));
        // independent check at two points, before any reduction
        for t0 in [rat(2, 1), rat(-5, 7)] {
            let direct = a.specialize(&t0).unwrap() + b.specialize(&t0).unwrap();
            assert_eq!(direct, rat(3, 1));
        }
    }

    #[test]
    fn mul_by_inverse() {
        let t = RatFunc::t();
        let inv = f(&[1], &[0, 1]);
        assert_eq!(ratfunc_arith(ArithOp::Mul, &t, &inv).unwrap(), RatFunc::one());
    }

    #[test]
    fn division_by_zero() {
        let r = ratfunc_arith(ArithOp::Div, &RatFunc::one(), &RatFunc::zero());
        assert_eq!(r, Err(Error::DivisionByZero));
        assert!(RatFunc::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn specialize_and_poles() {
        let g = f(&[3], &[1, -1]);
        assert_eq!(g.specialize(&rat(2, 1)).unwrap(), rat(-3, 1));
        assert_eq!(g.specialize(&rat(1, 1)), Err(Error::Pole(rat(1, 1))));
    }

    #[test]
    fn constant_value_cases() {
        assert_eq!(f(&[3, -3], &[1, -1]).constant_value(), Some(rat(3, 1)));
        assert_eq!(RatFunc::t().constant_value(), None);
        assert_eq!(RatFunc::from_rat(rat(21, 4)).constant_value(), Some(rat(21, 4)));
    }

    #[test]
    fn denominator_is_monic() {
        let g = f(&[2], &[4, 6]);
        assert!(g.den().leading().unwrap().is_one());
        assert_eq!(g.num(), &Poly::constant(rat(1, 3)));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(-4i64..=4, 0..4)
            .prop_map(|cs| Poly::new(cs.into_iter().map(|c| rat(c, 1)).collect()))
    }

    fn small_ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly())
            .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFunc::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn distributive(a in small_ratfunc(), b in small_ratfunc(), c in small_ratfunc()) {
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn self_division_is_one(a in small_ratfunc()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.checked_div(&a).unwrap(), RatFunc::one());
        }

        #[test]
        fn reduction_is_idempotent(a in small_ratfunc()) {
            let again = RatFunc::new(a.num().clone(), a.den().clone()).unwrap();
            prop_assert_eq!(again, a);
        }

        #[test]
        fn sub_then_add_roundtrips(a in small_ratfunc(), b in small_ratfunc()) {
            prop_assert_eq!(&(&a - &b) + &b, a);
        }

        #[test]
        fn agrees_with_pointwise_arithmetic(a in small_ratfunc(), b in small_ratfunc()) {
            let pts: Vec<Rat> = [rat(11, 3), rat(-17, 5)].into();
            for x in &pts {
                if let (Ok(va), Ok(vb)) = (a.specialize(x), b.specialize(x)) {
                    prop_assert_eq!((&a + &b).specialize(x).unwrap(), &va + &vb);
                    prop_assert_eq!((&a * &b).specialize(x).unwrap(), &va * &vb);
                }
            }
        }
    }
}
