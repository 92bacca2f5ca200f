//! Exact arithmetic: big rationals, univariate polynomials over ℚ, reduced
//! rational functions in `t`, and torus weights written in the basis `λ₀, λ₁`.

mod poly;
mod rat;
mod ratfunc;
mod weight;

pub use poly::Poly;
pub use rat::{parse_rat, rat, Rat};
pub use ratfunc::{ratfunc_arith, ArithOp, RatFunc};
pub use weight::{weight_of, weight_to_ratfunc, FixedPoint, Weight};
