//! Exact torus localisation for the maximal-contact logarithmic Gromov–Witten
//! theory of the plane relative to its toric boundary triangle.
//!
//! Every fixed locus of the torus action on the space of one-pointed genus-zero
//! stable maps is indexed by a decorated tree ([`locgraph`]). Each tree
//! contributes an exact rational function of the torus weights ([`contrib`]);
//! summing those contributions per multi-degree ([`aggregate`]) yields constant
//! component contributions whose total is the log invariant.
//!
//! The weights are dehomogenised as `λ₀ = 1`, `λ₁ = t`, `λ₂ = −1 − t`, so all
//! arithmetic happens in the univariate field `ℚ(t)` ([`exactq`]).
//!
//! The crate is `no_std` and only needs `alloc`. IO, parallel evaluation and
//! the disk cache live in the `logtangent` companion crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod aggregate;
pub mod conjecture;
pub mod contrib;
pub mod dmint;
mod error;
pub mod exactq;
pub mod locgraph;

pub use error::{Error, Result};
