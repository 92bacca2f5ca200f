//! Genus-zero Deligne–Mumford integrals.
//!
//! `∫_{M̄₀,ₙ} ψ₁^{a₁}⋯ψₙ^{aₙ}` is the multinomial coefficient
//! `(n−3)! / ∏ aᵢ!` when `Σ aᵢ = n − 3` and vanishes otherwise.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::exactq::{Rat, RatFunc};
use crate::{Error, Result};

// 34! is the largest factorial below 2^128.
const TABLE_LEN: usize = 35;

const FACTORIALS: [u128; TABLE_LEN] = {
    let mut t = [1u128; TABLE_LEN];
    let mut i = 1;
    while i < TABLE_LEN {
        t[i] = t[i - 1] * i as u128;
        i += 1;
    }
    t
};

pub fn factorial(n: usize) -> BigUint {
    if n < TABLE_LEN {
        return BigUint::from(FACTORIALS[n]);
    }
    (TABLE_LEN..=n).fold(BigUint::from(FACTORIALS[TABLE_LEN - 1]), |acc, k| acc * k)
}

/// `(Σ a)! / ∏ aᵢ!`.
pub fn multinomial(a: &[u32]) -> BigUint {
    let n: usize = a.iter().map(|&x| x as usize).sum();
    let mut out = factorial(n);
    for &x in a {
        if x > 1 {
            out /= factorial(x as usize);
        }
    }
    out
}

pub fn psi_integral(a: &[u32], n: usize) -> Result<Rat> {
    if n < 3 {
        return Err(Error::UnstableModuli(n));
    }
    if a.len() > n {
        return Err(Error::TooManyExponents { len: a.len(), n });
    }
    let total: usize = a.iter().map(|&x| x as usize).sum();
    if total != n - 3 {
        return Ok(Rat::zero());
    }
    Ok(Rat::from_integer(multinomial(a).into()))
}

/// `∫_{M̄₀,ₖ₊ₛ} ∏ᵢ 1/(ωᵢ − ψᵢ)` over `k` weighted flags and `s` further
/// markings.
///
/// Expanding each factor geometrically and integrating gives
/// `Σ_a ψ(a) ∏ ωᵢ^{−(aᵢ+1)}` over `Σ a = k+s−3`; by the multinomial theorem
/// that sum is `(Σ 1/ωᵢ)^{k+s−3} / ∏ ωᵢ`, which is what is evaluated here.
pub fn series_integral(flag_weights: &[RatFunc], extra_markings: usize) -> Result<RatFunc> {
    let k = flag_weights.len();
    if k == 0 || k + extra_markings < 3 {
        return Err(Error::UnstableModuli(k + extra_markings));
    }
    let inverses = flag_weights
        .iter()
        .map(|w| w.recip().map_err(|_| Error::ZeroFlagWeight))
        .collect::<Result<Vec<_>>>()?;
    let sum: RatFunc = inverses.iter().cloned().sum();
    let prod: RatFunc = inverses.into_iter().product();
    Ok(prod * sum.pow((k + extra_markings - 3) as i32)?)
}

/// Term-by-term expansion of [`series_integral`]; much slower, kept for
/// cross-checking.
pub fn series_integral_expanded(flag_weights: &[RatFunc], extra_markings: usize) -> Result<RatFunc> {
    let k = flag_weights.len();
    let n = k + extra_markings;
    if k == 0 || n < 3 {
        return Err(Error::UnstableModuli(n));
    }
    let inverses = flag_weights
        .iter()
        .map(|w| w.recip().map_err(|_| Error::ZeroFlagWeight))
        .collect::<Result<Vec<_>>>()?;
    let mut total = RatFunc::zero();
    for a in compositions(n - 3, k) {
        let coeff = psi_integral(&a, n)?;
        let mut term = RatFunc::from_rat(coeff);
        for (inv, &ai) in inverses.iter().zip(&a) {
            term = term * inv.pow(ai as i32 + 1)?;
        }
        total = total + term;
    }
    Ok(total)
}

/// All vectors of `parts` non-negative integers summing to `total`.
pub fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(left: usize, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() + 1 == parts {
            cur.push(left as u32);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=left {
            cur.push(x as u32);
            rec(left - x, parts, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut cur, &mut out);
    out
}
