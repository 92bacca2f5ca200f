use proptest::prelude::*;

use logtangent_core::dmint::{psi_integral, series_integral, series_integral_expanded};
use logtangent_core::exactq::{rat, Poly, Rat, RatFunc};

/// Genus-zero descendant integrals from the string equation alone.
fn string_oracle(a: &[u32]) -> i64 {
    let n = a.len();
    let total: usize = a.iter().map(|&x| x as usize).sum();
    if n < 3 || total != n - 3 {
        return 0;
    }
    if n == 3 {
        return 1;
    }
    let zero = a.iter().position(|&x| x == 0).expect("dimension forces a zero exponent");
    let rest: Vec<u32> = a.iter().enumerate().filter(|&(i, _)| i != zero).map(|(_, &x)| x).collect();
    (0..rest.len())
        .filter(|&j| rest[j] > 0)
        .map(|j| {
            let mut b = rest.clone();
            b[j] -= 1;
            string_oracle(&b)
        })
        .sum()
}

fn vectors(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn string_equation_agrees() {
    let mut nonzero = 0;
    for n in 3..=7 {
        for a in vectors(n, n as u32 - 3) {
            let want = string_oracle(&a);
            assert_eq!(psi_integral(&a, n).unwrap(), rat(want, 1), "{a:?}");
            nonzero += usize::from(want != 0);
        }
    }
    assert!(nonzero > 100);
}

#[test]
fn unstable_rejected() {
    assert!(psi_integral(&[], 2).is_err());
    assert!(psi_integral(&[0, 0, 0, 0], 3).is_err());
}

fn weight(c0: i64, c1: i64) -> RatFunc {
    RatFunc::from_poly(Poly::linear(rat(c0, 1), rat(c1, 1)))
}

#[test]
fn equal_weights_collapse() {
    // With every ωᵢ = ω the integral is k^(k+s-3) / ω^(2k+s-3).
    let w = weight(2, 3);
    for k in 1..=5usize {
        for s in 0..=2usize {
            if k + s < 3 {
                continue;
            }
            let got = series_integral(&vec![w.clone(); k], s).unwrap();
            let lattice = Rat::from_integer((k as i64).pow((k + s - 3) as u32).into());
            let want = RatFunc::from_rat(lattice) * w.pow(-((2 * k + s - 3) as i32)).unwrap();
            assert_eq!(got, want, "k={k} s={s}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_invariant(a in prop::collection::vec(0u32..4, 3..7), seed in any::<u64>()) {
        let n = a.len();
        let mut b = a.clone();
        // Deterministic shuffle from the seed.
        let mut s = seed;
        for i in (1..b.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            b.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(psi_integral(&a, n).unwrap(), psi_integral(&b, n).unwrap());
    }

    #[test]
    fn closed_form_matches_expansion(
        ws in prop::collection::vec((1i64..6, -5i64..6), 1..5),
        s in 0usize..3,
    ) {
        prop_assume!(ws.len() + s >= 3);
        let ws: Vec<RatFunc> = ws.into_iter().map(|(a, b)| weight(a, b)).collect();
        prop_assert_eq!(
            series_integral(&ws, s).unwrap(),
            series_integral_expanded(&ws, s).unwrap()
        );
    }
}
