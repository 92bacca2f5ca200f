//! Closed-form conjectural formulas, their verification against computed
//! tables, and the low-degree degeneration balance.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::aggregate::{symmetry_factor, ContributionTable};
use crate::exactq::Rat;
use crate::locgraph::{Mode, MultiDegree};
use crate::{Error, Result};

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    BigInt::from(num_integer::binomial(BigUint::from(n), BigUint::from(k)))
}

fn int(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Ordered `(d,0,0)` contribution predicted by the one-parameter formula.
pub fn hyper_d00(d: u32) -> Rat {
    let d = u64::from(d);
    Rat::new(binom(4 * d - 1, d), BigInt::from(d * d))
}

/// Ordered `(d1,d2,0)` contribution predicted by the two-parameter formula.
pub fn hyper_d1d2(d1: u32, d2: u32) -> Rat {
    let (a, b) = (u64::from(d1), u64::from(d2));
    let num = binom(4 * a + 2 * b - 1, a - 1) * binom(4 * b + 2 * a - 1, b - 1) * 6;
    Rat::new(num, BigInt::from(a * b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTerm {
    /// Non-increasing.
    pub parts: Vec<u32>,
    pub aut: BigUint,
}

impl PartitionTerm {
    fn from_parts(parts: Vec<u32>) -> Self {
        let mut aut = BigUint::one();
        let mut run = 0u32;
        for (i, p) in parts.iter().enumerate() {
            run = if i > 0 && parts[i - 1] == *p { run + 1 } else { 1 };
            aut *= run;
        }
        PartitionTerm { parts, aut }
    }

    /// `∏ (-1)^(k-1) binom(3k,k) / k` over the parts, weighted by
    /// `2^(r-1) d^(r-2) / aut`.
    pub fn value(&self) -> Rat {
        let d: u64 = self.parts.iter().map(|&p| u64::from(p)).sum();
        let r = self.parts.len() as i32;
        let mut v = Rat::one();
        for &k in &self.parts {
            let k = u64::from(k);
            let mut f = Rat::new(binom(3 * k, k), BigInt::from(k));
            if k % 2 == 0 {
                f = -f;
            }
            v *= f;
        }
        let dr = Rat::from_integer(BigInt::from(d)).pow(r - 2);
        let two = Rat::from_integer(BigInt::from(2)).pow(r - 1);
        v * dr * two / Rat::from_integer(BigInt::from(self.aut.clone()))
    }
}

/// All partitions of `d` into positive parts, in reverse lexicographic order.
pub fn partitions(d: u32) -> Vec<PartitionTerm> {
    let mut out = Vec::new();
    if d == 0 {
        return out;
    }
    let mut cur = vec![d];
    loop {
        out.push(PartitionTerm::from_parts(cur.clone()));
        // Find the rightmost part > 1, decrement it and refill greedily.
        let Some(i) = cur.iter().rposition(|&p| p > 1) else {
            break;
        };
        let rest: u32 = cur[i + 1..].iter().sum::<u32>() + 1;
        let m = cur[i] - 1;
        cur.truncate(i);
        cur.push(m);
        let (q, r) = (rest / m, rest % m);
        cur.extend(core::iter::repeat_n(m, q as usize));
        if r > 0 {
            cur.push(r);
        }
    }
    out
}

/// Partition sum evaluated term by term; only practical for small `d`.
pub fn combinatorial_lhs_enumerated(d: u32) -> Rat {
    partitions(d).iter().map(PartitionTerm::value).sum()
}

/// The same partition sum via the exponential formula: with `c = 2d` and
/// `f(k) = (-1)^(k-1) binom(3k,k) / k`, the sum equals
/// `[x^d] exp(c Σ f(k) x^k) / (2 d²)`.
///
/// With `A_n = n! [x^n] exp(c Σ f(k) x^k)` the recurrence
/// `A_n = c Σ_k k f(k) A_(n-k) (n-1)!/(n-k)!` stays in the integers.
pub fn combinatorial_lhs(d: u32) -> Rat {
    let n = d as usize;
    let c = BigInt::from(2 * u64::from(d));
    // g[k] = k f(k)
    let g: Vec<BigInt> = (0..=n as u64)
        .map(|k| {
            let b = binom(3 * k, k);
            if k % 2 == 0 {
                -b
            } else {
                b
            }
        })
        .collect();
    let mut a = vec![BigInt::one()];
    for m in 1..=n {
        let mut s = BigInt::zero();
        // falling = (m-1)!/(m-k)!
        let mut falling = BigInt::one();
        for k in 1..=m {
            if k > 1 {
                falling *= m - k + 1;
            }
            s += &g[k] * &a[m - k] * &falling;
        }
        a.push(s * &c);
    }
    let dd = u64::from(d);
    let fact: BigInt = (1..=dd).map(BigInt::from).product();
    Rat::new(a.swap_remove(n), fact * BigInt::from(2 * dd * dd))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Combinatorial,
    HyperD00,
    HyperD1D2,
    Integrality,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Combinatorial => "combinatorial",
            Check::HyperD00 => "hypergeometric-d00",
            Check::HyperD1D2 => "hypergeometric-d1d2",
            Check::Integrality => "integrality",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// One line of a verification report. For integrality, `lhs` is
/// `gcd² · C_ord` and `rhs` its nearest non-negative integer below.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportEntry {
    pub check: Check,
    pub degree: u32,
    pub status: Status,
    pub lhs: Rat,
    pub rhs: Rat,
    pub mdeg: Option<MultiDegree>,
}

impl ReportEntry {
    fn compare(check: Check, degree: u32, lhs: Rat, rhs: Rat, mdeg: Option<MultiDegree>) -> Self {
        let status = if lhs == rhs { Status::Pass } else { Status::Fail };
        ReportEntry { check, degree, status, lhs, rhs, mdeg }
    }
}

fn gcd3(p: [u32; 3]) -> u32 {
    p[0].gcd(&p[1]).gcd(&p[2])
}

/// Checks the combinatorial identity for every `d <= d_max`, and the
/// hypergeometric and integrality statements on each supplied table of
/// degree `<= d_max`. Tables may be ordered or unordered.
pub fn verify_conjectures(d_max: u32, tables: &[ContributionTable]) -> Vec<ReportEntry> {
    let mut out = Vec::new();
    for d in 1..=d_max {
        out.push(ReportEntry::compare(
            Check::Combinatorial,
            d,
            combinatorial_lhs(d),
            hyper_d00(d),
            None,
        ));
    }
    for table in tables.iter().filter(|t| t.degree() <= d_max) {
        let d = table.degree();
        let unordered = match table.mode() {
            Mode::Unordered => table.clone(),
            Mode::Ordered => table.to_unordered(),
        };
        let ordered_row = |parts: [u32; 3]| -> Rat {
            let m = MultiDegree::unordered(parts);
            let v = unordered.rows().get(&m).cloned().unwrap_or_else(Rat::zero);
            v / int(u64::from(symmetry_factor(&m)))
        };
        out.push(ReportEntry::compare(
            Check::HyperD00,
            d,
            ordered_row([d, 0, 0]),
            hyper_d00(d),
            Some(MultiDegree::unordered([d, 0, 0])),
        ));
        for d2 in 1..=d / 2 {
            let d1 = d - d2;
            out.push(ReportEntry::compare(
                Check::HyperD1D2,
                d,
                ordered_row([d1, d2, 0]),
                hyper_d1d2(d1, d2),
                Some(MultiDegree::unordered([d1, d2, 0])),
            ));
        }
        for (m, _) in unordered.rows_descending() {
            let g = u64::from(gcd3(m.parts()));
            let lhs = ordered_row(m.parts()) * int(g * g);
            let rhs = if lhs.is_negative() { Rat::zero() } else { lhs.floor() };
            out.push(ReportEntry::compare(Check::Integrality, d, lhs, rhs, Some(*m)));
        }
    }
    out
}

/// Contribution of each double cover of a flex line.
pub const COVER_CONTRIBUTION_D2: (i64, i64) = (3, 4);
/// Contribution of each triple cover of a flex line.
pub const COVER_CONTRIBUTION_D3: (i64, i64) = (10, 9);
/// Quadruple covers of a flex line; not used, degree 4 is unsupported.
pub const COVER_CONTRIBUTION_D4: (i64, i64) = (35, 16);
/// Double covers of a tangent conic; not used, degree 4 is unsupported.
pub const CONIC_COVER_CONTRIBUTION_D4: (i64, i64) = (9, 4);

pub const FLEX_LINES: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceRow {
    pub mdeg: MultiDegree,
    pub table_value: Rat,
    pub embedded: Rat,
    /// `(count, contribution each)` of multiple covers landing here.
    pub covers: Option<(u32, Rat)>,
}

impl fmt::Display for BalanceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.table_value, self.embedded)?;
        if let Some((n, c)) = &self.covers {
            write!(f, " + {n}·({c})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerationPicture {
    pub degree: u32,
    pub general_fibre_counts: BTreeMap<String, Rat>,
    pub arrows: BTreeMap<String, BTreeMap<MultiDegree, Rat>>,
    pub balance: Vec<BalanceRow>,
}

impl DegenerationPicture {
    pub fn embedded_count(&self) -> &Rat {
        &self.general_fibre_counts["embedded"]
    }

    pub fn total(&self) -> Rat {
        self.general_fibre_counts.values().sum()
    }
}

/// Distributes the general-fibre curves over the components of the central
/// fibre so that each table row balances. Covers of flex lines all land on
/// `(d,0,0)`; the embedded curves make up the rest.
pub fn solve_degeneration(d: u32, table: &ContributionTable) -> Result<DegenerationPicture> {
    let (cover, embedded) = match d {
        // One tangent conic at each of the 27 index-6 points.
        2 => (COVER_CONTRIBUTION_D2, int(27)),
        // Two cubics at each of the 9 flexes, three at each of the 72 index-9 points.
        3 => (COVER_CONTRIBUTION_D3, int(9 * 2 + 72 * 3)),
        _ => return Err(Error::UnsupportedDegree(d)),
    };
    if table.degree() != d || table.mode() != Mode::Unordered {
        return Err(Error::InconsistentTable(format!(
            "expected the unordered degree-{d} table"
        )));
    }
    let cover = Rat::new(BigInt::from(cover.0), BigInt::from(cover.1));
    let covers_total = &cover * int(u64::from(FLEX_LINES));
    let top = MultiDegree::unordered([d, 0, 0]);

    let mut to_embedded = BTreeMap::new();
    let mut balance = Vec::new();
    for (m, v) in table.rows_descending() {
        let (emb, covers) = if *m == top {
            (v - &covers_total, Some((FLEX_LINES, cover.clone())))
        } else {
            (v.clone(), None)
        };
        if emb.is_negative() || !emb.is_integer() {
            return Err(Error::InconsistentTable(format!(
                "row {m} leaves {emb} for embedded curves"
            )));
        }
        to_embedded.insert(*m, emb.clone());
        balance.push(BalanceRow { mdeg: *m, table_value: v.clone(), embedded: emb, covers });
    }
    let arrived: Rat = to_embedded.values().sum();
    if arrived != embedded {
        return Err(Error::InconsistentTable(format!(
            "embedded arrows sum to {arrived}, expected {embedded}"
        )));
    }

    let mut general = BTreeMap::new();
    general.insert(String::from("embedded"), embedded);
    general.insert(String::from("covers"), covers_total.clone());
    let mut arrows = BTreeMap::new();
    arrows.insert(String::from("embedded"), to_embedded);
    arrows.insert(String::from("covers"), BTreeMap::from([(top, covers_total)]));
    Ok(DegenerationPicture { degree: d, general_fibre_counts: general, arrows, balance })
}
