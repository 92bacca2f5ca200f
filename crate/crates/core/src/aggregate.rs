//! Multi-degree refined sums of fixed-locus contributions.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::contrib::contribution_split;
use crate::exactq::{Poly, Rat, RatFunc};
use crate::locgraph::{enumerate_classes, GraphClass, Mode, MultiDegree};
use crate::{Error, Result};

/// Exact component contributions of one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionTable {
    degree: u32,
    mode: Mode,
    rows: BTreeMap<MultiDegree, Rat>,
    total: Rat,
}

impl ContributionTable {
    /// Zero rows are dropped; every key must be in `mode` and sum to `degree`.
    pub fn new(degree: u32, mode: Mode, rows: BTreeMap<MultiDegree, Rat>) -> Result<Self> {
        for m in rows.keys() {
            if m.total() != degree || m.mode() != mode {
                return Err(Error::InvalidMultiDegree(format!(
                    "{m} ({}) in a degree {degree} {mode} table",
                    m.mode()
                )));
            }
        }
        let rows: BTreeMap<_, _> = rows.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let total = rows.values().sum();
        Ok(ContributionTable {
            degree,
            mode,
            rows,
            total,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn rows(&self) -> &BTreeMap<MultiDegree, Rat> {
        &self.rows
    }

    /// Rows in lexicographically descending multi-degree order.
    pub fn rows_descending(&self) -> impl Iterator<Item = (&MultiDegree, &Rat)> {
        self.rows.iter().rev()
    }

    pub fn row(&self, parts: [u32; 3]) -> Option<&Rat> {
        self.rows.get(&MultiDegree::new(parts, self.mode))
    }

    pub fn total(&self) -> &Rat {
        &self.total
    }

    /// Unordered table obtained by summing ordered rows over S₃-orbits.
    pub fn to_unordered(&self) -> ContributionTable {
        let mut rows: BTreeMap<MultiDegree, Rat> = BTreeMap::new();
        for (m, v) in &self.rows {
            *rows.entry(m.to_unordered()).or_insert_with(Rat::zero) += v;
        }
        ContributionTable::new(self.degree, Mode::Unordered, rows).expect("same degree")
    }
}

/// Size of the S₃-orbit of the multi-degree: 1, 3 or 6.
pub fn symmetry_factor(mdeg: &MultiDegree) -> u32 {
    let [a, b, c] = mdeg.parts();
    if a == b && b == c {
        1
    } else if a == b || b == c || a == c {
        3
    } else {
        6
    }
}

/// Balanced pairwise summation; keeps intermediate denominators small.
/// Terms sharing a denominator are merged first by adding numerators.
pub fn sum_balanced(terms: Vec<RatFunc>) -> RatFunc {
    let mut buckets: BTreeMap<Poly, Poly> = BTreeMap::new();
    for f in terms {
        if f.is_zero() {
            continue;
        }
        let (num, den) = (f.num().clone(), f.den().clone());
        match buckets.get_mut(&den) {
            Some(acc) => *acc = &*acc + &num,
            None => {
                buckets.insert(den, num);
            }
        }
    }
    let mut terms: Vec<RatFunc> = buckets
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .map(|(d, n)| RatFunc::new(n, d).expect("nonzero denominator"))
        .collect();
    if terms.is_empty() {
        return RatFunc::zero();
    }
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            next.push(match it.next() {
                Some(b) => a + b,
                None => a,
            });
        }
        terms = next;
    }
    terms.pop().unwrap()
}

/// `value / aut`.
pub fn weighted(value: &RatFunc, aut: u64) -> RatFunc {
    value.scale(&Rat::new(1.into(), BigInt::from(aut)))
}

/// Turns per-row symbolic sums into a table, checking every sum is constant.
pub fn table_from_sums(
    degree: u32,
    mode: Mode,
    sums: BTreeMap<MultiDegree, RatFunc>,
) -> Result<ContributionTable> {
    let mut rows = BTreeMap::new();
    for (m, f) in sums {
        let v = f.constant_value().ok_or_else(|| Error::NotConstant {
            mdeg: format!("{m}"),
        })?;
        rows.insert(m, v);
    }
    ContributionTable::new(degree, mode, rows)
}

/// Groups `(class, contribution)` pairs by multi-degree and sums them.
pub fn group_sums<'a, I>(mode: Mode, items: I) -> BTreeMap<MultiDegree, RatFunc>
where
    I: IntoIterator<Item = (&'a GraphClass, &'a RatFunc)>,
{
    let mut groups: BTreeMap<MultiDegree, Vec<RatFunc>> = BTreeMap::new();
    for (class, value) in items {
        groups
            .entry(class.tree.multidegree(mode))
            .or_default()
            .push(weighted(value, class.aut));
    }
    groups
        .into_iter()
        .map(|(m, terms)| (m, sum_balanced(terms)))
        .collect()
}

/// Every class of degree `d` with its split-evaluator contribution (without
/// the `1/aut`), evaluated sequentially with a shared memo.
pub fn class_contributions(d: u32) -> Result<Vec<(GraphClass, RatFunc)>> {
    let memo = RefCell::new(BTreeMap::new());
    Ok(enumerate_classes(d)?
        .into_iter()
        .map(|c| {
            let v = contribution_split(&c.tree, &memo);
            (c, v)
        })
        .collect())
}

pub fn build_table(d: u32, mode: Mode) -> Result<ContributionTable> {
    let contribs = class_contributions(d)?;
    let sums = group_sums(mode, contribs.iter().map(|(c, v)| (c, v)));
    table_from_sums(d, mode, sums)
}

pub fn component_contribution(d: u32, mdeg: &MultiDegree) -> Result<Rat> {
    if mdeg.total() != d {
        return Err(Error::InvalidMultiDegree(format!("{mdeg} in degree {d}")));
    }
    let contribs = class_contributions(d)?;
    let terms = contribs
        .iter()
        .filter(|(c, _)| c.tree.multidegree(mdeg.mode()) == *mdeg)
        .map(|(c, v)| weighted(v, c.aut))
        .collect();
    sum_balanced(terms)
        .constant_value()
        .ok_or_else(|| Error::NotConstant {
            mdeg: format!("{mdeg}"),
        })
}

pub fn total_invariant(d: u32) -> Result<Rat> {
    Ok(build_table(d, Mode::Unordered)?.total().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::rat;

    #[test]
    fn symmetry_factors() {
        assert_eq!(symmetry_factor(&MultiDegree::unordered([5, 0, 0])), 3);
        assert_eq!(symmetry_factor(&MultiDegree::unordered([2, 1, 0])), 6);
        assert_eq!(symmetry_factor(&MultiDegree::unordered([1, 1, 1])), 1);
        assert_eq!(symmetry_factor(&MultiDegree::unordered([2, 2, 0])), 3);
    }

    #[test]
    fn degree_two_components() {
        assert_eq!(
            component_contribution(2, &MultiDegree::unordered([1, 1, 0])).unwrap(),
            rat(18, 1)
        );
        assert_eq!(
            component_contribution(2, &MultiDegree::unordered([2, 0, 0])).unwrap(),
            rat(63, 4)
        );
        assert_eq!(
            component_contribution(1, &MultiDegree::ordered([0, 0, 1])).unwrap(),
            rat(3, 1)
        );
        assert!(component_contribution(2, &MultiDegree::unordered([1, 0, 0])).is_err());
    }

    #[test]
    fn degree_one_ordered() {
        let t = build_table(1, Mode::Ordered).unwrap();
        assert_eq!(t.rows().len(), 3);
        assert!(t.rows().values().all(|v| *v == rat(3, 1)));
        assert_eq!(*t.total(), rat(9, 1));
    }

    #[test]
    fn table_rejects_mismatched_rows() {
        let mut rows = BTreeMap::new();
        rows.insert(MultiDegree::unordered([2, 0, 0]), rat(1, 1));
        assert!(ContributionTable::new(3, Mode::Unordered, rows.clone()).is_err());
        assert!(ContributionTable::new(2, Mode::Ordered, rows).is_err());
    }

    #[test]
    fn zero_rows_dropped() {
        let mut rows = BTreeMap::new();
        rows.insert(MultiDegree::unordered([2, 0, 0]), rat(0, 1));
        rows.insert(MultiDegree::unordered([1, 1, 0]), rat(18, 1));
        let t = ContributionTable::new(2, Mode::Unordered, rows).unwrap();
        assert_eq!(t.rows().len(), 1);
    }
}
