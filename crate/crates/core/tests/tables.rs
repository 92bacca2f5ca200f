use std::collections::BTreeMap;

use logtangent_core::aggregate::{
    build_table, class_contributions, component_contribution, group_sums, symmetry_factor,
    total_invariant, ContributionTable,
};
use logtangent_core::contrib::contribution_direct;
use logtangent_core::exactq::{parse_rat, rat, Rat, RatFunc};
use logtangent_core::locgraph::{multidegree, Mode, MultiDegree};

mod common;

fn expected(d: u32) -> Vec<([u32; 3], &'static str)> {
    match d {
        1 => vec![([1, 0, 0], "9")],
        2 => vec![([2, 0, 0], "63/4"), ([1, 1, 0], "18")],
        3 => vec![([3, 0, 0], "55"), ([2, 1, 0], "162"), ([1, 1, 1], "27")],
        4 => vec![
            ([4, 0, 0], "4095/16"),
            ([3, 1, 0], "936"),
            ([2, 2, 0], "1089/2"),
            ([2, 1, 1], "576"),
        ],
        5 => vec![
            ([5, 0, 0], "34884/25"),
            ([4, 1, 0], "6120"),
            ([3, 2, 0], "8190"),
            ([3, 1, 1], "4680"),
            ([2, 2, 1], "5040"),
        ],
        _ => unreachable!(),
    }
}

fn expected_table(d: u32) -> ContributionTable {
    let rows: BTreeMap<MultiDegree, Rat> = expected(d)
        .into_iter()
        .map(|(p, v)| (MultiDegree::unordered(p), parse_rat(v).unwrap()))
        .collect();
    ContributionTable::new(d, Mode::Unordered, rows).unwrap()
}

#[test]
fn tables_through_degree_five() {
    let totals = ["9", "135/4", "244", "36999/16", "635634/25"];
    for d in 1..=5 {
        let t = build_table(d, Mode::Unordered).unwrap();
        assert_eq!(t, expected_table(d), "d={d}");
        assert_eq!(*t.total(), parse_rat(totals[d as usize - 1]).unwrap());
    }
}

#[test]
fn weight_independence_and_specialization() {
    let points = [rat(1, 97), rat(113, 59)];
    for d in 1..=5 {
        let contribs = class_contributions(d).unwrap();
        for mode in [Mode::Ordered, Mode::Unordered] {
            let sums = group_sums(mode, contribs.iter().map(|(c, v)| (c, v)));
            for (m, s) in &sums {
                let value = s.constant_value().unwrap_or_else(|| panic!("{m} not constant"));
                for t0 in &points {
                    let pointwise: Rat = contribs
                        .iter()
                        .filter(|(c, _)| c.tree.multidegree(mode) == *m)
                        .map(|(c, v)| v.specialize(t0).unwrap() / Rat::from_integer(c.aut.into()))
                        .sum();
                    assert_eq!(pointwise, value, "{m} at {t0}");
                }
            }
        }
    }
}

#[test]
fn ordered_and_unordered_agree() {
    for d in 1..=4 {
        let ordered = build_table(d, Mode::Ordered).unwrap();
        let unordered = build_table(d, Mode::Unordered).unwrap();
        assert_eq!(ordered.to_unordered(), unordered);
        for (m, v) in ordered.rows() {
            let u = unordered.rows()[&m.to_unordered()].clone();
            assert_eq!(*v, u / Rat::from_integer(symmetry_factor(&m.to_unordered()).into()));
        }
    }
}

#[test]
fn single_components() {
    assert_eq!(
        component_contribution(2, &MultiDegree::unordered([1, 1, 0])).unwrap(),
        rat(18, 1)
    );
    assert_eq!(
        component_contribution(1, &MultiDegree::ordered([0, 0, 1])).unwrap(),
        rat(3, 1)
    );
    assert_eq!(total_invariant(2).unwrap(), rat(135, 4));
}

/// Summing over every vertex-numbered graph with weight `1/n!` avoids the
/// canonical forms and automorphism counts entirely.
#[test]
fn labeled_sum_oracle() {
    for d in 1..=3 {
        let mut rows: BTreeMap<MultiDegree, RatFunc> = BTreeMap::new();
        for g in common::naive_graphs(d) {
            let n: i64 = (1..=g.vertex_count() as i64).product();
            let v = contribution_direct(&g).scale(&rat(1, n));
            let e = rows.entry(multidegree(&g, Mode::Unordered)).or_insert_with(RatFunc::zero);
            *e = &*e + &v;
        }
        let rows = rows.into_iter().map(|(m, f)| (m, f.constant_value().unwrap())).collect();
        let t = ContributionTable::new(d, Mode::Unordered, rows).unwrap();
        assert_eq!(t, expected_table(d));
    }
}
