use logtangent_core::aggregate::{build_table, ContributionTable};
use logtangent_core::conjecture::{
    combinatorial_lhs, combinatorial_lhs_enumerated, hyper_d00, hyper_d1d2, partitions,
    solve_degeneration, verify_conjectures, Check, Status,
};
use logtangent_core::exactq::{parse_rat, rat, Rat};
use logtangent_core::locgraph::{Mode, MultiDegree};
use logtangent_core::Error;

/// Euler's pentagonal-number recurrence.
fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i64 = 0;
        for k in 1.. {
            let k = k as i64;
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i64;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += sign * p[m - g2] as i64;
            }
        }
        p[m] = acc as u64;
    }
    p
}

#[test]
fn partition_enumeration_complete() {
    let counts = partition_counts(60);
    assert_eq!(counts[60], 966467);
    for d in 1..=60u32 {
        let ps = partitions(d);
        assert_eq!(ps.len() as u64, counts[d as usize], "d={d}");
        if d <= 12 {
            for t in &ps {
                assert_eq!(t.parts.iter().sum::<u32>(), d);
                assert!(t.parts.windows(2).all(|w| w[0] >= w[1]));
            }
        }
    }
}

#[test]
fn identity_through_two_hundred() {
    for d in 1..=200 {
        assert_eq!(combinatorial_lhs(d), hyper_d00(d), "d={d}");
    }
}

#[test]
fn exponential_formula_matches_partition_sum() {
    assert_eq!(combinatorial_lhs_enumerated(2), rat(9, 1) - rat(15, 4));
    for d in 1..=30 {
        assert_eq!(combinatorial_lhs(d), combinatorial_lhs_enumerated(d), "d={d}");
    }
}

#[test]
fn hypergeometric_against_tables() {
    let tables: Vec<ContributionTable> =
        (1..=4).map(|d| build_table(d, Mode::Unordered).unwrap()).collect();
    let report = verify_conjectures(4, &tables);
    assert!(report.iter().all(|e| e.status == Status::Pass), "{report:?}");
    let count = |c: Check| report.iter().filter(|e| e.check == c).count();
    assert_eq!(count(Check::Combinatorial), 4);
    assert_eq!(count(Check::HyperD00), 4);
    assert_eq!(count(Check::HyperD1D2), 1 + 1 + 2);
    assert_eq!(count(Check::Integrality), 1 + 2 + 3 + 4);
    let e = report
        .iter()
        .find(|e| e.check == Check::Integrality && e.mdeg == Some(MultiDegree::unordered([2, 2, 0])))
        .unwrap();
    assert_eq!(e.lhs, rat(726, 1));
}

#[test]
fn failures_are_reported() {
    let rows = [([2, 0, 0], rat(1, 3)), ([1, 1, 0], rat(18, 1))]
        .into_iter()
        .map(|(p, v)| (MultiDegree::unordered(p), v))
        .collect();
    let bad = ContributionTable::new(2, Mode::Unordered, rows).unwrap();
    let report = verify_conjectures(2, &[bad]);
    let failed: Vec<_> = report.iter().filter(|e| e.status == Status::Fail).collect();
    assert_eq!(failed.len(), 2);
    assert!(failed.iter().any(|e| e.check == Check::HyperD00 && e.rhs == rat(21, 4)));
    assert!(failed.iter().any(|e| e.check == Check::Integrality && e.lhs == rat(4, 9)));
}

#[test]
fn hyper_values() {
    assert_eq!(hyper_d00(3), rat(55, 3));
    assert_eq!(hyper_d1d2(2, 1), rat(27, 1));
    assert_eq!(hyper_d1d2(1, 2), rat(27, 1));
    assert_eq!(hyper_d1d2(3, 2), rat(1365, 1));
}

#[test]
fn degeneration_pictures() {
    let t2 = build_table(2, Mode::Unordered).unwrap();
    let p2 = solve_degeneration(2, &t2).unwrap();
    let emb = &p2.arrows["embedded"];
    assert_eq!(emb[&MultiDegree::unordered([1, 1, 0])], rat(18, 1));
    assert_eq!(emb[&MultiDegree::unordered([2, 0, 0])], rat(9, 1));
    assert_eq!(emb.values().sum::<Rat>(), rat(27, 1));
    assert_eq!(*p2.embedded_count(), rat(27, 1));
    assert_eq!(p2.total(), rat(135, 4));
    assert_eq!(p2.balance[0].to_string(), "63/4 = 9 + 9·(3/4)");

    let t3 = build_table(3, Mode::Unordered).unwrap();
    let p3 = solve_degeneration(3, &t3).unwrap();
    let emb = &p3.arrows["embedded"];
    for (parts, n) in [([1, 1, 1], 27), ([2, 1, 0], 162), ([3, 0, 0], 45)] {
        assert_eq!(emb[&MultiDegree::unordered(parts)], rat(n, 1));
    }
    assert_eq!(emb.values().sum::<Rat>(), rat(234, 1));
    assert_eq!(p3.balance[0].to_string(), "55 = 45 + 9·(10/9)");
    assert_eq!(p3.total(), parse_rat("244").unwrap());
}

#[test]
fn degeneration_rejects() {
    let t4 = ContributionTable::new(4, Mode::Unordered, Default::default()).unwrap();
    assert_eq!(solve_degeneration(4, &t4).unwrap_err(), Error::UnsupportedDegree(4));

    let mut rows = build_table(2, Mode::Unordered).unwrap().rows().clone();
    rows.insert(MultiDegree::unordered([1, 1, 0]), rat(17, 1));
    let off = ContributionTable::new(2, Mode::Unordered, rows).unwrap();
    assert!(matches!(solve_degeneration(2, &off), Err(Error::InconsistentTable(_))));

    let t3 = build_table(3, Mode::Unordered).unwrap();
    assert!(solve_degeneration(2, &t3).is_err());
}
