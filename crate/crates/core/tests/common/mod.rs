//! Brute-force generator over vertex-numbered trees, shared by test targets.
#![allow(dead_code)]

use logtangent_core::exactq::FixedPoint;
use logtangent_core::locgraph::{Edge, LocGraph};

/// All labeled trees on `n >= 2` vertices, from Prüfer sequences.
pub fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);

        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn labelings(n: usize) -> Vec<Vec<FixedPoint>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|l| {
                FixedPoint::ALL.into_iter().map(move |p| {
                    let mut l = l.clone();
                    l.push(p);
                    l
                })
            })
            .collect();
    }
    out
}

/// Every marked, labeled, degree-weighted tree of total degree `d` with
/// numbered vertices.
pub fn naive_graphs(d: u32) -> Vec<LocGraph> {
    let mut out = Vec::new();
    for n in 2..=(d as usize + 1) {
        let trees = labeled_trees(n);
        let comps = compositions(d, n - 1);
        for tree in &trees {
            for labels in labelings(n) {
                if tree.iter().any(|&(u, v)| labels[u] == labels[v]) {
                    continue;
                }
                for comp in &comps {
                    let edges: Vec<Edge> = tree
                        .iter()
                        .zip(comp)
                        .map(|(&(u, v), &degree)| Edge { u, v, degree })
                        .collect();
                    for marked in 0..n {
                        out.push(LocGraph::new(labels.clone(), edges.clone(), marked).unwrap());
                    }
                }
            }
        }
    }
    out
}
