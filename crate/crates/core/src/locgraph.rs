//! Localisation graphs: the decorated trees indexing torus-fixed loci of
//! one-pointed genus-zero stable maps to the plane.
//!
//! A graph has a fixed point `pᵢ` on every vertex, a covering degree on every
//! edge (an edge between `pᵢ` and `pⱼ` is a cover of the coordinate line
//! through them) and one marked vertex carrying the marking `x`.
//!
//! Isomorphism classes are represented by [`RootedTree`]s hung from the
//! marked vertex with branches in canonical order. The canonical text form,
//! e.g. `(0 x (1:1)(1:1))`, is the [`CanonKey`]: a root `(L x ...)` followed by
//! branches `(L:D ...)` where `L` is the fixed point and `D` the edge degree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::exactq::FixedPoint;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub degree: u32,
}

impl Edge {
    /// The endpoint opposite to `vertex`, if the edge touches it.
    pub fn other(&self, vertex: usize) -> Option<usize> {
        if self.u == vertex {
            Some(self.v)
        } else if self.v == vertex {
            Some(self.u)
        } else {
            None
        }
    }
}

/// A validated localisation graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocGraph {
    labels: Vec<FixedPoint>,
    edges: Vec<Edge>,
    marked: usize,
}

impl LocGraph {
    /// Checks that the edges form a tree on the vertices, that adjacent
    /// vertices map to distinct fixed points and that all degrees are positive.
    pub fn new(labels: Vec<FixedPoint>, edges: Vec<Edge>, marked: usize) -> Result<Self> {
        let n = labels.len();
        let bad = |msg: &str| Err(Error::MalformedGraph(msg.to_string()));
        if marked >= n {
            return bad("marked vertex out of range");
        }
        if edges.is_empty() {
            return Err(Error::ZeroDegree);
        }
        if edges.len() + 1 != n {
            return bad("edge count is not vertex count minus one");
        }
        // union-find: a forest with n-1 edges on n vertices is a tree
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &edges {
            if e.u >= n || e.v >= n {
                return bad("edge endpoint out of range");
            }
            if e.degree == 0 {
                return bad("edge of degree zero");
            }
            if labels[e.u] == labels[e.v] {
                return Err(Error::LabelClash(labels[e.u].index()));
            }
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a == b {
                return bad("edges contain a cycle");
            }
            parent[a] = b;
        }
        Ok(LocGraph {
            labels,
            edges,
            marked,
        })
    }

    /// Parses the canonical text form produced by [`CanonKey`].
    pub fn from_key(key: &str) -> Result<Self> {
        Ok(RootedTree::parse(key)?.to_graph())
    }

    pub fn labels(&self) -> &[FixedPoint] {
        &self.labels
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn marked(&self) -> usize {
        self.marked
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.edges.iter().map(|e| e.degree).sum()
    }

    /// Indices of the edges incident to `vertex`.
    pub fn incident(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.u == vertex || e.v == vertex)
            .map(|(i, _)| i)
    }

    pub fn valence(&self, vertex: usize) -> usize {
        self.incident(vertex).count()
    }

    /// Canonical rooted form, hung from the marked vertex.
    pub fn rooted(&self) -> RootedTree {
        let mut adj: Vec<Vec<(usize, u32)>> = alloc::vec![Vec::new(); self.labels.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.degree));
            adj[e.v].push((e.u, e.degree));
        }
        fn build(
            v: usize,
            parent: Option<usize>,
            adj: &[Vec<(usize, u32)>],
            labels: &[FixedPoint],
        ) -> RootedTree {
            let branches = adj[v]
                .iter()
                .filter(|(w, _)| Some(*w) != parent)
                .map(|&(w, deg)| Branch::new(deg, Arc::new(build(w, Some(v), adj, labels))))
                .collect();
            RootedTree::new(labels[v], branches)
        }
        build(self.marked, None, &adj, &self.labels)
    }

    /// Applies `p₀ → p₁ → p₂ → p₀` to every vertex.
    pub fn rotate(&self) -> LocGraph {
        LocGraph {
            labels: self.labels.iter().map(|l| l.rotate()).collect(),
            edges: self.edges.clone(),
            marked: self.marked,
        }
    }
}

/// Canonical encoding of a localisation graph up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(String);

impl CanonKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An edge leaving a vertex of a [`RootedTree`] towards its child subtree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    degree: u32,
    child: Arc<RootedTree>,
    code: String,
}

impl Branch {
    pub fn new(degree: u32, child: Arc<RootedTree>) -> Self {
        let code = if child.code.is_empty() {
            format!("({}:{})", child.label, degree)
        } else {
            format!("({}:{} {})", child.label, degree, child.code)
        };
        Branch {
            degree,
            child,
            code,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn child(&self) -> &Arc<RootedTree> {
        &self.child
    }

    /// Total degree carried by the branch, edge included.
    pub fn weight(&self) -> u32 {
        self.degree + self.child.degree
    }
}

/// A localisation graph hung from its marked vertex, with branches sorted by
/// their canonical codes. Two trees are equal iff the graphs are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    label: FixedPoint,
    branches: Vec<Branch>,
    // concatenated branch codes
    code: String,
    degree: u32,
    aut: u64,
}

impl RootedTree {
    pub fn new(label: FixedPoint, mut branches: Vec<Branch>) -> Self {
        branches.sort_by(|a, b| a.code.cmp(&b.code));
        let mut code = String::new();
        let mut degree = 0;
        let mut aut: u64 = 1;
        let mut run = 0u64;
        for (i, b) in branches.iter().enumerate() {
            code.push_str(&b.code);
            degree += b.weight();
            aut *= b.child.aut;
            run = if i > 0 && branches[i - 1].code == b.code {
                run + 1
            } else {
                1
            };
            aut *= run;
        }
        RootedTree {
            label,
            branches,
            code,
            degree,
            aut,
        }
    }

    pub fn leaf(label: FixedPoint) -> Self {
        Self::new(label, Vec::new())
    }

    pub fn label(&self) -> FixedPoint {
        self.label
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Order of the automorphism group fixing the root.
    pub fn aut(&self) -> u64 {
        self.aut
    }

    pub fn is_leaf(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn key(&self) -> CanonKey {
        if self.code.is_empty() {
            CanonKey(format!("({} x)", self.label))
        } else {
            CanonKey(format!("({} x {})", self.label, self.code))
        }
    }

    pub fn vertex_count(&self) -> usize {
        1 + self
            .branches
            .iter()
            .map(|b| b.child.vertex_count())
            .sum::<usize>()
    }

    /// Flattens to a [`LocGraph`] in preorder; the root becomes vertex 0.
    pub fn to_graph(&self) -> LocGraph {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        fn walk(t: &RootedTree, labels: &mut Vec<FixedPoint>, edges: &mut Vec<Edge>) -> usize {
            let id = labels.len();
            labels.push(t.label);
            for b in &t.branches {
                let c = walk(&b.child, labels, edges);
                edges.push(Edge {
                    u: id,
                    v: c,
                    degree: b.degree,
                });
            }
            id
        }
        walk(self, &mut labels, &mut edges);
        LocGraph {
            labels,
            edges,
            marked: 0,
        }
    }

    pub fn multidegree(&self, mode: Mode) -> MultiDegree {
        let mut parts = [0u32; 3];
        fn walk(t: &RootedTree, parts: &mut [u32; 3]) {
            for b in &t.branches {
                parts[t.label.third(b.child.label).index()] += b.degree;
                walk(&b.child, parts);
            }
        }
        walk(self, &mut parts);
        MultiDegree::new(parts, mode)
    }

    /// Parses the canonical text form, e.g. `(0 x (1:2 (2:1)))`.
    pub fn parse(key: &str) -> Result<Self> {
        let mut p = KeyParser {
            s: key.as_bytes(),
            pos: 0,
        };
        let tree = p.node(true)?;
        if p.pos != p.s.len() {
            return Err(p.err());
        }
        if tree.is_leaf() {
            return Err(Error::ZeroDegree);
        }
        Ok(tree)
    }
}

struct KeyParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl KeyParser<'_> {
    fn err(&self) -> Error {
        Error::MalformedGraph(format!("bad canonical key at byte {}", self.pos))
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err())
        }
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        core::str::from_utf8(&self.s[start..self.pos])
            .ok()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| self.err())
    }

    // Returns (label, degree-of-incoming-edge) parsed subtree.
    fn node(&mut self, root: bool) -> Result<RootedTree> {
        let (tree, _) = self.node_with_degree(root)?;
        Ok(tree)
    }

    fn node_with_degree(&mut self, root: bool) -> Result<(RootedTree, u32)> {
        self.eat(b'(')?;
        let label = FixedPoint::from_index(self.number()? as usize)?;
        let degree = if root {
            self.eat(b' ')?;
            self.eat(b'x')?;
            0
        } else {
            self.eat(b':')?;
            let d = self.number()?;
            if d == 0 {
                return Err(self.err());
            }
            d
        };
        let mut branches = Vec::new();
        if self.s.get(self.pos) == Some(&b' ') {
            self.pos += 1;
            while self.s.get(self.pos) == Some(&b'(') {
                let (child, d) = self.node_with_degree(false)?;
                if child.label == label {
                    return Err(Error::LabelClash(label.index()));
                }
                branches.push(Branch::new(d, Arc::new(child)));
            }
            if branches.is_empty() {
                return Err(self.err());
            }
        }
        self.eat(b')')?;
        Ok((RootedTree::new(label, branches), degree))
    }
}

pub fn canonical_key_and_aut(g: &LocGraph) -> (CanonKey, u64) {
    let t = g.rooted();
    (t.key(), t.aut())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Ordered,
    Unordered,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ordered => "ordered",
            Mode::Unordered => "unordered",
        })
    }
}

/// Degrees `(d₀, d₁, d₂)` over the boundary lines `D₀, D₁, D₂`. Unordered
/// multi-degrees are stored sorted in descending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiDegree {
    parts: [u32; 3],
    mode: Mode,
}

impl MultiDegree {
    pub fn new(mut parts: [u32; 3], mode: Mode) -> Self {
        if mode == Mode::Unordered {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        MultiDegree { parts, mode }
    }

    pub fn ordered(parts: [u32; 3]) -> Self {
        Self::new(parts, Mode::Ordered)
    }

    pub fn unordered(parts: [u32; 3]) -> Self {
        Self::new(parts, Mode::Unordered)
    }

    pub fn parts(&self) -> [u32; 3] {
        self.parts
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn to_unordered(self) -> Self {
        Self::unordered(self.parts)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.parts;
        write!(f, "({a},{b},{c})")
    }
}

pub fn multidegree(g: &LocGraph, mode: Mode) -> MultiDegree {
    let mut parts = [0u32; 3];
    for e in g.edges() {
        parts[g.labels[e.u].third(g.labels[e.v]).index()] += e.degree;
    }
    MultiDegree::new(parts, mode)
}

/// One isomorphism class of localisation graphs.
#[derive(Debug, Clone)]
pub struct GraphClass {
    pub tree: Arc<RootedTree>,
    pub key: CanonKey,
    pub aut: u64,
}

/// Generates canonical rooted trees bottom-up: a tree is a label plus a
/// multiset of branches, and multisets are produced as non-decreasing runs
/// over the sorted candidate list, so no isomorphic duplicate is ever built.
#[derive(Default)]
struct Generator {
    trees: BTreeMap<(FixedPoint, u32), Vec<Arc<RootedTree>>>,
}

impl Generator {
    fn trees(&mut self, label: FixedPoint, degree: u32) -> Vec<Arc<RootedTree>> {
        if let Some(ts) = self.trees.get(&(label, degree)) {
            return ts.clone();
        }
        let mut candidates: Vec<Branch> = Vec::new();
        for child_label in FixedPoint::ALL.into_iter().filter(|&l| l != label) {
            for sub in 0..degree {
                for child in self.trees(child_label, sub) {
                    for e in 1..=degree - sub {
                        candidates.push(Branch::new(e, child.clone()));
                    }
                }
            }
        }
        candidates.sort_by(|a, b| a.code.cmp(&b.code));
        let mut out = Vec::new();
        let mut stack = Vec::new();
        fn extend(
            label: FixedPoint,
            candidates: &[Branch],
            start: usize,
            remaining: u32,
            stack: &mut Vec<Branch>,
            out: &mut Vec<Arc<RootedTree>>,
        ) {
            if remaining == 0 {
                out.push(Arc::new(RootedTree::new(label, stack.clone())));
                return;
            }
            for (i, b) in candidates.iter().enumerate().skip(start) {
                if b.weight() <= remaining {
                    stack.push(b.clone());
                    extend(label, candidates, i, remaining - b.weight(), stack, out);
                    stack.pop();
                }
            }
        }
        extend(label, &candidates, 0, degree, &mut stack, &mut out);
        self.trees.insert((label, degree), out.clone());
        out
    }
}

/// All isomorphism classes of total degree `d`, root label `p₀` first.
pub fn enumerate_classes(d: u32) -> Result<Vec<GraphClass>> {
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let mut gen = Generator::default();
    let mut out = Vec::new();
    for label in FixedPoint::ALL {
        for tree in gen.trees(label, d) {
            out.push(GraphClass {
                key: tree.key(),
                aut: tree.aut(),
                tree,
            });
        }
    }
    Ok(out)
}

pub fn enumerate_graphs(d: u32) -> Result<Vec<(LocGraph, u64)>> {
    Ok(enumerate_classes(d)?
        .into_iter()
        .map(|c| (c.tree.to_graph(), c.aut))
        .collect())
}
