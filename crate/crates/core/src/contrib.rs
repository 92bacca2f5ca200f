//! Fixed-locus contributions.
//!
//! A localisation graph contributes
//! `e(π⋆f⋆𝒪(3)) / (e(LogOb) · e(N^vir))`, integrated over the fixed locus and
//! excluding the `1/|Aut|` of the graph. Two independent evaluators are
//! provided:
//!
//! * [`contribution_direct`] assembles the three Euler classes factor by
//!   factor from the graph;
//! * [`contribution_split`] cuts the graph at the marked vertex into atomic
//!   pieces and multiplies their closed-form contributions by normal-bundle
//!   defects. The numerator and LogOb defects cancel at every cut.
//!
//! Sign convention: a flag weight is `(λ_far − λ_near)/deg`. The node
//! smoothing and tangent directions entering the normal bundle use the
//! opposite sign, `(λ_near − λ_far)/deg`, the weight of the tangent line of
//! the edge at the vertex.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::One;

use crate::dmint::{factorial, series_integral};
use crate::exactq::{rat, FixedPoint, Poly, Rat, RatFunc, Weight};
use crate::locgraph::{Branch, CanonKey, LocGraph, RootedTree};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evaluator {
    Direct,
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contribution {
    pub value: RatFunc,
    pub graph: CanonKey,
    pub evaluator: Evaluator,
}

/// Memo table for the splitting recursion, keyed on canonical keys of
/// (sub)graphs. Values are deterministic, so racing inserts are harmless.
pub trait Memo {
    fn lookup(&self, key: &CanonKey) -> Option<RatFunc>;
    fn store(&self, key: CanonKey, value: RatFunc);
}

/// Disables memoisation.
pub struct NoMemo;

impl Memo for NoMemo {
    fn lookup(&self, _: &CanonKey) -> Option<RatFunc> {
        None
    }
    fn store(&self, _: CanonKey, _: RatFunc) {}
}

impl Memo for RefCell<BTreeMap<CanonKey, RatFunc>> {
    fn lookup(&self, key: &CanonKey) -> Option<RatFunc> {
        self.borrow().get(key).cloned()
    }
    fn store(&self, key: CanonKey, value: RatFunc) {
        self.borrow_mut().insert(key, value);
    }
}

fn linear(w: Weight) -> Poly {
    w.to_poly()
}

fn inv_int(n: i64) -> Rat {
    rat(1, n)
}

fn big(n: &num_bigint::BigUint) -> BigInt {
    BigInt::from(n.clone())
}

/// `(λ_near − λ_far)/deg`.
fn tangent_weight(near: FixedPoint, far: FixedPoint, degree: u32) -> RatFunc {
    RatFunc::from_poly(linear(near.lambda() - far.lambda()).scale(&inv_int(degree as i64)))
}

/// `e(T_{pᵢ}ℙ²) = ∏_{j≠i} (λᵢ − λⱼ)`.
fn tangent_euler(p: FixedPoint) -> Poly {
    FixedPoint::ALL
        .iter()
        .filter(|&&q| q != p)
        .map(|&q| linear(p.lambda() - q.lambda()))
        .fold(Poly::one(), |acc, f| &acc * &f)
}

fn three_lambda(p: FixedPoint) -> Poly {
    linear(3 * p.lambda())
}

/// Numerator and denominator collected separately and reduced once.
struct Product {
    num: Poly,
    den: Poly,
}

impl Product {
    fn new() -> Self {
        Product {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    fn mul(&mut self, p: &Poly) {
        self.num = &self.num * p;
    }

    fn div(&mut self, p: &Poly) {
        self.den = &self.den * p;
    }

    fn mul_pow(&mut self, p: &Poly, exp: i64) {
        if exp >= 0 {
            self.mul(&p.pow(exp as u32));
        } else {
            self.div(&p.pow((-exp) as u32));
        }
    }

    fn mul_rf(&mut self, f: &RatFunc) {
        self.mul(f.num());
        self.div(f.den());
    }

    fn finish(self) -> RatFunc {
        RatFunc::new(self.num, self.den).expect("denominator is a product of nonzero weights")
    }
}

/// Closed form for the single-edge graph of degree `d` from the marked
/// point `p_i` to `p_j`.
pub fn atomic_contribution(marked: FixedPoint, far: FixedPoint, d: u32) -> Result<RatFunc> {
    if marked == far {
        return Err(Error::LabelClash(marked.index()));
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let (li, lj) = (marked.lambda(), far.lambda());
    let di = d as i64;
    let mut prod = Product::new();
    for a in 1..di {
        prod.mul(&linear(a * li + (3 * di - a) * lj));
    }
    for b in 0..di {
        prod.mul(&linear((3 * di - b) * li + b * lj));
    }
    prod.div(&linear(lj - li).pow(2 * d - 1));
    let fact = big(&factorial(d as usize));
    let mut scalar = Rat::new(BigInt::one(), BigInt::from(di) * &fact * &fact);
    if d % 2 == 1 {
        scalar = -scalar;
    }
    let value = prod.finish();
    Ok(value.scale(&scalar))
}

pub fn flag_weight(g: &LocGraph, vertex: usize, edge: usize) -> Result<RatFunc> {
    let e = g
        .edges()
        .get(edge)
        .ok_or(Error::NotIncident { vertex, edge })?;
    let far = e.other(vertex).ok_or(Error::NotIncident { vertex, edge })?;
    let labels = g.labels();
    Ok(tangent_weight(labels[far], labels[vertex], e.degree))
}

/// Weights of `H⁰(C, f⋆𝒪(3))` over the fixed locus, via the normalisation
/// sequence: every edge contributes its `3e+1` section weights, every
/// vertex `(3λ)^{1−val}` (one factor for a contracted component, one inverse
/// factor per node).
pub fn o3_numerator(g: &LocGraph) -> RatFunc {
    let mut prod = Product::new();
    push_o3(g, &mut prod);
    prod.finish()
}

fn push_o3(g: &LocGraph, prod: &mut Product) {
    let labels = g.labels();
    for e in g.edges() {
        let (li, lj) = (labels[e.u].lambda(), labels[e.v].lambda());
        let n = 3 * e.degree as i64;
        for a in 0..=n {
            prod.mul(&linear((n - a) * li + a * lj));
        }
        prod.mul_rf(&RatFunc::from_rat(inv_int(e.degree as i64).pow(n as i32 + 1)));
    }
    for (v, &label) in labels.iter().enumerate() {
        prod.mul_pow(&three_lambda(label), 1 - g.valence(v) as i64);
    }
}

/// `e(LogOb)` over the fixed locus: with the graph oriented away from the
/// marking, each unmarked leaf gives a target offset `3λ_leaf` and each
/// vertex with `c ≥ 2` children gives `c − 1` relations `3λ_v` that divide.
pub fn logob_weight(g: &LocGraph) -> RatFunc {
    let mut prod = Product::new();
    push_logob_inverse(g, &mut prod);
    prod.finish().recip().expect("LogOb weight is nonzero")
}

fn push_logob_inverse(g: &LocGraph, prod: &mut Product) {
    let labels = g.labels();
    for (v, &label) in labels.iter().enumerate() {
        let val = g.valence(v) as i64;
        let children = if v == g.marked() { val } else { val - 1 };
        if children == 0 {
            prod.div(&three_lambda(label));
        } else if children >= 2 {
            prod.mul_pow(&three_lambda(label), children - 1);
        }
    }
}

/// `1/e(N^vir)` integrated over the fixed locus, including the `1/deg`
/// automorphisms of every edge cover.
pub fn normal_bundle_inverse(g: &LocGraph) -> RatFunc {
    let mut prod = Product::new();
    push_normal_bundle(g, &mut prod);
    prod.finish()
}

fn push_normal_bundle(g: &LocGraph, prod: &mut Product) {
    let labels = g.labels();
    for e in g.edges() {
        let (pi, pj) = (labels[e.u], labels[e.v]);
        let pk = pi.third(pj);
        let d = e.degree as i64;
        // moving sections of the pulled-back tangent bundle, modulo
        // reparametrisation
        let fact = big(&factorial(e.degree as usize));
        let mut scalar = Rat::new(
            BigInt::from(d).pow(2 * e.degree),
            &fact * &fact * BigInt::from(d),
        );
        if e.degree % 2 == 1 {
            scalar = -scalar;
        }
        prod.mul_rf(&RatFunc::from_rat(scalar));
        prod.div(&linear(pi.lambda() - pj.lambda()).pow(2 * e.degree));
        for a in 0..=d {
            let form = a * pi.lambda() + (d - a) * pj.lambda() - d * pk.lambda();
            prod.div(&linear(form));
        }
        prod.mul_rf(&RatFunc::from_rat(Rat::from_integer(BigInt::from(d).pow(e.degree + 1))));
    }
    for v in 0..g.vertex_count() {
        let p = labels[v];
        let flags: Vec<RatFunc> = g
            .incident(v)
            .map(|ei| {
                let e = &g.edges()[ei];
                tangent_weight(p, labels[e.other(v).unwrap()], e.degree)
            })
            .collect();
        let marked = v == g.marked();
        prod.mul_pow(&tangent_euler(p), flags.len() as i64 - 1);
        prod.mul_rf(&vertex_factor(&flags, marked));
    }
}

fn vertex_factor(tangents: &[RatFunc], marked: bool) -> RatFunc {
    match (tangents.len(), marked) {
        (1, false) => tangents[0].clone(),
        (1, true) => RatFunc::one(),
        (2, false) => (&tangents[0] + &tangents[1])
            .recip()
            .expect("node smoothing weight is nonzero"),
        (_, m) => series_integral(tangents, m as usize).expect("stable contracted vertex"),
    }
}

pub fn contribution_direct(g: &LocGraph) -> RatFunc {
    let mut prod = Product::new();
    push_o3(g, &mut prod);
    push_logob_inverse(g, &mut prod);
    push_normal_bundle(g, &mut prod);
    prod.finish()
}

/// Normal-bundle defect when a marked vertex at `pᵢ` with `k ≥ 2` branches
/// is split into `k` single-branch graphs: `e(T_{pᵢ})^{k−1}` times the
/// integral over `M̄₀,ₖ₊₁` of the smoothing factors.
pub fn defect_case1(root: FixedPoint, flags: &[(FixedPoint, u32)]) -> Result<RatFunc> {
    if flags.len() < 2 {
        return Err(Error::TooFewFlags {
            op: "defect_case1",
            min: 2,
            got: flags.len(),
        });
    }
    let tangents = flag_tangents(root, flags)?;
    let integral = series_integral(&tangents, 1)?;
    let euler = RatFunc::from_poly(tangent_euler(root).pow(flags.len() as u32 - 1));
    Ok(euler * integral)
}

fn flag_tangents(at: FixedPoint, flags: &[(FixedPoint, u32)]) -> Result<Vec<RatFunc>> {
    flags
        .iter()
        .map(|&(far, deg)| {
            if far == at {
                Err(Error::LabelClash(at.index()))
            } else if deg == 0 {
                Err(Error::ZeroDegree)
            } else {
                Ok(tangent_weight(at, far, deg))
            }
        })
        .collect()
}

/// Normal-bundle defect when a marked leaf at `root` joined by an edge of
/// degree `d0` to `central` (which carries `remaining` further branches) is
/// split into the atomic edge and the graph re-marked at `central`.
///
/// The defect depends on `root` through the tangent weight of the removed
/// edge at `central`.
pub fn defect_case2(
    root: FixedPoint,
    central: FixedPoint,
    d0: u32,
    remaining: &[(FixedPoint, u32)],
) -> Result<RatFunc> {
    if remaining.is_empty() {
        return Err(Error::TooFewFlags {
            op: "defect_case2",
            min: 1,
            got: 0,
        });
    }
    let tau0 = flag_tangents(central, &[(root, d0)])?.remove(0);
    let rest = flag_tangents(central, remaining)?;
    let euler = RatFunc::from_poly(tangent_euler(central));
    if rest.len() == 1 {
        let smoothing = &tau0 + &rest[0];
        return (&tau0 * &smoothing).recip().map(|inv| euler * inv);
    }
    let mut all = Vec::with_capacity(rest.len() + 1);
    all.push(tau0.clone());
    all.extend(rest.iter().cloned());
    let input = series_integral(&all, 0)?;
    let rerooted = series_integral(&rest, 1)?;
    Ok(euler * input * (&tau0 * &rerooted).recip()?)
}

/// Splitting evaluator, memoised on canonical keys of every subgraph met.
pub fn contribution_split<M: Memo + ?Sized>(tree: &RootedTree, memo: &M) -> RatFunc {
    let key = tree.key();
    if let Some(v) = memo.lookup(&key) {
        return v;
    }
    let value = split_uncached(tree, memo);
    memo.store(key, value.clone());
    value
}

fn split_uncached<M: Memo + ?Sized>(tree: &RootedTree, memo: &M) -> RatFunc {
    let root = tree.label();
    match tree.branches() {
        [] => panic!("a localisation graph has positive degree"),
        [only] if only.child().is_leaf() => {
            atomic_contribution(root, only.child().label(), only.degree())
                .expect("adjacent labels differ")
        }
        [only] => {
            // case II: re-mark at the far end of the unique edge
            let central = only.child();
            let flags: Vec<(FixedPoint, u32)> = central
                .branches()
                .iter()
                .map(|b| (b.child().label(), b.degree()))
                .collect();
            let defect = defect_case2(root, central.label(), only.degree(), &flags)
                .expect("valid case II split");
            let atomic = atomic_contribution(root, central.label(), only.degree())
                .expect("adjacent labels differ");
            let rest = contribution_split(central, memo);
            defect * atomic * rest
        }
        many => {
            // case I: one single-branch graph per branch at the marked vertex
            let flags: Vec<(FixedPoint, u32)> = many
                .iter()
                .map(|b| (b.child().label(), b.degree()))
                .collect();
            let mut acc = defect_case1(root, &flags).expect("valid case I split");
            for b in many {
                let piece = single_branch(root, b);
                acc = acc * contribution_split(&piece, memo);
            }
            acc
        }
    }
}

fn single_branch(root: FixedPoint, b: &Branch) -> RootedTree {
    RootedTree::new(root, alloc::vec![Branch::new(b.degree(), Arc::clone(b.child()))])
}

pub fn evaluate(g: &LocGraph, evaluator: Evaluator) -> Contribution {
    let tree = g.rooted();
    let value = match evaluator {
        Evaluator::Direct => contribution_direct(g),
        Evaluator::Split => contribution_split(&tree, &NoMemo),
    };
    Contribution {
        value,
        graph: tree.key(),
        evaluator,
    }
}
