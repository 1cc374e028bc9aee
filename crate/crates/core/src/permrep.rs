//! Concrete partial-permutation models and the refutation oracle.
//!
//! A model is a set of basis vectors split into `X` (the range of `p`) and
//! `Y` (the range of `q`), together with injections `h_i, v_j : Y -> X`;
//! `s_i` sends `e_y` to `e_{h_i(y)}` and `t_j` sends `e_y` to `e_{v_j(y)}`.
//!
//! Exact models are finite `(n, n)`-systems. Truncated models are balls of
//! radius `depth - 1` in the labelled tree of the universal system, rooted
//! at a point of `X`; labels not forced by the tree structure are drawn
//! from a seeded stream in creation order, so a deeper model with the same
//! seed extends a shallower one. Words of length `L` act exactly on basis
//! vectors within distance `depth - 1 - L` of the root.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check::{expect_true, Instance};
use crate::context::Context;
use crate::elements::Element;
use crate::error::{Error, Result};
use crate::freegroup::Family;
use crate::maps::{h_raw, spanning_projections, v_raw};
use crate::scalars::Scalar;
use crate::words::{Letter, Monomial, Side};

/// Upper bound on the number of basis vectors in a truncated model.
pub const MAX_BASIS: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Exact { k: usize },
    Truncated { depth: usize },
}

#[derive(Clone, Debug)]
struct Node {
    side: Side,
    dist: usize,
    /// For `X` points: `(label, parent)` with `x = h_label(parent)`.
    s_up: Option<(u32, usize)>,
    /// For `X` points: `(label, parent)` with `x = v_label(parent)`.
    t_up: Option<(u32, usize)>,
    /// For `Y` points: `h_i(y)` and `v_j(y)` when inside the model.
    s_down: Vec<Option<usize>>,
    t_down: Vec<Option<usize>>,
}

impl Node {
    fn new(ctx: &Context, side: Side, dist: usize) -> Self {
        let (a, b) = match side {
            Side::Q => (ctx.n() as usize, ctx.m() as usize),
            Side::P => (0, 0),
        };
        Node { side, dist, s_up: None, t_up: None, s_down: vec![None; a], t_down: vec![None; b] }
    }
}

/// A sparse vector over the model basis.
pub type Vector = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug)]
pub struct Model {
    ctx: Context,
    kind: ModelKind,
    seed: u64,
    nodes: Vec<Node>,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.descriptor())
    }
}

impl Model {
    /// `Y = {1..k}`, `X = {1..nk}`, `h_i(y) = (i-1)k + y` and
    /// `v_j(y) = pi((j-1)k + y)` for a seeded random permutation `pi` of `X`.
    pub fn exact(ctx: &Context, k: usize, seed: u64) -> Result<Model> {
        if ctx.n() != ctx.m() {
            return Err(Error::InvalidArgument(format!("exact models need n = m, got {ctx}")));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("exact models need k >= 1".into()));
        }
        let n = ctx.n() as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n * k).collect();
        perm.shuffle(&mut rng);
        let mut nodes: Vec<Node> = (0..n * k).map(|_| Node::new(ctx, Side::P, 0)).collect();
        nodes.extend((0..k).map(|_| Node::new(ctx, Side::Q, 0)));
        for y in 0..k {
            let yi = n * k + y;
            for i in 0..n {
                let x = i * k + y;
                nodes[yi].s_down[i] = Some(x);
                nodes[x].s_up = Some((i as u32 + 1, yi));
                let x = perm[i * k + y];
                nodes[yi].t_down[i] = Some(x);
                nodes[x].t_up = Some((i as u32 + 1, yi));
            }
        }
        Ok(Model { ctx: *ctx, kind: ModelKind::Exact { k }, seed, nodes })
    }

    /// The ball of radius `depth - 1` around a root in `X`.
    pub fn truncated(ctx: &Context, depth: usize, seed: u64) -> Result<Model> {
        if depth == 0 {
            return Err(Error::InvalidArgument("truncated models need depth >= 1".into()));
        }
        let (n, m) = (ctx.n(), ctx.m());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut nodes = vec![Node::new(ctx, Side::P, 0)];
        // Free labels of X points, indexed like `nodes`.
        let mut free: Vec<(Option<u32>, Option<u32>)> = vec![(Some(rng.gen_range(1..=n)), Some(rng.gen_range(1..=m)))];
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            let dist = nodes[v].dist;
            if dist + 1 >= depth {
                continue;
            }
            match nodes[v].side {
                Side::P => {
                    let (sl, tl) = free[v];
                    if let Some(label) = sl {
                        let y = nodes.len();
                        let mut node = Node::new(ctx, Side::Q, dist + 1);
                        node.s_down[label as usize - 1] = Some(v);
                        nodes.push(node);
                        free.push((None, None));
                        nodes[v].s_up = Some((label, y));
                        queue.push_back(y);
                    }
                    if let Some(label) = tl {
                        let y = nodes.len();
                        let mut node = Node::new(ctx, Side::Q, dist + 1);
                        node.t_down[label as usize - 1] = Some(v);
                        nodes.push(node);
                        free.push((None, None));
                        nodes[v].t_up = Some((label, y));
                        queue.push_back(y);
                    }
                }
                Side::Q => {
                    for i in 1..=n {
                        if nodes[v].s_down[i as usize - 1].is_none() {
                            let x = nodes.len();
                            let mut node = Node::new(ctx, Side::P, dist + 1);
                            node.s_up = Some((i, v));
                            nodes.push(node);
                            free.push((None, Some(rng.gen_range(1..=m))));
                            nodes[v].s_down[i as usize - 1] = Some(x);
                            queue.push_back(x);
                        }
                    }
                    for j in 1..=m {
                        if nodes[v].t_down[j as usize - 1].is_none() {
                            let x = nodes.len();
                            let mut node = Node::new(ctx, Side::P, dist + 1);
                            node.t_up = Some((j, v));
                            nodes.push(node);
                            free.push((Some(rng.gen_range(1..=n)), None));
                            nodes[v].t_down[j as usize - 1] = Some(x);
                            queue.push_back(x);
                        }
                    }
                }
            }
            if nodes.len() > MAX_BASIS {
                return Err(Error::InvalidArgument(format!("truncated model of depth {depth} exceeds {MAX_BASIS} states")));
            }
        }
        // Points on the boundary keep their free labels without a parent node.
        for (v, (sl, tl)) in free.iter().enumerate() {
            if nodes[v].side == Side::P {
                if nodes[v].s_up.is_none() {
                    nodes[v].s_up = sl.map(|l| (l, usize::MAX));
                }
                if nodes[v].t_up.is_none() {
                    nodes[v].t_up = tl.map(|l| (l, usize::MAX));
                }
            }
        }
        Ok(Model { ctx: *ctx, kind: ModelKind::Truncated { depth }, seed, nodes })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn descriptor(&self) -> String {
        let (n, m, seed) = (self.ctx.n(), self.ctx.m(), self.seed);
        match self.kind {
            ModelKind::Exact { k } => format!("exact:n={n},m={m},k={k},seed={seed}"),
            ModelKind::Truncated { depth } => format!("trunc:n={n},m={m},depth={depth},seed={seed}"),
        }
    }

    pub fn basis_len(&self) -> usize {
        self.nodes.len()
    }

    pub fn side(&self, b: usize) -> Side {
        self.nodes[b].side
    }

    /// Basis vectors on which every word of length `<= word_len` acts
    /// exactly.
    pub fn window(&self, word_len: usize) -> Result<Vec<usize>> {
        match self.kind {
            ModelKind::Exact { .. } => Ok((0..self.nodes.len()).collect()),
            ModelKind::Truncated { depth } => {
                if word_len + 1 > depth {
                    return Err(Error::WindowTooSmall { needed: word_len });
                }
                let radius = depth - 1 - word_len;
                Ok((0..self.nodes.len()).filter(|&b| self.nodes[b].dist <= radius).collect())
            }
        }
    }

    pub fn apply_letter(&self, l: Letter, b: usize) -> Option<usize> {
        let node = &self.nodes[b];
        let hit = match l {
            Letter::P => (node.side == Side::P).then_some(b),
            Letter::Q => (node.side == Side::Q).then_some(b),
            Letter::S(i) => node.s_down.get(i as usize - 1).copied().flatten(),
            Letter::T(j) => node.t_down.get(j as usize - 1).copied().flatten(),
            Letter::SStar(i) => node.s_up.filter(|&(l, _)| l == i).map(|(_, y)| y),
            Letter::TStar(j) => node.t_up.filter(|&(l, _)| l == j).map(|(_, y)| y),
        };
        hit.filter(|&v| v != usize::MAX)
    }

    pub fn apply_monomial(&self, w: &Monomial, b: usize) -> Option<usize> {
        w.letters().iter().rev().try_fold(b, |v, &l| self.apply_letter(l, v))
    }

    /// `x e_b`.
    pub fn apply_basis(&self, x: &Element, b: usize) -> Vector {
        let mut out = Vector::new();
        for (w, c) in x.terms() {
            if let Some(r) = self.apply_monomial(w, b) {
                let entry = out.entry(r).or_insert_with(|| Scalar::zero(self.ctx.field()));
                *entry = &*entry + c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `x v` for a sparse vector `v`.
    pub fn apply(&self, x: &Element, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&b, k) in v {
            for (r, c) in self.apply_basis(x, b) {
                let entry = out.entry(r).or_insert_with(|| Scalar::zero(self.ctx.field()));
                *entry = &*entry + &(&c * k);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Columns of `x` on the exactness window for its longest word.
    pub fn represent(&self, x: &Element) -> Result<Operator> {
        self.ctx.ensure_same(&x.ctx())?;
        let window = self.window(x.max_len())?;
        let columns = window.into_iter().map(|b| (b, self.apply_basis(x, b))).collect();
        Ok(Operator { columns })
    }

    /// A basis vector of the common window on which `x` and `y` differ.
    pub fn separates(&self, x: &Element, y: &Element) -> Result<Option<usize>> {
        let d = x.try_sub(y)?;
        let window = self.window(x.max_len().max(y.max_len()))?;
        Ok(window.into_iter().find(|&b| !self.apply_basis(&d, b).is_empty()))
    }
}

/// Columns of an operator restricted to a set of basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operator {
    pub columns: BTreeMap<usize, Vector>,
}

impl Operator {
    pub fn is_zero(&self) -> bool {
        self.columns.values().all(|c| c.is_empty())
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.columns.get(&col).and_then(|c| c.get(&row))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleVerdict {
    Refuted { model: String, basis: usize },
    NotRefuted,
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleVerdict::Refuted { model, basis } => write!(f, "Refuted {model} at basis vector {basis}"),
            OracleVerdict::NotRefuted => write!(f, "NotRefuted"),
        }
    }
}

/// Radius of the exactness window used by the oracle's truncated models.
pub const ORACLE_RADIUS: usize = 4;

/// The `trial`-th model the oracle builds for words of length `<= word_len`.
pub fn oracle_model(ctx: &Context, word_len: usize, seed: u64, trial: usize) -> Result<Model> {
    let model_seed = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(trial as u64);
    if ctx.n() == ctx.m() {
        Model::exact(ctx, 4 + 2 * trial, model_seed)
    } else {
        Model::truncated(ctx, word_len + 1 + ORACLE_RADIUS, model_seed)
    }
}

/// Compares `x` and `y` in `trials` seeded models; a separation proves
/// `x != y`, agreement proves nothing.
pub fn refute_equality(x: &Element, y: &Element, trials: usize, seed: u64) -> Result<OracleVerdict> {
    let ctx = x.ctx();
    ctx.ensure_same(&y.ctx())?;
    let len = x.max_len().max(y.max_len());
    for t in 0..trials {
        let model = oracle_model(&ctx, len, seed, t)?;
        if let Some(b) = model.separates(x, y)? {
            return Ok(OracleVerdict::Refuted { model: model.descriptor(), basis: b });
        }
    }
    Ok(OracleVerdict::NotRefuted)
}

/// Compares the symbolic `V(f)` and `H(f)` with the pointwise averages
/// `V(f)(x) = 1/m sum_j f(v_j(alpha(x)))` and
/// `H(f)(x) = 1/n sum_i f(h_i(beta(x)))` on the `X` points of the model.
pub fn check_dagger_formulas(model: &Model, depth: usize) -> Result<Vec<Instance>> {
    let ctx = model.ctx();
    let mut out = Vec::new();
    for f in spanning_projections(&ctx, Side::P, depth) {
        for (name, sym, up, across) in [("V", v_raw(&f), Family::S, Family::T), ("H", h_raw(&f), Family::T, Family::S)] {
            let window = model.window(sym.max_len())?;
            let k = ctx.size(across);
            let inv = Scalar::from_ratio(ctx.field(), 1, k as i64)?;
            let mut ok = true;
            let mut detail = None;
            for &x in &window {
                let col = model.apply_basis(&sym, x);
                let expected = if model.side(x) == Side::P {
                    let up_letter = match up {
                        Family::S => model.nodes[x].s_up,
                        Family::T => model.nodes[x].t_up,
                    };
                    let parent = up_letter.map(|(_, y)| y).filter(|&y| y != usize::MAX);
                    let mut total = Scalar::zero(ctx.field());
                    if let Some(y) = parent {
                        for c in 1..=k {
                            if let Some(z) = model.apply_letter(Letter::generator(across, c), y) {
                                let fz = model.apply_basis(&f, z).get(&z).cloned().unwrap_or_else(|| Scalar::zero(ctx.field()));
                                total = &total + &fz;
                            }
                        }
                    }
                    let total = &total * &inv;
                    let mut v = Vector::new();
                    if !total.is_zero() {
                        v.insert(x, total);
                    }
                    v
                } else {
                    Vector::new()
                };
                if col != expected {
                    ok = false;
                    detail = Some(format!("basis vector {x}"));
                    break;
                }
            }
            out.push(expect_true(format!("{name}(f) matches the pointwise average in {model}, f = {f}"), ok, detail));
        }
    }
    Ok(out)
}
