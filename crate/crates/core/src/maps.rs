//! The structure maps on the diagonal: the homomorphisms `alpha`, `beta`,
//! the averages `L`, `M`, and the interaction `V = alpha M`, `H = beta L`.
//!
//! Inputs must lie in the commutative corner spanned by projections on the
//! relevant side (`A_p` for `L`, `M`, `V`, `H`; `A_q` for `alpha`, `beta`).

use std::collections::BTreeSet;

use crate::check::{expect_equal, expect_true, run, Instance, Job};
use crate::context::Context;
use crate::elements::{sum, Element};
use crate::equality::{cylinder, LabelVar};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::freegroup::Family;
use crate::scalars::Scalar;
use crate::words::{enumerate_reduced, Letter, Monomial, Side};

/// Spanning sets used for pairs of arguments are capped at this depth.
pub const PAIR_DEPTH: usize = 2;

pub fn pair_depth(depth: usize) -> usize {
    depth.min(PAIR_DEPTH)
}

/// Whether every monomial of `x` is diagonal (identity group image) with
/// range on `side`.
pub fn in_subalgebra(x: &Element, side: Side) -> bool {
    x.terms().all(|(w, _)| w.group_image().is_identity() && w.range() == side)
}

fn require(x: &Element, side: Side) -> Result<()> {
    if in_subalgebra(x, side) {
        Ok(())
    } else {
        let c = match side {
            Side::P => 'p',
            Side::Q => 'q',
        };
        Err(Error::NotInSubalgebra { side: c, element: x.to_string() })
    }
}

fn conjugate(x: &Element, family: Family, index: u32) -> Element {
    x.letter_mul(Letter::generator(family, index)).mul_letter(Letter::generator_star(family, index))
}

fn co_conjugate(x: &Element, family: Family, index: u32) -> Element {
    x.letter_mul(Letter::generator_star(family, index)).mul_letter(Letter::generator(family, index))
}

pub(crate) fn push_forward(x: &Element, family: Family) -> Element {
    let ctx = x.ctx();
    sum(ctx, (1..=ctx.size(family)).map(|i| conjugate(x, family, i)))
}

pub(crate) fn average(x: &Element, family: Family) -> Element {
    let ctx = x.ctx();
    let total = sum(ctx, (1..=ctx.size(family)).map(|i| co_conjugate(x, family, i)));
    let k = Scalar::from_ratio(ctx.field(), 1, ctx.size(family) as i64).expect("nonzero size");
    total.scale(&k)
}

/// `g -> s_i g s_i'`.
pub fn alpha_i(g: &Element, i: u32) -> Result<Element> {
    require(g, Side::Q)?;
    g.ctx().check_index(Family::S, i)?;
    Ok(conjugate(g, Family::S, i))
}

/// `g -> t_j g t_j'`.
pub fn beta_j(g: &Element, j: u32) -> Result<Element> {
    require(g, Side::Q)?;
    g.ctx().check_index(Family::T, j)?;
    Ok(conjugate(g, Family::T, j))
}

pub fn alpha(g: &Element) -> Result<Element> {
    require(g, Side::Q)?;
    Ok(push_forward(g, Family::S))
}

pub fn beta(g: &Element) -> Result<Element> {
    require(g, Side::Q)?;
    Ok(push_forward(g, Family::T))
}

/// `L(f) = (1/n) sum_i s_i' f s_i`.
pub fn l_map(f: &Element) -> Result<Element> {
    require(f, Side::P)?;
    Ok(average(f, Family::S))
}

/// `M(f) = (1/m) sum_j t_j' f t_j`.
pub fn m_map(f: &Element) -> Result<Element> {
    require(f, Side::P)?;
    Ok(average(f, Family::T))
}

pub(crate) fn v_raw(f: &Element) -> Element {
    push_forward(&average(f, Family::T), Family::S)
}

pub(crate) fn h_raw(f: &Element) -> Element {
    push_forward(&average(f, Family::S), Family::T)
}

/// `V = alpha o M`.
pub fn v_map(f: &Element) -> Result<Element> {
    require(f, Side::P)?;
    Ok(v_raw(f))
}

/// `H = beta o L`.
pub fn h_map(f: &Element) -> Result<Element> {
    require(f, Side::P)?;
    Ok(h_raw(f))
}

/// Range projections `w w'` of reduced monomials of length `<= depth` with
/// range on `side`, one representative per distinct projection, starting
/// with the unit of the corner.
pub fn spanning_projections(ctx: &Context, side: Side, depth: usize) -> Vec<Element> {
    let mut seen: BTreeSet<Vec<(LabelVar, u32)>> = BTreeSet::new();
    let mut out = Vec::new();
    let unit = match side {
        Side::P => Monomial::p(),
        Side::Q => Monomial::q(),
    };
    seen.insert(Vec::new());
    out.push(Element::from_monomial(*ctx, unit));
    for w in enumerate_reduced(ctx, depth) {
        if w.range() != side {
            continue;
        }
        let Some(proj) = w.mul(&w.adjoint()) else { continue };
        let Some(cyl) = cylinder(ctx, &proj) else { continue };
        let key: Vec<(LabelVar, u32)> = cyl.constraints.into_iter().collect();
        if seen.insert(key) {
            out.push(Element::from_monomial(*ctx, proj));
        }
    }
    out
}

/// Images of projections under a positive map must be nonnegative
/// combinations of diagonal monomials, which are projections.
fn on_cone(x: &Element, side: Side) -> bool {
    in_subalgebra(x, side) && x.terms().all(|(_, c)| c.is_nonnegative_rational())
}

/// Homomorphism, unitality and *-preservation of `alpha` and `beta`.
pub fn check_homomorphisms(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let ctx = *ctx;
    let gs = spanning_projections(&ctx, Side::Q, pair_depth(depth));
    let mut jobs: Vec<Job> = Vec::new();
    for (name, fam) in [("alpha", Family::S), ("beta", Family::T)] {
        jobs.push(Box::new(move || expect_equal(format!("{name}(q) = p"), &push_forward(&Element::q(ctx), fam), &Element::p(ctx))));
        for g in &gs {
            jobs.push(Box::new(move || {
                let lhs = push_forward(&g.adjoint(), fam);
                expect_equal(format!("{name}(g') = {name}(g)', g = {g}"), &lhs, &push_forward(g, fam).adjoint())
            }));
            for h in &gs {
                jobs.push(Box::new(move || {
                    let lhs = push_forward(&(g * h), fam);
                    let rhs = &push_forward(g, fam) * &push_forward(h, fam);
                    expect_equal(format!("{name}(g h) = {name}(g) {name}(h), g = {g}, h = {h}"), &lhs, &rhs)
                }));
            }
        }
    }
    run(exec, jobs)
}

/// `L alpha = id`, `M beta = id` and the module properties
/// `L(alpha(g) f) = g L(f)`, `M(beta(g) f) = g M(f)`.
pub fn check_transfer_identities(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let ctx = *ctx;
    let gs = spanning_projections(&ctx, Side::Q, depth);
    let gs_pair = spanning_projections(&ctx, Side::Q, pair_depth(depth));
    let fs_pair = spanning_projections(&ctx, Side::P, pair_depth(depth));
    let mut jobs: Vec<Job> = Vec::new();
    for (a, l, fam) in [("alpha", "L", Family::S), ("beta", "M", Family::T)] {
        for g in &gs {
            jobs.push(Box::new(move || expect_equal(format!("{l}({a}(g)) = g, g = {g}"), &average(&push_forward(g, fam), fam), g)));
        }
        for g in &gs_pair {
            for f in &fs_pair {
                jobs.push(Box::new(move || {
                    let lhs = average(&(&push_forward(g, fam) * f), fam);
                    let rhs = g * &average(f, fam);
                    expect_equal(format!("{l}({a}(g) f) = g {l}(f), g = {g}, f = {f}"), &lhs, &rhs)
                }));
            }
        }
    }
    run(exec, jobs)
}

/// The interaction axioms for `(V, H)` on spanning projections of `A_p`:
/// unitality, *-preservation, positivity on the projection cone,
/// `VHV = V`, `HVH = H`, and conditional multiplicativity.
pub fn check_interaction_axioms(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let ctx = *ctx;
    let fs = spanning_projections(&ctx, Side::P, depth);
    let fs_pair = spanning_projections(&ctx, Side::P, pair_depth(depth));
    let p = Element::p(ctx);
    let mut jobs: Vec<Job> = Vec::new();
    type Map = fn(&Element) -> Element;
    let maps: [(&str, &str, Map, Map); 2] = [("V", "H", v_raw, h_raw), ("H", "V", h_raw, v_raw)];
    for (name, other, map, dual) in maps {
        let p = &p;
        jobs.push(Box::new(move || expect_equal(format!("{name}(p) = p"), &map(p), p)));
        for f in &fs {
            jobs.push(Box::new(move || {
                let img = map(f);
                expect_true(format!("{name}(f) lies in the projection cone, f = {f}"), on_cone(&img, Side::P), None)
            }));
            jobs.push(Box::new(move || expect_equal(format!("{name}(f') = {name}(f)', f = {f}"), &map(&f.adjoint()), &map(f).adjoint())));
            jobs.push(Box::new(move || {
                expect_equal(format!("{name}{other}{name}(f) = {name}(f), f = {f}"), &map(&dual(&map(f))), &map(f))
            }));
        }
        for f in &fs_pair {
            for g in &fs_pair {
                jobs.push(Box::new(move || {
                    let x = dual(f);
                    let lhs = map(&(&x * g));
                    let rhs = &map(&x) * &map(g);
                    expect_equal(format!("{name}({other}(f) g) = {name}({other}(f)) {name}(g), f = {f}, g = {g}"), &lhs, &rhs)
                }));
                jobs.push(Box::new(move || {
                    let x = dual(f);
                    let lhs = map(&(g * &x));
                    let rhs = &map(g) * &map(&x);
                    expect_equal(format!("{name}(g {other}(f)) = {name}(g) {name}({other}(f)), f = {f}, g = {g}"), &lhs, &rhs)
                }));
            }
        }
    }
    run(exec, jobs)
}

/// The averaging identities for the individual range projections
/// `p_i = s_i s_i'` and `q_j = t_j t_j'`.
pub fn check_assorted(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let ctx = *ctx;
    let fs = spanning_projections(&ctx, Side::P, depth);
    let (p, q) = (Element::p(ctx), Element::q(ctx));
    let inv = |k: u32| Scalar::from_ratio(ctx.field(), 1, k as i64).expect("nonzero");
    let (inv_n, inv_m) = (inv(ctx.n()), inv(ctx.m()));
    let proj = |fam: Family, i: u32| {
        let g = Element::generator(ctx, fam, i).expect("index in range");
        &g * &g.adjoint()
    };
    let qjs: Vec<Element> = (1..=ctx.m()).map(|j| proj(Family::T, j)).collect();
    let pis: Vec<Element> = (1..=ctx.n()).map(|i| proj(Family::S, i)).collect();
    let (q_m, p_m, q_n, p_n) = (q.scale(&inv_m), p.scale(&inv_m), q.scale(&inv_n), p.scale(&inv_n));
    let (q_m, p_m, q_n, p_n, inv_m, inv_n) = (&q_m, &p_m, &q_n, &p_n, &inv_m, &inv_n);
    let mut jobs: Vec<Job> = Vec::new();
    for (k, qj) in qjs.iter().enumerate() {
        let j = k + 1;
        jobs.push(Box::new(move || expect_equal(format!("M(q{j}) = 1/m q"), &average(qj, Family::T), q_m)));
        jobs.push(Box::new(move || expect_equal(format!("V(q{j}) = 1/m p"), &v_raw(qj), p_m)));
        for f in &fs {
            jobs.push(Box::new(move || {
                let lhs = qj * &h_raw(&v_raw(&(qj * f)));
                let rhs = (qj * f).scale(inv_m);
                expect_equal(format!("q{j} H(V(q{j} f)) = 1/m q{j} f, f = {f}"), &lhs, &rhs)
            }));
        }
    }
    for (k, pi) in pis.iter().enumerate() {
        let i = k + 1;
        jobs.push(Box::new(move || expect_equal(format!("L(p{i}) = 1/n q"), &average(pi, Family::S), q_n)));
        jobs.push(Box::new(move || expect_equal(format!("H(p{i}) = 1/n p"), &h_raw(pi), p_n)));
        for f in &fs {
            jobs.push(Box::new(move || {
                let lhs = pi * &v_raw(&h_raw(&(pi * f)));
                let rhs = (pi * f).scale(inv_n);
                expect_equal(format!("p{i} V(H(p{i} f)) = 1/n p{i} f, f = {f}"), &lhs, &rhs)
            }));
        }
    }
    run(exec, jobs)
}
