//! Two-by-two matrices over elements, the matrices `sigma_i`, `tau_j`
//! built from the `r_ij`, and the homomorphism `Gamma` they induce.

use std::fmt;
use std::ops::{Add, Mul};

use crate::check::{expect_true, guarded, run, Instance, Job};
use crate::context::Context;
use crate::covariant::{corner_monomials, factor_into_f, CovariantObjects, Factorization};
use crate::elements::{sum, Element};
use crate::equality::{self, Verdict};
use crate::error::Result;
use crate::exec::Exec;
use crate::words::{Letter, Monomial};

/// Entries in the order `e11, e12, e21, e22`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    pub e: [Element; 4],
}

impl Mat2 {
    pub fn zero(ctx: Context) -> Self {
        Mat2 { e: std::array::from_fn(|_| Element::zero(ctx)) }
    }

    /// `x ⊗ e_rc` with `r, c` in `{1, 2}`.
    pub fn unit(x: Element, r: usize, c: usize) -> Self {
        let mut m = Mat2::zero(x.ctx());
        m.e[2 * (r - 1) + (c - 1)] = x;
        m
    }

    pub fn ctx(&self) -> Context {
        self.e[0].ctx()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Element {
        &self.e[2 * (r - 1) + (c - 1)]
    }

    pub fn try_add(&self, other: &Mat2) -> Result<Mat2> {
        let mut out = self.clone();
        for k in 0..4 {
            out.e[k] = self.e[k].try_add(&other.e[k])?;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Mat2) -> Result<Mat2> {
        let [a, b, c, d] = &self.e;
        let [w, x, y, z] = &other.e;
        Ok(Mat2 {
            e: [
                a.try_mul(w)?.try_add(&b.try_mul(y)?)?,
                a.try_mul(x)?.try_add(&b.try_mul(z)?)?,
                c.try_mul(w)?.try_add(&d.try_mul(y)?)?,
                c.try_mul(x)?.try_add(&d.try_mul(z)?)?,
            ],
        })
    }

    pub fn adjoint(&self) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Mat2 { e: [a.adjoint(), c.adjoint(), b.adjoint(), d.adjoint()] }
    }

    /// Entry-wise equality verdict; the first entry that is not `Equal`
    /// decides.
    pub fn equals(&self, other: &Mat2) -> Result<Verdict> {
        for k in 0..4 {
            let v = equality::equals(&self.e[k], &other.e[k])?;
            if !v.is_equal() {
                return Ok(v);
            }
        }
        Ok(Verdict::Equal)
    }
}

impl<'a> Add<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn add(self, rhs: &'a Mat2) -> Mat2 {
        self.try_add(rhs).expect("matrices over different contexts")
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &'a Mat2) -> Mat2 {
        self.try_mul(rhs).expect("matrices over different contexts")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, name) in ["e11", "e12", "e21", "e22"].iter().enumerate() {
            if !self.e[k].is_zero() {
                parts.push(format!("({}) ⊗ {name}", self.e[k]));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `sigma_i = r_i1 r_11' ⊗ e21`, `tau_j = r_1j' ⊗ e21`, and the two corner
/// projections playing the roles of `q` and `p`.
#[derive(Clone, Debug)]
pub struct SigmaTau {
    pub sigma: Vec<Mat2>,
    pub tau: Vec<Mat2>,
    /// `p_1 ⊗ e11`.
    pub q_role: Mat2,
    /// `p ⊗ e22`.
    pub p_role: Mat2,
}

pub fn build_sigma_tau(o: &CovariantObjects) -> SigmaTau {
    let ctx = o.ctx;
    let r11 = o.r_ij(1, 1);
    let sigma = (1..=ctx.n()).map(|i| Mat2::unit(o.r_ij(i, 1) * &r11.adjoint(), 2, 1)).collect();
    let tau = (1..=ctx.m()).map(|j| Mat2::unit(o.r_ij(1, j).adjoint(), 2, 1)).collect();
    SigmaTau { sigma, tau, q_role: Mat2::unit(o.p_i(1).clone(), 1, 1), p_role: Mat2::unit(Element::p(ctx), 2, 2) }
}

impl SigmaTau {
    /// Image of a single letter under `Gamma`.
    pub fn gamma_letter(&self, l: Letter) -> Mat2 {
        match l {
            Letter::S(i) => self.sigma[i as usize - 1].clone(),
            Letter::T(j) => self.tau[j as usize - 1].clone(),
            Letter::SStar(i) => self.sigma[i as usize - 1].adjoint(),
            Letter::TStar(j) => self.tau[j as usize - 1].adjoint(),
            Letter::P => self.p_role.clone(),
            Letter::Q => self.q_role.clone(),
        }
    }

    pub fn gamma_monomial(&self, w: &Monomial) -> Mat2 {
        let mut it = w.letters().iter();
        let first = self.gamma_letter(*it.next().expect("monomials are nonempty"));
        it.fold(first, |acc, &l| &acc * &self.gamma_letter(l))
    }

    pub fn gamma(&self, x: &Element) -> Mat2 {
        let mut acc = Mat2::zero(x.ctx());
        for (w, c) in x.terms() {
            let g = self.gamma_monomial(w);
            let scaled = Mat2 { e: g.e.map(|e| e.scale(c)) };
            acc = &acc + &scaled;
        }
        acc
    }
}

fn mat_instance(label: String, lhs: &Mat2, rhs: &Mat2) -> Instance {
    let start = std::time::Instant::now();
    let mut inst = guarded(&label, || {
        let v = lhs.equals(rhs)?;
        Ok(match v {
            Verdict::Equal => expect_true(label.clone(), true, None),
            Verdict::NotEqual(w) => expect_true(label.clone(), false, Some(w.to_string())),
            Verdict::Unconfirmed(r) => {
                Instance { instance: label.clone(), outcome: crate::check::Outcome::Unconfirmed, witness: Some(r), ms: 0 }
            }
        })
    });
    inst.ms = start.elapsed().as_millis() as u64;
    inst
}

/// The Leavitt-type relations for `sigma_i`, `tau_j`, and the unit
/// `u = p_1 ⊗ e11 + p ⊗ e22` of the corner containing them.
pub fn check_sigma_tau(ctx: &Context, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let st = build_sigma_tau(&o);
    let ctx = *ctx;
    let (st, o) = (&st, &o);
    let zero = &Mat2::zero(ctx);
    let u = &(&st.q_role + &st.p_role);
    let mut jobs: Vec<Job> = Vec::new();
    for (a, name, n) in [(&st.sigma, "sigma", ctx.n()), (&st.tau, "tau", ctx.m())] {
        for i in 1..=n {
            let x = &a[i as usize - 1];
            for j in 1..=n {
                let y = &a[j as usize - 1];
                jobs.push(Box::new(move || {
                    let want = if i == j { &st.q_role } else { zero };
                    mat_instance(format!("{name}{i}' {name}{j} = [{i}={j}] p1 ⊗ e11"), &(&x.adjoint() * y), want)
                }));
            }
            jobs.push(Box::new(move || {
                let want = if name == "sigma" { o.p_i(i) } else { o.q_j(i) };
                let label = if name == "sigma" { format!("p{i}") } else { format!("q{i}") };
                mat_instance(format!("{name}{i} {name}{i}' = {label} ⊗ e22"), &(x * &x.adjoint()), &Mat2::unit(want.clone(), 2, 2))
            }));
            jobs.push(Box::new(move || mat_instance(format!("u {name}{i} = {name}{i}"), &(u * x), x)));
            jobs.push(Box::new(move || mat_instance(format!("{name}{i} u = {name}{i}"), &(x * u), x)));
            jobs.push(Box::new(move || {
                mat_instance(format!("{name}{i} = (p ⊗ e22) {name}{i} (p1 ⊗ e11)"), &(&(&st.p_role * x) * &st.q_role), x)
            }));
        }
        jobs.push(Box::new(move || {
            let total = a.iter().fold(Mat2::zero(ctx), |acc, x| &acc + &(x * &x.adjoint()));
            mat_instance(format!("sum {name}_i {name}_i' = p ⊗ e22"), &total, &st.p_role)
        }));
    }
    jobs.push(Box::new(move || mat_instance("(p ⊗ e22)(p1 ⊗ e11) = 0".into(), &(&st.p_role * &st.q_role), zero)));
    jobs.push(Box::new(move || mat_instance("u u = u".into(), &(u * u), u)));
    jobs.push(Box::new(move || mat_instance("u' = u".into(), &u.adjoint(), u)));
    run(exec, jobs)
}

/// `sigma_i tau_j' = r_ij ⊗ e22`, `r_i1 r_11' r_1j = r_ij`, and the
/// generator-level round trip `s_i t_j' -> r_ij -> s_i t_j'`.
pub fn check_gamma_lambda(ctx: &Context, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let st = build_sigma_tau(&o);
    let ctx = *ctx;
    let (st, o) = (&st, &o);
    let mut jobs: Vec<Job> = Vec::new();
    for i in 1..=ctx.n() {
        for j in 1..=ctx.m() {
            jobs.push(Box::new(move || {
                let lhs = &st.sigma[i as usize - 1] * &st.tau[j as usize - 1].adjoint();
                mat_instance(format!("sigma{i} tau{j}' = r[{i},{j}] ⊗ e22"), &lhs, &Mat2::unit(o.r_ij(i, j).clone(), 2, 2))
            }));
            jobs.push(Box::new(move || {
                let lhs = &(o.r_ij(i, 1) * &o.r_ij(1, 1).adjoint()) * o.r_ij(1, j);
                crate::check::expect_equal(format!("r[{i},1] r[1,1]' r[1,{j}] = r[{i},{j}]"), &lhs, o.r_ij(i, j))
            }));
            jobs.push(Box::new(move || {
                let st_word = Element::from_monomial(ctx, Monomial::from_reduced_unchecked(vec![Letter::S(i), Letter::TStar(j)]));
                let gamma = st.gamma(&st_word);
                let lambda = gamma.entry(2, 2).clone();
                let off_corner = (1..=2).all(|r| (1..=2).all(|c| (r, c) == (2, 2) || gamma.entry(r, c).is_zero()));
                let round = equality::equals(&lambda, &st_word).map(|v| v.is_equal()).unwrap_or(false);
                expect_true(format!("Psi(Lambda(s{i} t{j}')) = s{i} t{j}'"), off_corner && round, Some(lambda.to_string()))
            }));
        }
    }
    run(exec, jobs)
}

/// `Gamma(w) = w ⊗ e22` for corner monomials up to `depth` (evaluated both
/// letter by letter and through the factorization over `F`), and
/// `Gamma(p) = p ⊗ e22`.
pub fn check_gamma_corner(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let st = build_sigma_tau(&o);
    let ctx = *ctx;
    let st = &st;
    let ws = corner_monomials(&ctx, depth);
    let mut jobs: Vec<Job> = Vec::new();
    for w in &ws {
        jobs.push(Box::new(move || {
            let x = Element::from_monomial(ctx, w.clone());
            mat_instance(format!("Gamma({w}) = {w} ⊗ e22"), &st.gamma_monomial(w), &Mat2::unit(x, 2, 2))
        }));
        jobs.push(Box::new(move || {
            guarded(&format!("Lambda via F, w = {w}"), || {
                let fac = factor_into_f(&ctx, w)?;
                let lambda = match &fac {
                    Factorization::Product(fs) => fs.iter().fold(Element::p(ctx), |acc, f| {
                        let r = st_entry(st, f.i, f.j);
                        &acc * &(if f.adjoint { r.adjoint() } else { r })
                    }),
                    Factorization::UnitSum(pairs) => sum(
                        ctx,
                        pairs.iter().map(|[a, _]| {
                            let r = st_entry(st, a.i, a.j);
                            &r * &r.adjoint()
                        }),
                    ),
                };
                Ok(crate::check::expect_equal(
                    format!("Psi(Lambda({w})) = {w} via {fac}"),
                    &lambda,
                    &Element::from_monomial(ctx, w.clone()),
                ))
            })
        }));
    }
    run(exec, jobs)
}

/// The `e22` entry of `sigma_i tau_j'`, i.e. `Lambda(s_i t_j')`.
fn st_entry(st: &SigmaTau, i: u32, j: u32) -> Element {
    (&st.sigma[i as usize - 1] * &st.tau[j as usize - 1].adjoint()).entry(2, 2).clone()
}
