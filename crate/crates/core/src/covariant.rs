//! The covariant pair `(iota, R)` and the elements built from it:
//! `S = n^{-1/2} sum s_i`, `T = m^{-1/2} sum t_j`, `R = S T'`,
//! `p_i = s_i s_i'`, `q_j = t_j t_j'` and `r_ij = sqrt(nm) p_i R q_j`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::check::{expect_equal, expect_true, guarded, run, Instance, Job};
use crate::context::Context;
use crate::elements::{sum, Element};
use crate::equality::{self, cylinder};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::freegroup::{Family, GroupLetter, GroupWord};
use crate::maps::{average, h_raw, pair_depth, push_forward, spanning_projections, v_raw};
use crate::scalars::Scalar;
use crate::words::{enumerate_reduced, Letter, Monomial, Side};

#[derive(Clone, Debug)]
pub struct CovariantObjects {
    pub ctx: Context,
    pub s: Element,
    pub t: Element,
    pub r: Element,
    pub p: Vec<Element>,
    pub q: Vec<Element>,
    /// `r[i-1][j-1] = r_ij`.
    pub rij: Vec<Vec<Element>>,
}

impl CovariantObjects {
    pub fn new(ctx: &Context) -> Self {
        let ctx = *ctx;
        let avg = |fam: Family| {
            let k = ctx.size(fam);
            let total = sum(ctx, (1..=k).map(|i| Element::generator(ctx, fam, i).expect("index in range")));
            total.scale(&Scalar::inv_sqrt(ctx.field(), k as u64).expect("radicand in field"))
        };
        let s = avg(Family::S);
        let t = avg(Family::T);
        let r = &s * &t.adjoint();
        let proj = |fam: Family, i: u32| {
            let g = Element::generator(ctx, fam, i).expect("index in range");
            &g * &g.adjoint()
        };
        let p: Vec<Element> = (1..=ctx.n()).map(|i| proj(Family::S, i)).collect();
        let q: Vec<Element> = (1..=ctx.m()).map(|j| proj(Family::T, j)).collect();
        let root = Scalar::sqrt(ctx.field(), ctx.n() as u64 * ctx.m() as u64).expect("radicand in field");
        let rij = p.iter().map(|pi| q.iter().map(|qj| (&(pi * &r) * qj).scale(&root)).collect()).collect();
        CovariantObjects { ctx, s, t, r, p, q, rij }
    }

    pub fn r_ij(&self, i: u32, j: u32) -> &Element {
        &self.rij[i as usize - 1][j as usize - 1]
    }

    pub fn p_i(&self, i: u32) -> &Element {
        &self.p[i as usize - 1]
    }

    pub fn q_j(&self, j: u32) -> &Element {
        &self.q[j as usize - 1]
    }

    fn inv(&self, k: u32) -> Scalar {
        Scalar::from_ratio(self.ctx.field(), 1, k as i64).expect("nonzero")
    }
}

/// Partial isometry identities for `S`, `T`, `R`.
pub fn check_pisom_suite(ctx: &Context, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let q = Element::q(*ctx);
    let (s, t, r) = (&o.s, &o.t, &o.r);
    let q = &q;
    let jobs: Vec<Job> = vec![
        Box::new(move || expect_equal("S' S = q", &(&s.adjoint() * s), q)),
        Box::new(move || expect_equal("T' T = q", &(&t.adjoint() * t), q)),
        Box::new(move || expect_equal("R R' R = R", &(&(r * &r.adjoint()) * r), r)),
        Box::new(move || expect_equal("R R' = S S'", &(r * &r.adjoint()), &(s * &s.adjoint()))),
        Box::new(move || expect_equal("R' R = T T'", &(&r.adjoint() * r), &(t * &t.adjoint()))),
    ];
    run(exec, jobs)
}

/// `S' f S = L(f)`, `T' f T = M(f)`, `S g = alpha(g) S`, `T g = beta(g) T`.
pub fn check_slmab(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let fs = spanning_projections(ctx, Side::P, depth);
    let gs = spanning_projections(ctx, Side::Q, depth);
    let mut jobs: Vec<Job> = Vec::new();
    for (x, name, l, a, fam) in [(&o.s, "S", "L", "alpha", Family::S), (&o.t, "T", "M", "beta", Family::T)] {
        for f in &fs {
            jobs.push(Box::new(move || {
                expect_equal(format!("{name}' f {name} = {l}(f), f = {f}"), &(&(&x.adjoint() * f) * x), &average(f, fam))
            }));
        }
        for g in &gs {
            jobs.push(Box::new(move || expect_equal(format!("{name} g = {a}(g) {name}, g = {g}"), &(x * g), &(&push_forward(g, fam) * x))));
        }
    }
    run(exec, jobs)
}

/// `R f R' = V(f) R R'` and `R' f R = H(f) R' R`.
pub fn check_covariance(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let fs = spanning_projections(ctx, Side::P, depth);
    let r = &o.r;
    let rr = &(r * &r.adjoint());
    let rtr = &(&r.adjoint() * r);
    let mut jobs: Vec<Job> = Vec::new();
    for f in &fs {
        jobs.push(Box::new(move || expect_equal(format!("R f R' = V(f) R R', f = {f}"), &(&(r * f) * &r.adjoint()), &(&v_raw(f) * rr))));
        jobs.push(Box::new(move || expect_equal(format!("R' f R = H(f) R' R, f = {f}"), &(&(&r.adjoint() * f) * r), &(&h_raw(f) * rtr))));
    }
    run(exec, jobs)
}

/// Number of random full tuples drawn for the ternary product identity.
const TRO_SAMPLES: usize = 64;

/// `(a R b)(c R d)'(e R f) = a V(b d') R H(c' e) f` on tuples from the
/// spanning projections: every tuple over the depth-1 set with at most two
/// entries different from `p`, plus a seeded sample of full tuples over
/// the pair-depth set.
pub fn check_tro(ctx: &Context, depth: usize, seed: u64, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let small = spanning_projections(ctx, Side::P, depth.min(1));
    let wide = spanning_projections(ctx, Side::P, pair_depth(depth));
    let mut tuples: Vec<[usize; 6]> = Vec::new();
    let k = small.len();
    for a in 0..6 {
        for b in a..6 {
            for x in 1..k {
                for y in 1..k {
                    if a == b && y > 1 {
                        continue;
                    }
                    let mut t = [0usize; 6];
                    t[a] = x;
                    if a != b {
                        t[b] = y;
                    }
                    tuples.push(t);
                }
            }
        }
    }
    tuples.push([0; 6]);
    tuples.sort();
    tuples.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let idx: Vec<usize> = (0..wide.len()).collect();
    let sampled: Vec<[usize; 6]> = (0..TRO_SAMPLES).map(|_| std::array::from_fn(|_| *idx.choose(&mut rng).expect("nonempty"))).collect();

    let r = &o.r;
    let job = move |e: [&Element; 6]| -> Instance {
        let [a, b, c, d, ee, f] = e;
        let lhs = &(&(&(a * r) * b) * &(&(c * r) * d).adjoint()) * &(&(ee * r) * f);
        let rhs = &(&(a * &v_raw(&(b * &d.adjoint()))) * r) * &(&h_raw(&(&c.adjoint() * ee)) * f);
        expect_equal(format!("(aRb)(cRd)'(eRf) = a V(bd') R H(c'e) f, (a..f) = ({a}; {b}; {c}; {d}; {ee}; {f})"), &lhs, &rhs)
    };
    let mut jobs: Vec<Job> = Vec::new();
    for t in tuples {
        let small = &small;
        jobs.push(Box::new(move || job(t.map(|i| &small[i]))));
    }
    for t in sampled {
        let wide = &wide;
        jobs.push(Box::new(move || job(t.map(|i| &wide[i]))));
    }
    run(exec, jobs)
}

/// `p_i R R' p_i = (1/n) p_i` with the left redundancy
/// `(p_i R R' p_i) f R = (1/n) p_i f R`, and on the other side
/// `q_j R' R q_j = (1/m) q_j` with the right redundancy
/// `R f (q_j R' R q_j) = (1/m) R f q_j`.
///
/// The `q_j` identity holds with `R' R`; `q_j R R' q_j` differs from
/// `(1/m) q_j` as soon as `(n, m) != (1, 1)`.
pub fn check_redundancies(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let fs = spanning_projections(ctx, Side::P, depth);
    let r = &o.r;
    let rr = &(r * &r.adjoint());
    let rtr = &(&r.adjoint() * r);
    let (inv_n, inv_m) = (&o.inv(ctx.n()), &o.inv(ctx.m()));
    let mut jobs: Vec<Job> = Vec::new();
    for (k, pi) in o.p.iter().enumerate() {
        let i = k + 1;
        jobs.push(Box::new(move || expect_equal(format!("p{i} R R' p{i} = 1/n p{i}"), &(&(pi * rr) * pi), &pi.scale(inv_n))));
        for f in &fs {
            jobs.push(Box::new(move || {
                let lhs = &(&(&(pi * rr) * pi) * f) * r;
                let rhs = (&(pi * f) * r).scale(inv_n);
                expect_equal(format!("(p{i} R R' p{i}) f R = 1/n p{i} f R, f = {f}"), &lhs, &rhs)
            }));
        }
    }
    for (k, qj) in o.q.iter().enumerate() {
        let j = k + 1;
        jobs.push(Box::new(move || expect_equal(format!("q{j} R' R q{j} = 1/m q{j}"), &(&(qj * rtr) * qj), &qj.scale(inv_m))));
        for f in &fs {
            jobs.push(Box::new(move || {
                let lhs = &(r * f) * &(&(qj * rtr) * qj);
                let rhs = (&(r * f) * qj).scale(inv_m);
                expect_equal(format!("R f (q{j} R' R q{j}) = 1/m R f q{j}, f = {f}"), &lhs, &rhs)
            }));
        }
    }
    run(exec, jobs)
}

/// Result of the non-power computation for `R`.
#[derive(Clone, Debug)]
pub struct NotPowerReport {
    pub degenerate: bool,
    /// Fourier coefficient of `S S' T T' - T T' S S'` at `a1 a2^-1 b1 b2^-1`.
    pub fourier: Option<Element>,
    pub expected_fourier: Option<Element>,
    pub fourier_nonzero: Option<equality::Verdict>,
    pub r_squared_partial_isometry: equality::Verdict,
}

impl NotPowerReport {
    pub fn holds(&self) -> bool {
        if self.degenerate {
            self.r_squared_partial_isometry.is_equal()
        } else {
            self.fourier == self.expected_fourier
                && self.fourier_nonzero.as_ref().is_some_and(|v| v.is_not_equal())
                && self.r_squared_partial_isometry.is_not_equal()
        }
    }
}

impl fmt::Display for NotPowerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degenerate {
            return write!(f, "R^2 partial isometry: {}", self.r_squared_partial_isometry);
        }
        write!(
            f,
            "fourier = {}, R^2 partial isometry: {}",
            self.fourier.as_ref().map_or("-".into(), |x| x.to_string()),
            self.r_squared_partial_isometry
        )
    }
}

/// The group element `a1 a2^-1 b1 b2^-1` separating `S S' T T'` from `T T' S S'`.
pub fn not_power_group_word() -> GroupWord {
    GroupWord::from_letters([
        GroupLetter::new(Family::S, 1, false),
        GroupLetter::new(Family::S, 2, true),
        GroupLetter::new(Family::T, 1, false),
        GroupLetter::new(Family::T, 2, true),
    ])
}

pub fn check_not_power(ctx: &Context) -> Result<NotPowerReport> {
    let o = CovariantObjects::new(ctx);
    let r2 = &o.r * &o.r;
    let r_squared_partial_isometry = r2.is_partial_isometry()?;
    if ctx.n() == 1 || ctx.m() == 1 {
        return Ok(NotPowerReport {
            degenerate: true,
            fourier: None,
            expected_fourier: None,
            fourier_nonzero: None,
            r_squared_partial_isometry,
        });
    }
    let ss = &o.s * &o.s.adjoint();
    let tt = &o.t * &o.t.adjoint();
    let commutator = (&ss * &tt).try_sub(&(&tt * &ss))?;
    let g = not_power_group_word();
    let fourier = commutator.fourier(&g);
    let w = Monomial::from_group_word(&g).ok_or(Error::EmptyWord)?;
    let nm = ctx.n() as i64 * ctx.m() as i64;
    let expected = Element::from_monomial(*ctx, w).scale(&Scalar::from_ratio(ctx.field(), 1, nm)?);
    let nonzero = equality::equals(&fourier, &Element::zero(*ctx))?;
    Ok(NotPowerReport {
        degenerate: false,
        fourier: Some(fourier),
        expected_fourier: Some(expected),
        fourier_nonzero: Some(nonzero),
        r_squared_partial_isometry,
    })
}

/// Reduced nonzero monomials `w = p w p` with at most `max_len` letters.
pub fn corner_monomials(ctx: &Context, max_len: usize) -> Vec<Monomial> {
    enumerate_reduced(ctx, max_len)
        .into_iter()
        .filter(|w| w.range() == Side::P && w.source() == Side::P && cylinder(ctx, w).is_some())
        .collect()
}

/// For every corner monomial `y` of length `<= max_len`, finds basic
/// projections `f` in `{p, p_i, q_j}` with `y f R != 0` and `y f R' != 0`.
pub fn check_cancellation_sample(ctx: &Context, max_len: usize, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let mut basics = vec![Element::p(*ctx)];
    basics.extend(o.p.iter().cloned());
    basics.extend(o.q.iter().cloned());
    let ys = corner_monomials(ctx, max_len);
    let ctx = *ctx;
    let (r, basics) = (&o.r, &basics);
    let rs = &o.r.adjoint();
    let mut jobs: Vec<Job> = Vec::new();
    for y in ys {
        jobs.push(Box::new(move || {
            let y = Element::from_monomial(ctx, y.clone());
            let zero = Element::zero(ctx);
            let mut found = Vec::new();
            for (name, rr) in [("R", r), ("R'", rs)] {
                let hit = basics.iter().find(|f| equality::equals(&(&(&y * *f) * rr), &zero).is_ok_and(|v| v.is_not_equal()));
                match hit {
                    Some(f) => found.push(format!("y ({f}) {name} != 0")),
                    None => return expect_true(format!("y A_p {name} != 0, y = {y}"), false, Some("no basic f found".into())),
                }
            }
            expect_true(format!("y A_p R != 0 and y A_p R' != 0, y = {y}"), true, Some(found.join("; ")))
        }));
    }
    run(exec, jobs)
}

/// A generator `s_i t_j'` of the corner, or its adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FFactor {
    pub i: u32,
    pub j: u32,
    pub adjoint: bool,
}

impl FFactor {
    pub fn element(&self, ctx: &Context) -> Element {
        let m = Monomial::from_reduced_unchecked(vec![Letter::S(self.i), Letter::TStar(self.j)]);
        let x = Element::from_monomial(*ctx, m);
        if self.adjoint {
            x.adjoint()
        } else {
            x
        }
    }
}

impl fmt::Display for FFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.adjoint {
            write!(f, "(s{}t{}')'", self.i, self.j)
        } else {
            write!(f, "s{}t{}'", self.i, self.j)
        }
    }
}

/// How a corner monomial is expressed through `F = {s_i t_j'}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factorization {
    /// `w = g_1 ... g_k`.
    Product(Vec<FFactor>),
    /// `p = sum_i (s_i t_1')(s_i t_1')'`.
    UnitSum(Vec<[FFactor; 2]>),
}

impl Factorization {
    pub fn element(&self, ctx: &Context) -> Element {
        match self {
            Factorization::Product(fs) => fs.iter().fold(Element::p(*ctx), |acc, f| &acc * &f.element(ctx)),
            Factorization::UnitSum(pairs) => sum(*ctx, pairs.iter().map(|[a, b]| &a.element(ctx) * &b.element(ctx))),
        }
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factorization::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(" , "))
            }
            Factorization::UnitSum(pairs) => {
                let parts: Vec<String> = pairs.iter().map(|[a, b]| format!("{a} {b}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

/// Writes a reduced corner monomial as a product of elements of `F` and
/// `F'`, pairing letters as `u_1 v_1' ... u_l v_l'`:
/// `s_i t_j' -> s_i t_j'`, `t_j s_i' -> (s_i t_j')'`,
/// `s_i s_k' -> s_i t_1' (s_k t_1')'`, `t_j t_l' -> (s_1 t_j')' s_1 t_l'`.
pub fn factor_into_f(ctx: &Context, w: &Monomial) -> Result<Factorization> {
    let letters = w.letters();
    if letters == [Letter::P] {
        return Ok(Factorization::UnitSum(
            (1..=ctx.n()).map(|i| [FFactor { i, j: 1, adjoint: false }, FFactor { i, j: 1, adjoint: true }]).collect(),
        ));
    }
    if w.range() != Side::P || w.source() != Side::P || letters.contains(&Letter::Q) {
        return Err(Error::NotInCorner(w.to_string()));
    }
    if !Monomial::is_reduced_sequence(letters) {
        return Err(Error::Reducible(w.to_string()));
    }
    let mut out = Vec::new();
    for pair in letters.chunks(2) {
        let [u, v] = pair else { return Err(Error::NotInCorner(w.to_string())) };
        let f = |i, j, adjoint| FFactor { i, j, adjoint };
        match (*u, *v) {
            (Letter::S(i), Letter::TStar(j)) => out.push(f(i, j, false)),
            (Letter::T(j), Letter::SStar(i)) => out.push(f(i, j, true)),
            (Letter::S(i), Letter::SStar(k)) => {
                out.push(f(i, 1, false));
                out.push(f(k, 1, true));
            }
            (Letter::T(j), Letter::TStar(l)) => {
                out.push(f(1, j, true));
                out.push(f(1, l, false));
            }
            _ => return Err(Error::NotInCorner(w.to_string())),
        }
    }
    Ok(Factorization::Product(out))
}

/// Every corner monomial up to `depth` factors through `F`, and every
/// spanning projection of `A_p` up to `depth` is `z z'` for a product `z`
/// of elements of `F` and `F'`.
pub fn check_generation(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let ctx = *ctx;
    let ws = corner_monomials(&ctx, depth);
    let mut jobs: Vec<Job> = Vec::new();
    for w in &ws {
        jobs.push(Box::new(move || {
            guarded(&format!("factor {w}"), || {
                let fac = factor_into_f(&ctx, w)?;
                let inst = expect_equal(format!("{w} = {fac}"), &Element::from_monomial(ctx, w.clone()), &fac.element(&ctx));
                Ok(inst)
            })
        }));
    }
    for e in spanning_projections(&ctx, Side::P, depth).into_iter().skip(1) {
        jobs.push(Box::new(move || {
            let label = format!("{e} lies in E(R)");
            guarded(&label, || {
                let (w, _) = e.terms().next().ok_or(Error::EmptyWord)?;
                // e = w w' with w of range P; pad an odd-length w to even length.
                let half = &w.letters()[..w.len() / 2];
                let mut z = half.to_vec();
                if z.len() % 2 == 1 {
                    z.push(z.last().expect("nonempty").star());
                }
                let z = Monomial::from_reduced_unchecked(z);
                let fac = factor_into_f(&ctx, &z)?;
                let ze = fac.element(&ctx);
                Ok(expect_equal(format!("{label}: z = {fac}"), &(&ze * &ze.adjoint()), &e))
            })
        }));
    }
    run(exec, jobs)
}

/// `r_ij = s_i t_j'` and `R = (nm)^{-1/2} sum r_ij`.
pub fn check_rij(ctx: &Context, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let ctx = *ctx;
    let mut jobs: Vec<Job> = Vec::new();
    for i in 1..=ctx.n() {
        for j in 1..=ctx.m() {
            let rij = o.r_ij(i, j);
            jobs.push(Box::new(move || {
                let st = Element::from_monomial(ctx, Monomial::from_reduced_unchecked(vec![Letter::S(i), Letter::TStar(j)]));
                expect_equal(format!("r[{i},{j}] = s{i} t{j}'"), rij, &st)
            }));
        }
    }
    let o = &o;
    jobs.push(Box::new(move || {
        let total = sum(ctx, o.rij.iter().flatten().cloned());
        let k = Scalar::inv_sqrt(ctx.field(), ctx.n() as u64 * ctx.m() as u64).expect("radicand in field");
        expect_equal("R = (nm)^(-1/2) sum r[i,j]", &o.r, &total.scale(&k))
    }));
    run(exec, jobs)
}

/// The four relation families among the `r_ij`.
pub fn check_rij_relations(ctx: &Context, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let ctx = *ctx;
    let zero = &Element::zero(ctx);
    let o = &o;
    let mut jobs: Vec<Job> = Vec::new();
    for i in 1..=ctx.n() {
        for j in 1..=ctx.m() {
            let a = o.r_ij(i, j);
            jobs.push(Box::new(move || expect_equal(format!("r[{i},{j}] r[{i},{j}]' = p{i}"), &(a * &a.adjoint()), o.p_i(i))));
            jobs.push(Box::new(move || expect_equal(format!("r[{i},{j}]' r[{i},{j}] = q{j}"), &(&a.adjoint() * a), o.q_j(j))));
            for k in 1..=ctx.n() {
                for l in 1..=ctx.m() {
                    let b = o.r_ij(k, l);
                    if j != l {
                        jobs.push(Box::new(move || expect_equal(format!("r[{i},{j}] r[{k},{l}]' = 0"), &(a * &b.adjoint()), zero)));
                    }
                    if i != k {
                        jobs.push(Box::new(move || expect_equal(format!("r[{i},{j}]' r[{k},{l}] = 0"), &(&a.adjoint() * b), zero)));
                    }
                }
            }
        }
    }
    run(exec, jobs)
}

/// `r_ij f r_ij' = m V(q_j f) p_i` and `r_ij' f r_ij` lies in `A_p`.
pub fn check_normalizer(ctx: &Context, depth: usize, exec: Exec) -> Vec<Instance> {
    let o = CovariantObjects::new(ctx);
    let fs = spanning_projections(ctx, Side::P, pair_depth(depth));
    let ctx = *ctx;
    let m = &Scalar::from_int(ctx.field(), ctx.m() as i64);
    let (o, fs) = (&o, &fs);
    let mut jobs: Vec<Job> = Vec::new();
    for i in 1..=ctx.n() {
        for j in 1..=ctx.m() {
            let rij = o.r_ij(i, j);
            for f in fs {
                jobs.push(Box::new(move || {
                    let lhs = &(rij * f) * &rij.adjoint();
                    let rhs = (&v_raw(&(o.q_j(j) * f)) * o.p_i(i)).scale(m);
                    expect_equal(format!("r[{i},{j}] f r[{i},{j}]' = m V(q{j} f) p{i}, f = {f}"), &lhs, &rhs)
                }));
                jobs.push(Box::new(move || {
                    let x = &(&rij.adjoint() * f) * rij;
                    expect_true(
                        format!("r[{i},{j}]' f r[{i},{j}] lies in A_p, f = {f}"),
                        crate::maps::in_subalgebra(&x, Side::P),
                        Some(x.to_string()),
                    )
                }));
            }
        }
    }
    run(exec, jobs)
}

/// `1 = p + s1' p s1` and `1 = q + sum_i s_i q s_i'`.
pub fn check_fullness(ctx: &Context) -> Vec<Instance> {
    let ctx = *ctx;
    let (p, q, one) = (Element::p(ctx), Element::q(ctx), Element::one(ctx));
    let s1 = Element::s(ctx, 1).expect("index in range");
    let via_p = &(&s1.adjoint() * &p) * &s1;
    let via_q = sum(
        ctx,
        (1..=ctx.n()).map(|i| {
            let si = Element::s(ctx, i).expect("index in range");
            &(&si * &q) * &si.adjoint()
        }),
    );
    vec![
        expect_equal("s1' p s1 = q", &via_p, &q),
        expect_equal("p + s1' p s1 = 1", &(&p + &via_p), &one),
        expect_equal("sum_i s_i q s_i' = p", &via_q, &p),
        expect_equal("q + sum_i s_i q s_i' = 1", &(&q + &via_q), &one),
        expect_equal("p + q = 1", &(&p + &q), &one),
    ]
}
