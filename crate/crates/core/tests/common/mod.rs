//! Shared generators and properties for the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use onm_core::elements::sum;
use onm_core::permrep::{Model, Vector};
use onm_core::{equals, Context, Element, Family, GroupLetter, GroupWord, Letter, RefineStep, Scalar, Verdict};

pub const CONTEXTS: [(u32, u32); 5] = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 2)];

pub fn ctx(k: usize) -> Context {
    let (n, m) = CONTEXTS[k % CONTEXTS.len()];
    Context::new(n, m).unwrap()
}

/// A term as drawn by proptest: letter codes, a rational `a/b` and a
/// radical selector.
pub type RawTerm = (Vec<u8>, i64, i64, u8);

pub fn raw_term(max_len: usize) -> impl Strategy<Value = RawTerm> {
    (prop::collection::vec(any::<u8>(), 0..=max_len), -4i64..=4, 1i64..=4, 0u8..4)
}

pub fn raw_element(max_len: usize, max_terms: usize) -> impl Strategy<Value = Vec<RawTerm>> {
    prop::collection::vec(raw_term(max_len), 0..=max_terms)
}

pub fn letter(ctx: &Context, code: u8) -> Letter {
    let (n, m) = (ctx.n(), ctx.m());
    let k = code as u32 % (2 * n + 2 * m + 2);
    match k {
        k if k < n => Letter::S(k + 1),
        k if k < 2 * n => Letter::SStar(k - n + 1),
        k if k < 2 * n + m => Letter::T(k - 2 * n + 1),
        k if k < 2 * n + 2 * m => Letter::TStar(k - 2 * n - m + 1),
        k if k == 2 * n + 2 * m => Letter::P,
        _ => Letter::Q,
    }
}

pub fn scalar(ctx: &Context, a: i64, b: i64, radical: u8) -> Scalar {
    let f = ctx.field();
    let r = Scalar::from_ratio(f, a, b).unwrap();
    let k = match radical {
        1 => ctx.n() as u64,
        2 => ctx.m() as u64,
        3 => ctx.n() as u64 * ctx.m() as u64,
        _ => 1,
    };
    &r * &Scalar::sqrt(f, k).unwrap()
}

pub fn build(ctx: &Context, raw: &[RawTerm]) -> Element {
    sum(
        *ctx,
        raw.iter().map(|(codes, a, b, r)| {
            let letters: Vec<Letter> = codes.iter().map(|&c| letter(ctx, c)).collect();
            let x = if letters.is_empty() { Element::one(*ctx) } else { Element::from_letters(*ctx, &letters).unwrap() };
            x.scale(&scalar(ctx, *a, *b, *r))
        }),
    )
}

pub fn rational(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub type RawScalar = [(i64, i64); 4];

pub fn raw_scalar() -> impl Strategy<Value = RawScalar> {
    prop::array::uniform4((-6i64..=6, 1i64..=5))
}

/// Scalars of `Q(sqrt 2, sqrt 3)`.
pub fn field_scalar(raw: &RawScalar) -> Scalar {
    let f = Context::new(2, 3).unwrap().field();
    Scalar::from_coords(f, raw.map(|(a, b)| rational(a, b)))
}

pub fn raw_group_word(max_len: usize) -> impl Strategy<Value = Vec<(bool, u32, bool)>> {
    prop::collection::vec((any::<bool>(), 1u32..=3, any::<bool>()), 0..=max_len)
}

pub fn group_word(raw: &[(bool, u32, bool)]) -> GroupWord {
    GroupWord::from_letters(raw.iter().map(|&(s, i, inv)| GroupLetter::new(if s { Family::S } else { Family::T }, i, inv)))
}

fn must_equal(x: &Element, y: &Element, what: &str) -> Result<(), TestCaseError> {
    match equals(x, y) {
        Ok(Verdict::Equal) => Ok(()),
        other => Err(TestCaseError::fail(format!("{what}: {x} vs {y}: {other:?}"))),
    }
}

// Scalar field axioms in Q(sqrt 2, sqrt 3).
pub fn scalar_axioms(a: &RawScalar, b: &RawScalar, c: &RawScalar) -> Result<(), TestCaseError> {
    let (x, y, z) = (field_scalar(a), field_scalar(b), field_scalar(c));
    let zero = Scalar::zero(x.field());
    let one = Scalar::one(x.field());
    prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    prop_assert_eq!(&x + &y, &y + &x);
    prop_assert_eq!(&x * &y, &y * &x);
    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    prop_assert_eq!(&x + &zero, x.clone());
    prop_assert_eq!(&x * &one, x.clone());
    prop_assert!((&x + &(-&x)).is_zero());
    if !x.is_zero() {
        prop_assert_eq!(&x * &x.inv().unwrap(), one.clone());
    }
    let r2 = Scalar::sqrt(x.field(), 2).unwrap();
    prop_assert_eq!(&r2 * &r2, Scalar::from_int(x.field(), 2));
    Ok(())
}

// Free group laws.
pub fn group_laws(a: &[(bool, u32, bool)], b: &[(bool, u32, bool)], c: &[(bool, u32, bool)]) -> Result<(), TestCaseError> {
    let (x, y, z) = (group_word(a), group_word(b), group_word(c));
    prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
    prop_assert!(x.mul(&x.inv()).is_identity());
    prop_assert!(x.inv().mul(&x).is_identity());
    prop_assert_eq!(x.mul(&GroupWord::identity()), x.clone());
    prop_assert_eq!(x.mul(&y).inv(), y.inv().mul(&x.inv()));
    prop_assert!(x.is_reduced());
    prop_assert!(x.len() <= a.len());
    Ok(())
}

// *-algebra laws, both on normal forms and through the equality engine.
pub fn star_algebra_laws(k: usize, a: &[RawTerm], b: &[RawTerm], c: &[RawTerm], s: (i64, i64, u8)) -> Result<(), TestCaseError> {
    let ctx = ctx(k);
    let (x, y, z) = (build(&ctx, a), build(&ctx, b), build(&ctx, c));
    let lam = scalar(&ctx, s.0, s.1, s.2);
    prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
    prop_assert_eq!((&x * &y).adjoint(), &y.adjoint() * &x.adjoint());
    prop_assert_eq!(x.adjoint().adjoint(), x.clone());
    prop_assert_eq!((&x + &y).adjoint(), &x.adjoint() + &y.adjoint());
    prop_assert_eq!(x.scale(&lam).adjoint(), x.adjoint().scale(&lam));
    prop_assert_eq!(&x.scale(&lam) * &y, (&x * &y).scale(&lam));
    prop_assert_eq!(&x * &Element::one(ctx), x.clone());
    must_equal(&(&Element::one(ctx) * &x), &x, "left unit")?;
    must_equal(&(&(&x * &y) * &z), &(&x * &(&y * &z)), "associativity")?;
    Ok(())
}

// Fourier components: linearity, behaviour under adjoints, reconstruction.
pub fn fourier_laws(k: usize, a: &[RawTerm], b: &[RawTerm], g: &[(bool, u32, bool)], s: (i64, i64, u8)) -> Result<(), TestCaseError> {
    let ctx = ctx(k);
    let (x, y) = (build(&ctx, a), build(&ctx, b));
    let lam = scalar(&ctx, s.0, s.1, s.2);
    let mut groups: Vec<GroupWord> = x.fibers().into_iter().map(|f| f.group).collect();
    groups.extend(y.fibers().into_iter().map(|f| f.group));
    groups.push(group_word(g));
    for g in &groups {
        let lhs = (&x.scale(&lam) + &y).fourier(g);
        let rhs = &x.fourier(g).scale(&lam) + &y.fourier(g);
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.adjoint().fourier(&g.inv()), x.fourier(g).adjoint());
    }
    let rebuilt = sum(ctx, x.fibers().into_iter().map(|f| f.element));
    prop_assert_eq!(rebuilt, x.clone());
    for f in x.fibers() {
        prop_assert_eq!(x.fourier(&f.group), f.element);
    }
    Ok(())
}

// Refinement never changes the value of an element.
pub fn refinement_sound(k: usize, a: &[RawTerm], steps: &[(usize, bool)]) -> Result<(), TestCaseError> {
    let ctx = ctx(k);
    let x = build(&ctx, a);
    let len = x.terms().map(|(w, _)| w.len()).min().unwrap_or(0);
    let schedule: Vec<RefineStep> =
        steps.iter().map(|&(pos, s)| RefineStep::new(pos % (len + 1), if s { Family::S } else { Family::T })).collect();
    let refined = x.refine(&schedule).map_err(|e| TestCaseError::fail(e.to_string()))?;
    must_equal(&refined, &x, "refinement")?;
    for (w, _) in refined.terms() {
        prop_assert!(onm_core::words::reduce_word(&ctx, w.letters()).unwrap().as_ref() == Some(w));
    }
    Ok(())
}

// parse(render(x)) reproduces x coordinate-wise.
pub fn parser_round_trip(k: usize, a: &[RawTerm]) -> Result<(), TestCaseError> {
    let ctx = ctx(k);
    let x = build(&ctx, a);
    let text = x.to_string();
    let back = onm_core::parse_element(&text, &ctx).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
    prop_assert_eq!(back, x);
    Ok(())
}

/// Model used to test representations: exact for `n = m`, otherwise deep
/// enough for products of the given length.
pub fn test_model(ctx: &Context, word_len: usize, seed: u64) -> Model {
    if ctx.n() == ctx.m() {
        Model::exact(ctx, 3, seed).unwrap()
    } else {
        Model::truncated(ctx, word_len + 3, seed).unwrap()
    }
}

// Representations are multiplicative and *-preserving on the window.
pub fn model_homomorphism(k: usize, a: &[RawTerm], b: &[RawTerm], seed: u64) -> Result<(), TestCaseError> {
    let ctx = ctx(k);
    let (x, y) = (build(&ctx, a), build(&ctx, b));
    let xy = &x * &y;
    let model = test_model(&ctx, x.max_len() + y.max_len(), seed);
    for col in model.window(x.max_len() + y.max_len()).unwrap() {
        let mut e = Vector::new();
        e.insert(col, Scalar::one(ctx.field()));
        let lhs = model.apply(&xy, &e);
        let rhs = model.apply(&x, &model.apply(&y, &e));
        prop_assert_eq!(lhs, rhs, "column {}", col);
    }
    if ctx.n() == ctx.m() {
        let xs = x.adjoint();
        for c in 0..model.basis_len() {
            for (r, v) in model.apply_basis(&x, c) {
                prop_assert_eq!(model.apply_basis(&xs, r).get(&c).cloned(), Some(v));
            }
        }
        for c in 0..model.basis_len() {
            for (r, v) in model.apply_basis(&xs, c) {
                prop_assert_eq!(model.apply_basis(&x, r).get(&c).cloned(), Some(v));
            }
        }
    }
    Ok(())
}

pub fn letters_of(ctx: &Context) -> Vec<Letter> {
    (0..(2 * ctx.n() + 2 * ctx.m() + 2) as u8).map(|c| letter(ctx, c)).collect()
}
