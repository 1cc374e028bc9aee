//! Finite linear combinations of monomials with *-algebra arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed};

use crate::context::Context;
use crate::equality::{self, Verdict};
use crate::error::{Error, Result};
use crate::freegroup::{Family, GroupWord};
use crate::scalars::{fmt_rational, Scalar};
use crate::words::{Letter, Monomial, Side};

#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    ctx: Context,
    terms: BTreeMap<Monomial, Scalar>,
}

/// The component of an element over one group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub group: GroupWord,
    pub element: Element,
}

impl Element {
    pub fn zero(ctx: Context) -> Self {
        Element { ctx, terms: BTreeMap::new() }
    }

    /// The unit, stored as `p + q`.
    pub fn one(ctx: Context) -> Self {
        Self::p(ctx) + Self::q(ctx)
    }

    pub fn p(ctx: Context) -> Self {
        Self::from_monomial(ctx, Monomial::p())
    }

    pub fn q(ctx: Context) -> Self {
        Self::from_monomial(ctx, Monomial::q())
    }

    pub fn from_monomial(ctx: Context, w: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, Scalar::one(ctx.field()));
        Element { ctx, terms }
    }

    pub fn from_letter(ctx: Context, l: Letter) -> Result<Self> {
        Self::from_letters(ctx, &[l])
    }

    /// Reduces a raw letter sequence into an element (zero if it vanishes).
    pub fn from_letters(ctx: Context, letters: &[Letter]) -> Result<Self> {
        Ok(match crate::words::reduce_word(&ctx, letters)? {
            Some(w) => Self::from_monomial(ctx, w),
            None => Self::zero(ctx),
        })
    }

    pub fn s(ctx: Context, i: u32) -> Result<Self> {
        Self::from_letter(ctx, Letter::S(i))
    }

    pub fn t(ctx: Context, j: u32) -> Result<Self> {
        Self::from_letter(ctx, Letter::T(j))
    }

    pub fn generator(ctx: Context, family: Family, index: u32) -> Result<Self> {
        Self::from_letter(ctx, Letter::generator(family, index))
    }

    pub fn scalar(k: Scalar, ctx: Context) -> Self {
        Self::one(ctx).scale(&k)
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no terms are stored. This is syntactic; use
    /// [`equality::equals`] to decide equality in the algebra.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Monomial) -> Option<&Scalar> {
        self.terms.get(w)
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    fn accumulate(terms: &mut BTreeMap<Monomial, Scalar>, w: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&w) {
            Some(old) => {
                let sum = &*old + &c;
                if sum.is_zero() {
                    terms.remove(&w);
                } else {
                    *old = sum;
                }
            }
            None => {
                terms.insert(w, c);
            }
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            Self::accumulate(&mut terms, w.clone(), c.clone());
        }
        Ok(Element { ctx: self.ctx, terms })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            Self::accumulate(&mut terms, w.clone(), -c);
        }
        Ok(Element { ctx: self.ctx, terms })
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        if k.is_zero() {
            return Element::zero(self.ctx);
        }
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect();
        Element { ctx: self.ctx, terms }
    }

    pub fn try_scale(&self, k: &Scalar) -> Result<Element> {
        if k.field() != self.ctx.field() {
            return Err(Error::ContextMismatch(self.ctx.to_string(), format!("{:?}", k.field())));
        }
        Ok(self.scale(k))
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut terms = BTreeMap::new();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if let Some(w) = w1.mul(w2) {
                    Self::accumulate(&mut terms, w, c1 * c2);
                }
            }
        }
        Ok(Element { ctx: self.ctx, terms })
    }

    /// Right multiplication by a single letter.
    pub fn mul_letter(&self, l: Letter) -> Element {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            if let Some(v) = w.mul_letters(&[l]) {
                Self::accumulate(&mut terms, v, c.clone());
            }
        }
        Element { ctx: self.ctx, terms }
    }

    /// Left multiplication by a single letter.
    pub fn letter_mul(&self, l: Letter) -> Element {
        let lw = Monomial::letter(l);
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            if let Some(v) = lw.mul(w) {
                Self::accumulate(&mut terms, v, c.clone());
            }
        }
        Element { ctx: self.ctx, terms }
    }

    /// Term-wise adjoint; all scalars are real so coefficients are unchanged.
    pub fn adjoint(&self) -> Element {
        let terms = self.terms.iter().map(|(w, c)| (w.adjoint(), c.clone())).collect();
        Element { ctx: self.ctx, terms }
    }

    pub fn pow(&self, k: u32) -> Element {
        let mut acc = Element::one(self.ctx);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The sub-sum over monomials whose group image is `g`.
    pub fn fourier(&self, g: &GroupWord) -> Element {
        let terms = self.terms.iter().filter(|(w, _)| &w.group_image() == g).map(|(w, c)| (w.clone(), c.clone())).collect();
        Element { ctx: self.ctx, terms }
    }

    /// All nonzero Fourier components, ordered by group element.
    pub fn fibers(&self) -> Vec<Fiber> {
        let mut by_group: BTreeMap<GroupWord, BTreeMap<Monomial, Scalar>> = BTreeMap::new();
        for (w, c) in &self.terms {
            by_group.entry(w.group_image()).or_default().insert(w.clone(), c.clone());
        }
        by_group.into_iter().map(|(group, terms)| Fiber { group, element: Element { ctx: self.ctx, terms } }).collect()
    }

    /// Value-preserving expansion: at each designated interface of side `P`
    /// the partition `p = sum_i x_i x_i'` of the chosen family is inserted.
    /// Interfaces of side `Q` are left alone.
    pub fn refine(&self, schedule: &[RefineStep]) -> Result<Element> {
        let mut cur = self.clone();
        for step in schedule {
            let mut terms = BTreeMap::new();
            for (w, c) in &cur.terms {
                let len = w.len();
                if step.position > len {
                    return Err(Error::InvalidPosition { position: step.position, len });
                }
                let side = if step.position == 0 { w.range() } else { w.letters()[step.position - 1].source() };
                if side != Side::P {
                    Self::accumulate(&mut terms, w.clone(), c.clone());
                    continue;
                }
                let (head, tail) = w.letters().split_at(step.position);
                for i in 1..=self.ctx.size(step.family) {
                    let mut seq = Vec::with_capacity(len + 2);
                    seq.extend_from_slice(head);
                    seq.push(Letter::generator(step.family, i));
                    seq.push(Letter::generator_star(step.family, i));
                    seq.extend_from_slice(tail);
                    if let Some(v) = crate::words::reduce_word(&self.ctx, &seq)? {
                        Self::accumulate(&mut terms, v, c.clone());
                    }
                }
            }
            cur = Element { ctx: self.ctx, terms };
        }
        Ok(cur)
    }

    /// Verdict of `x x' x = x`.
    pub fn is_partial_isometry(&self) -> Result<Verdict> {
        let xxx = &(self * &self.adjoint()) * self;
        equality::equals(&xxx, self)
    }
}

/// One refinement instruction: insert a partition of unity for `family` at
/// letter boundary `position` (0 is the left end).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefineStep {
    pub position: usize,
    pub family: Family,
}

impl RefineStep {
    pub fn new(position: usize, family: Family) -> Self {
        RefineStep { position, family }
    }
}

impl fmt::Display for Element {
    /// Terms sorted by group image and then monomial text. Each nonzero
    /// coordinate of a coefficient becomes its own term so that the output
    /// stays inside the parser grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut rows: Vec<(GroupWord, String, &Scalar)> = self.terms.iter().map(|(w, c)| (w.group_image(), w.to_string(), c)).collect();
        rows.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        let mut first = true;
        for (_, text, coef) in rows {
            for (r, radicand) in coef.radical_parts() {
                let neg = r.is_negative();
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                let mag = r.abs();
                let mut pieces = Vec::new();
                if !mag.is_one() {
                    pieces.push(fmt_rational(&mag));
                }
                if radicand != 1 {
                    pieces.push(format!("sqrt({radicand})"));
                }
                pieces.push(text.clone());
                write!(f, "{}", pieces.join(" "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({})", self.ctx, self)
    }
}

impl<'a> Add<&'a Element> for &'a Element {
    type Output = Element;
    /// Panics on a context mismatch; see [`Element::try_add`].
    fn add(self, rhs: &'a Element) -> Element {
        self.try_add(rhs).expect("element context mismatch")
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Element> for &'a Element {
    type Output = Element;
    fn sub(self, rhs: &'a Element) -> Element {
        self.try_sub(rhs).expect("element context mismatch")
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Element> for &'a Element {
    type Output = Element;
    fn mul(self, rhs: &'a Element) -> Element {
        self.try_mul(rhs).expect("element context mismatch")
    }
}

impl Mul for Element {
    type Output = Element;
    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect();
        Element { ctx: self.ctx, terms }
    }
}

/// Sums an iterator of elements (zero when empty).
pub fn sum(ctx: Context, items: impl IntoIterator<Item = Element>) -> Element {
    let mut terms = BTreeMap::new();
    for x in items {
        assert_eq!(x.ctx, ctx, "element context mismatch");
        for (w, c) in x.terms {
            Element::accumulate(&mut terms, w, c);
        }
    }
    Element { ctx, terms }
}
