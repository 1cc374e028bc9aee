//! Monomials: reduced words in `s_i`, `t_j`, their adjoints, `p` and `q`.
//!
//! Every letter carries a source and range side (`P` or `Q`). A word is
//! reduced by a stack pass that applies the local rules
//!
//! * adjacent letters with mismatched sides give zero,
//! * `s_i' s_k` is zero for `i != k` and `q` for `i == k` (same for `t`),
//! * `p` and `q` are absorbed by any neighbour of matching side.
//!
//! All rules have length two and every critical pair resolves, so the
//! result does not depend on the order in which rules fire.

use std::fmt;

use crate::context::Context;
use crate::error::{Error, Result};
use crate::freegroup::{Family, GroupLetter, GroupWord};

/// The two complementary corners: `P` is the range of `s_i`, `Q` its source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    P,
    Q,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::P => Side::Q,
            Side::Q => Side::P,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    S(u32),
    T(u32),
    SStar(u32),
    TStar(u32),
    P,
    Q,
}

impl Letter {
    pub fn generator(family: Family, index: u32) -> Letter {
        match family {
            Family::S => Letter::S(index),
            Family::T => Letter::T(index),
        }
    }

    pub fn generator_star(family: Family, index: u32) -> Letter {
        match family {
            Family::S => Letter::SStar(index),
            Family::T => Letter::TStar(index),
        }
    }

    pub fn range(self) -> Side {
        match self {
            Letter::S(_) | Letter::T(_) | Letter::P => Side::P,
            Letter::SStar(_) | Letter::TStar(_) | Letter::Q => Side::Q,
        }
    }

    pub fn source(self) -> Side {
        match self {
            Letter::S(_) | Letter::T(_) | Letter::Q => Side::Q,
            Letter::SStar(_) | Letter::TStar(_) | Letter::P => Side::P,
        }
    }

    pub fn star(self) -> Letter {
        match self {
            Letter::S(i) => Letter::SStar(i),
            Letter::SStar(i) => Letter::S(i),
            Letter::T(j) => Letter::TStar(j),
            Letter::TStar(j) => Letter::T(j),
            Letter::P => Letter::P,
            Letter::Q => Letter::Q,
        }
    }

    /// Family, index and whether the letter is starred; `None` for `p`, `q`.
    pub fn parts(self) -> Option<(Family, u32, bool)> {
        match self {
            Letter::S(i) => Some((Family::S, i, false)),
            Letter::SStar(i) => Some((Family::S, i, true)),
            Letter::T(j) => Some((Family::T, j, false)),
            Letter::TStar(j) => Some((Family::T, j, true)),
            Letter::P | Letter::Q => None,
        }
    }

    pub fn is_side_projection(self) -> bool {
        matches!(self, Letter::P | Letter::Q)
    }

    pub fn group_letter(self) -> Option<GroupLetter> {
        self.parts().map(|(f, i, star)| GroupLetter::new(f, i, star))
    }

    fn check(self, ctx: &Context) -> Result<()> {
        match self.parts() {
            Some((f, i, _)) => ctx.check_index(f, i),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parts() {
            Some((fam, i, star)) => {
                write!(f, "{}{}", fam.generator_char(), i)?;
                if star {
                    write!(f, "'")?;
                }
                Ok(())
            }
            None if *self == Letter::P => write!(f, "p"),
            None => write!(f, "q"),
        }
    }
}

/// A nonzero reduced word. Letters compose left to right as operators, so the
/// rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Letter>);

enum Step {
    Push,
    Zero,
    /// Pop the top and continue with this letter.
    Replace(Letter),
    /// Drop the incoming letter.
    Drop,
}

fn combine(x: Letter, y: Letter) -> Step {
    if x.source() != y.range() {
        return Step::Zero;
    }
    match (x, y) {
        (Letter::SStar(i), Letter::S(k)) | (Letter::TStar(i), Letter::T(k)) => {
            if i == k {
                Step::Replace(Letter::Q)
            } else {
                Step::Zero
            }
        }
        (Letter::P | Letter::Q, _) => Step::Replace(y),
        (_, Letter::P | Letter::Q) => Step::Drop,
        _ => Step::Push,
    }
}

/// Pushes `letters` onto an already reduced stack. Returns `false` on zero.
fn reduce_onto(stack: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) -> bool {
    for l in letters {
        let mut y = l;
        loop {
            match stack.last() {
                None => {
                    stack.push(y);
                    break;
                }
                Some(&x) => match combine(x, y) {
                    Step::Push => {
                        stack.push(y);
                        break;
                    }
                    Step::Zero => return false,
                    Step::Replace(z) => {
                        stack.pop();
                        y = z;
                    }
                    Step::Drop => break,
                },
            }
        }
    }
    true
}

/// Reduces an arbitrary letter sequence. `Ok(None)` means the word is zero.
pub fn reduce_word(ctx: &Context, letters: &[Letter]) -> Result<Option<Monomial>> {
    if letters.is_empty() {
        return Err(Error::EmptyWord);
    }
    for l in letters {
        l.check(ctx)?;
    }
    let mut stack = Vec::with_capacity(letters.len());
    Ok(reduce_onto(&mut stack, letters.iter().copied()).then_some(Monomial(stack)))
}

impl Monomial {
    pub fn letter(l: Letter) -> Monomial {
        Monomial(vec![l])
    }

    pub fn p() -> Monomial {
        Monomial(vec![Letter::P])
    }

    pub fn q() -> Monomial {
        Monomial(vec![Letter::Q])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn range(&self) -> Side {
        self.0[0].range()
    }

    pub fn source(&self) -> Side {
        self.0[self.0.len() - 1].source()
    }

    /// Product of two reduced words; only the junction needs reducing.
    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        let mut stack = Vec::with_capacity(self.0.len() + other.0.len());
        stack.extend_from_slice(&self.0);
        reduce_onto(&mut stack, other.0.iter().copied()).then_some(Monomial(stack))
    }

    pub fn mul_letters(&self, letters: &[Letter]) -> Option<Monomial> {
        let mut stack = self.0.clone();
        reduce_onto(&mut stack, letters.iter().copied()).then_some(Monomial(stack))
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial(self.0.iter().rev().map(|l| l.star()).collect())
    }

    pub fn group_image(&self) -> GroupWord {
        GroupWord::from_letters(self.0.iter().filter_map(|l| l.group_letter()))
    }

    /// True if no reduction rule applies anywhere in the word.
    pub fn is_reduced_sequence(letters: &[Letter]) -> bool {
        if letters.is_empty() {
            return false;
        }
        let single_side = letters.len() == 1 && letters[0].is_side_projection();
        single_side || letters.windows(2).all(|w| matches!(combine(w[0], w[1]), Step::Push))
    }

    /// The monomial tracing a vertex path: `a_i -> s_i`, `a_i^-1 -> s_i'`.
    pub fn from_group_word(g: &GroupWord) -> Option<Monomial> {
        if g.is_empty() {
            return None;
        }
        let letters: Vec<Letter> = g
            .letters()
            .iter()
            .map(|l| if l.inverse { Letter::generator_star(l.family, l.index) } else { Letter::generator(l.family, l.index) })
            .collect();
        let mut stack = Vec::new();
        reduce_onto(&mut stack, letters).then_some(Monomial(stack))
    }

    pub(crate) fn from_reduced_unchecked(letters: Vec<Letter>) -> Monomial {
        debug_assert!(Monomial::is_reduced_sequence(&letters));
        Monomial(letters)
    }
}

pub fn adjoint_word(w: &Monomial) -> Monomial {
    w.adjoint()
}

pub fn group_image(w: &Monomial) -> GroupWord {
    w.group_image()
}

/// Decides whether a monomial is a projection: `w w = w` and `w' = w`.
pub fn is_projection_word(ctx: &Context, w: &Monomial) -> bool {
    use crate::elements::Element;
    let x = Element::from_monomial(*ctx, w.clone());
    let sq = &x * &x;
    let adj = x.adjoint();
    crate::equality::equals(&sq, &x).is_ok_and(|v| v.is_equal()) && crate::equality::equals(&adj, &x).is_ok_and(|v| v.is_equal())
}

/// All reduced nonzero monomials with at most `max_len` letters, in
/// length-then-lexicographic order. `p` and `q` are included as length-1 words.
pub fn enumerate_reduced(ctx: &Context, max_len: usize) -> Vec<Monomial> {
    let mut gens = Vec::new();
    for i in 1..=ctx.n() {
        gens.push(Letter::S(i));
        gens.push(Letter::SStar(i));
    }
    for j in 1..=ctx.m() {
        gens.push(Letter::T(j));
        gens.push(Letter::TStar(j));
    }
    gens.sort();
    let mut out = Vec::new();
    if max_len == 0 {
        return out;
    }
    out.push(Monomial::p());
    out.push(Monomial::q());
    let mut frontier: Vec<Vec<Letter>> = gens.iter().map(|&g| vec![g]).collect();
    for len in 1..=max_len {
        out.extend(frontier.iter().cloned().map(Monomial));
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            let last = *w.last().unwrap();
            for &g in &gens {
                if matches!(combine(last, g), Step::Push) {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    fn ctx(n: u32, m: u32) -> Context {
        Context::new(n, m).unwrap()
    }

    fn red(c: &Context, w: &[Letter]) -> Option<String> {
        reduce_word(c, w).unwrap().map(|m| m.to_string())
    }

    #[test]
    fn leavitt_rules() {
        let c = ctx(2, 2);
        assert_eq!(red(&c, &[SStar(1), S(2)]), None);
        assert_eq!(red(&c, &[SStar(1), S(1)]).as_deref(), Some("q"));
        assert_eq!(red(&c, &[Q, S(1)]), None);
        assert_eq!(red(&c, &[S(1), TStar(1), T(1), SStar(2)]).as_deref(), Some("s1 s2'"));
        assert_eq!(red(&c, &[P, Q]), None);
        assert_eq!(red(&c, &[Q, P]), None);
        assert_eq!(red(&c, &[P, S(1), Q]).as_deref(), Some("s1"));
        assert_eq!(red(&c, &[P, P]).as_deref(), Some("p"));
    }

    #[test]
    fn errors() {
        let c = ctx(2, 1);
        assert_eq!(reduce_word(&c, &[]), Err(Error::EmptyWord));
        assert!(matches!(reduce_word(&c, &[T(2)]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(reduce_word(&c, &[S(0)]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn adjoints() {
        let c = ctx(2, 2);
        let w = reduce_word(&c, &[S(1), TStar(2)]).unwrap().unwrap();
        assert_eq!(w.adjoint().to_string(), "t2 s1'");
        assert_eq!(Monomial::p().adjoint(), Monomial::p());
        let w = reduce_word(&c, &[S(1), SStar(1)]).unwrap().unwrap();
        assert_eq!(w.adjoint(), w);
    }

    #[test]
    fn group_images() {
        let c = ctx(2, 2);
        let w = reduce_word(&c, &[S(1), SStar(2), T(1), TStar(2)]).unwrap().unwrap();
        assert_eq!(w.group_image().to_string(), "a1 a2^-1 b1 b2^-1");
        let w = reduce_word(&c, &[S(1), SStar(1)]).unwrap().unwrap();
        assert!(w.group_image().is_identity());
        assert!(Monomial::q().group_image().is_identity());
    }

    #[test]
    fn projection_words() {
        let c = ctx(2, 2);
        let w = reduce_word(&c, &[S(1), SStar(1)]).unwrap().unwrap();
        assert!(is_projection_word(&c, &w));
        let w = reduce_word(&c, &[S(1), TStar(1), S(2), SStar(2), T(1), SStar(1)]).unwrap().unwrap();
        assert!(is_projection_word(&c, &w));
        let w = reduce_word(&c, &[S(1), TStar(1)]).unwrap().unwrap();
        assert!(!is_projection_word(&c, &w));
    }

    #[test]
    fn enumeration_is_reduced_and_distinct() {
        let c = ctx(2, 3);
        let all = enumerate_reduced(&c, 4);
        let set: std::collections::BTreeSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        for w in &all {
            assert!(Monomial::is_reduced_sequence(w.letters()), "{w}");
            assert_eq!(reduce_word(&c, w.letters()).unwrap().as_ref(), Some(w));
        }
    }
}
