//! Reduced words in the free group on `a1..an, b1..bm`.
//!
//! The `a` letters pair with the `s` generators of the algebra and the `b`
//! letters with the `t` generators; both are tagged by [`Family`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// The `s` generators, group letters `a`.
    S,
    /// The `t` generators, group letters `b`.
    T,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::S => Family::T,
            Family::T => Family::S,
        }
    }

    pub fn generator_char(self) -> char {
        match self {
            Family::S => 's',
            Family::T => 't',
        }
    }

    pub fn group_char(self) -> char {
        match self {
            Family::S => 'a',
            Family::T => 'b',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.generator_char())
    }
}

/// A signed letter `a_i`, `a_i^-1`, `b_j` or `b_j^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupLetter {
    pub family: Family,
    pub index: u32,
    pub inverse: bool,
}

impl GroupLetter {
    pub fn new(family: Family, index: u32, inverse: bool) -> Self {
        GroupLetter { family, index, inverse }
    }

    pub fn inv(self) -> Self {
        GroupLetter { inverse: !self.inverse, ..self }
    }

    fn cancels(self, other: GroupLetter) -> bool {
        self.family == other.family && self.index == other.index && self.inverse != other.inverse
    }
}

impl fmt::Display for GroupLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.group_char(), self.index)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// A freely reduced word; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupWord(Vec<GroupLetter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters<I: IntoIterator<Item = GroupLetter>>(letters: I) -> Self {
        let mut w = GroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Like [`GroupWord::from_letters`] but rejects indices outside `(n, m)`.
    pub fn checked<I: IntoIterator<Item = GroupLetter>>(ctx: &Context, letters: I) -> Result<Self> {
        let mut w = GroupWord::identity();
        for l in letters {
            ctx.check_index(l.family, l.index)?;
            w.push(l);
        }
        Ok(w)
    }

    pub fn letters(&self) -> &[GroupLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<GroupLetter> {
        self.0.last().copied()
    }

    /// Right-multiplies by one letter, cancelling if possible.
    pub fn push(&mut self, l: GroupLetter) {
        match self.0.last() {
            Some(&top) if top.cancels(l) => {
                self.0.pop();
            }
            _ => self.0.push(l),
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    /// Product with index validation against the context.
    pub fn checked_mul(&self, other: &GroupWord, ctx: &Context) -> Result<GroupWord> {
        for l in self.0.iter().chain(other.0.iter()) {
            ctx.check_index(l.family, l.index)?;
        }
        Ok(self.mul(other))
    }

    pub fn inv(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
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

    fn a(i: u32) -> GroupLetter {
        GroupLetter::new(Family::S, i, false)
    }
    fn b(j: u32) -> GroupLetter {
        GroupLetter::new(Family::T, j, false)
    }

    #[test]
    fn cancellation() {
        let g = GroupWord::from_letters([a(1)]);
        let h = GroupWord::from_letters([a(1).inv()]);
        assert!(g.mul(&h).is_identity());

        let g = GroupWord::from_letters([a(1), a(2).inv()]);
        let h = GroupWord::from_letters([a(2), b(1).inv()]);
        assert_eq!(g.mul(&h), GroupWord::from_letters([a(1), b(1).inv()]));

        let g = GroupWord::from_letters([a(1)]);
        let h = GroupWord::from_letters([b(1)]);
        assert_eq!(g.mul(&h).to_string(), "a1 b1");
    }

    #[test]
    fn inverse_reverses() {
        let g = GroupWord::from_letters([a(1), a(2).inv(), b(1), b(2).inv()]);
        assert_eq!(g.inv(), GroupWord::from_letters([b(2), b(1).inv(), a(2), a(1).inv()]));
        assert!(GroupWord::identity().inv().is_identity());
        assert_eq!(GroupWord::from_letters([a(3)]).inv().to_string(), "a3^-1");
    }

    #[test]
    fn bounds_are_checked() {
        let ctx = Context::new(2, 1).unwrap();
        let g = GroupWord::from_letters([a(3)]);
        assert!(g.checked_mul(&GroupWord::identity(), &ctx).is_err());
        assert!(GroupWord::checked(&ctx, [b(2)]).is_err());
        assert!(GroupWord::checked(&ctx, [b(1), a(2)]).is_ok());
    }
}
