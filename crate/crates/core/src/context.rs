use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::Family;
use crate::scalars::QuadField;

/// The parameters `(n, m)` of the algebra together with its scalar field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    n: u32,
    m: u32,
    field: QuadField,
}

impl Context {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidArgument(format!("n and m must be >= 1, got ({n}, {m})")));
        }
        Ok(Context { n, m, field: QuadField::new(n as u64, m as u64) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    /// Number of generators in a family: `n` for s, `m` for t.
    pub fn size(&self, family: Family) -> u32 {
        match family {
            Family::S => self.n,
            Family::T => self.m,
        }
    }

    pub fn check_index(&self, family: Family, index: u32) -> Result<()> {
        let bound = self.size(family);
        if index == 0 || index > bound {
            Err(Error::IndexOutOfRange { family, index, bound })
        } else {
            Ok(())
        }
    }

    pub(crate) fn ensure_same(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, m={}", self.n, self.m)
    }
}
