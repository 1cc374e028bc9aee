//! Exact symbolic engine for the dense *-subalgebra of `O_{n,m}`.
//!
//! Elements are finite combinations of reduced monomials in `s_i`, `t_j`,
//! their adjoints and the projections `p`, `q`, with coefficients in
//! `Q(sqrt n, sqrt m)`. Equality is decided exactly (see [`equality`]);
//! [`permrep`] provides concrete partial-permutation models used to
//! cross-check the decision procedure.

pub mod check;
pub mod context;
pub mod covariant;
pub mod elements;
pub mod equality;
pub mod error;
pub mod exec;
pub mod freegroup;
pub mod maps;
pub mod matrep;
pub mod parser;
pub mod permrep;
pub mod scalars;
pub mod verify;
pub mod words;

pub use context::Context;
pub use elements::{Element, RefineStep};
pub use equality::{equals, EqualityConfig, Verdict, Witness};
pub use error::{Error, Result};
pub use exec::Exec;
pub use freegroup::{Family, GroupLetter, GroupWord};
pub use parser::{parse_element, parse_groupword, parse_scalar};
pub use scalars::{QuadField, Scalar};
pub use words::{Letter, Monomial, Side};
