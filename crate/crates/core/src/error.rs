use thiserror::Error;

use crate::freegroup::Family;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("context mismatch: ({0}) vs ({1})")]
    ContextMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range for family {family} (bound {bound})")]
    IndexOutOfRange { family: Family, index: u32, bound: u32 },
    #[error("empty word")]
    EmptyWord,
    #[error("sqrt({0}) does not lie in the scalar field")]
    RadicandNotInField(u64),
    #[error("word is not in the p-corner: {0}")]
    NotInCorner(String),
    #[error("word is not reduced: {0}")]
    Reducible(String),
    #[error("element is not in the subalgebra A_{side}: {element}")]
    NotInSubalgebra { side: char, element: String },
    #[error("invalid refinement position {position} for word of length {len}")]
    InvalidPosition { position: usize, len: usize },
    #[error("model window too small: need exactness for words of length {needed}")]
    WindowTooSmall { needed: usize },
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
