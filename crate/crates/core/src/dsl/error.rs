use std::fmt;

use thiserror::Error;

use super::ast::Ty;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    InvalidCharacter(char),
    /// `found` is `None` at end of input.
    Unexpected {
        found: Option<String>,
        expected: Vec<&'static str>,
    },
    UnknownIdentifier(String),
    IntegerTooLarge(String),
}

/// Syntax error; `position` is a character offset in `[0, len(text)]`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(position: usize, kind: ParseErrorKind) -> Self {
        ParseError { position, kind }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::InvalidCharacter(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::Unexpected { found, expected } => {
                match found {
                    Some(t) => write!(f, "unexpected `{t}`")?,
                    None => f.write_str("unexpected end of input")?,
                }
                write!(f, ", expected one of: {}", expected.join(", "))
            }
            ParseErrorKind::UnknownIdentifier(name) => write!(
                f,
                "unknown identifier `{name}` (known: sum, min, max, d<i>, count(..), die(..))"
            ),
            ParseErrorKind::IntegerTooLarge(text) => {
                write!(f, "integer literal {text} does not fit in 64 bits")
            }
        }
    }
}

/// Errors raised while binding an expression to a die or evaluating it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("die index d{index} is out of range: positions run from d1 to d{dice}")]
    IndexOutOfRange { index: usize, dice: usize },
    #[error("type error: expected {expected} expression, found {found} expression `{expr}`")]
    Type {
        expected: Ty,
        found: Ty,
        expr: String,
    },
    #[error("count({0}): no face has this label or value")]
    UnknownFace(String),
    #[error("outcome has {found} entries but the expression is bound to {expected} dice")]
    OutcomeLength { expected: usize, found: usize },
    #[error("integer overflow while evaluating `{0}`")]
    Overflow(String),
}
