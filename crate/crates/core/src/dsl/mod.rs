//! Expression language for events and random variables over outcomes.
//!
//! ```text
//! expr   := or
//! or     := and ("or" and)*
//! and    := not ("and" not)*
//! not    := "not" not | chain
//! chain  := sum (cmp sum)*            cmp: < <= > >= == !=
//! sum    := prod (("+" | "-") prod)*
//! prod   := unary ("*" unary)*
//! unary  := "-" unary | atom
//! atom   := integer | "sum" | "min" | "max" | "d" digits
//!         | "count" "(" label-or-integer ")" | "die" "(" integer ")"
//!         | "(" expr ")"
//! ```
//!
//! Comparison chains follow Python: `a <= b <= c` means `a <= b and b <= c`.
//! Die positions are 1-indexed. Arithmetic is over `i64` with no division.

mod ast;
mod error;
mod eval;
mod lexer;
mod parser;
mod pretty;

pub use ast::{BinOp, BoolOp, Call, CmpOp, Expr, FaceRef, Ty, Var};
pub use error::{EvalError, ParseError, ParseErrorKind};
pub use eval::{eval_bool, eval_int, BoundExpr, EvalContext};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::parse;
pub use pretty::pretty;
