//! Canonical rendering with the minimal set of parentheses, such that
//! `parse(&expr.to_string()) == expr` for every parser-produced tree.
//!
//! Negative [`Expr::Int`] literals never come out of the parser (it builds
//! `Neg(Int(n))`); they print as `-n` and therefore re-parse as `Neg`.

use std::fmt::{self, Write};

use super::ast::{BinOp, BoolOp, Call, Expr};

const OR: u8 = 1;
const AND: u8 = 2;
const NOT: u8 = 3;
const CHAIN: u8 = 4;
const ADD: u8 = 5;
const MUL: u8 = 6;
const NEG: u8 = 7;
const ATOM: u8 = 8;

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Bool(BoolOp::Or, ..) => OR,
        Expr::Bool(BoolOp::And, ..) => AND,
        Expr::Not(_) => NOT,
        Expr::Chain { .. } => CHAIN,
        Expr::Binary(BinOp::Add | BinOp::Sub, ..) => ADD,
        Expr::Binary(BinOp::Mul, ..) => MUL,
        Expr::Neg(_) => NEG,
        Expr::Int(_) | Expr::Var(_) | Expr::Index(_) | Expr::Call(_) => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if precedence(e) < min {
        f.write_char('(')?;
        write_expr(f, e)?;
        f.write_char(')')
    } else {
        write_expr(f, e)
    }
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    match e {
        Expr::Int(n) => write!(f, "{n}"),
        Expr::Var(v) => f.write_str(v.name()),
        Expr::Index(i) => write!(f, "d{i}"),
        Expr::Call(Call::Count(arg)) => write!(f, "count({arg})"),
        Expr::Call(Call::Die(i)) => write!(f, "die({i})"),
        Expr::Neg(inner) => {
            f.write_char('-')?;
            write_at(f, inner, NEG)
        }
        Expr::Binary(op, lhs, rhs) => {
            let p = precedence(e);
            write_at(f, lhs, p)?;
            write!(f, " {} ", op.symbol())?;
            write_at(f, rhs, p + 1)
        }
        Expr::Chain {
            operands,
            comparators,
        } => {
            write_at(f, &operands[0], ADD)?;
            for (op, rhs) in comparators.iter().zip(&operands[1..]) {
                write!(f, " {} ", op.symbol())?;
                write_at(f, rhs, ADD)?;
            }
            Ok(())
        }
        Expr::Bool(op, lhs, rhs) => {
            let p = precedence(e);
            write_at(f, lhs, p)?;
            write!(f, " {} ", op.keyword())?;
            write_at(f, rhs, p + 1)
        }
        Expr::Not(inner) => {
            f.write_str("not ")?;
            write_at(f, inner, NOT)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self)
    }
}

/// Canonical source text of `expr`.
pub fn pretty(expr: &Expr) -> String {
    expr.to_string()
}

#[cfg(test)]
mod tests {
    use super::super::ast::{CmpOp, Var};
    use super::super::parse;
    use super::*;

    #[test]
    fn canonical_forms() {
        let chain = Expr::chain(
            vec![Expr::Int(7), Expr::Var(Var::Sum), Expr::Int(14)],
            vec![CmpOp::Le, CmpOp::Le],
        );
        assert_eq!(pretty(&chain), "7 <= sum <= 14");

        let both = Expr::and(
            Expr::compare(Expr::Index(1), CmpOp::Gt, Expr::Int(1)),
            Expr::compare(Expr::Index(2), CmpOp::Lt, Expr::Int(2)),
        );
        assert_eq!(pretty(&both), "d1 > 1 and d2 < 2");

        let negated = Expr::not(Expr::compare(Expr::Var(Var::Sum), CmpOp::Eq, Expr::Int(10)));
        assert_eq!(pretty(&negated), "not sum == 10");
    }

    #[test]
    fn parentheses_only_where_needed() {
        for src in [
            "(d1 + d2) * d3",
            "d1 - (d2 - d3)",
            "d1 - d2 - d3",
            "-(d1 + 1)",
            "d1 - -d2",
            "not (d1 > 1 and d2 > 1)",
            "d1 > 1 and (d2 > 1 or d3 > 1)",
            "(d1 < d2) == (d2 < d3)",
            "not not sum > 3",
            "(not sum > 3) < 1",
            "count(K) + count(-2) * die(3)",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(pretty(&e), src);
            assert_eq!(parse(&pretty(&e)).unwrap(), e);
        }
        assert_eq!(pretty(&parse("((sum))").unwrap()), "sum");
        assert_eq!(pretty(&parse("(d1*d2)+3").unwrap()), "d1 * d2 + 3");
    }
}
