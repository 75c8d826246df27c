//! Recursive-descent parser. Precedence, loosest first: `or`, `and`, `not`,
//! comparison chain, `+`/`-`, `*`, unary `-`, atoms.

use super::ast::{BinOp, BoolOp, Call, CmpOp, Expr, FaceRef, Var};
use super::error::{ParseError, ParseErrorKind};
use super::lexer::{tokenize, Token, TokenKind};

const ATOM_START: &[&str] = &[
    "integer",
    "sum",
    "min",
    "max",
    "d<i>",
    "count(..)",
    "die(..)",
    "(",
    "-",
    "not",
];
const AFTER_EXPR: &[&str] = &["+", "-", "*", "comparator", "and", "or", "end of input"];

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: src.chars().count(),
    };
    let expr = p.or_expr()?;
    if p.peek().is_some() {
        return Err(p.unexpected(AFTER_EXPR));
    }
    Ok(expr)
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token<'a>> {
        let t = self.tokens.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn at(&self, kind: TokenKind, text: &str) -> bool {
        self.peek()
            .is_some_and(|t| t.kind == kind && t.text == text)
    }

    fn eat(&mut self, kind: TokenKind, text: &str) -> bool {
        if self.at(kind, text) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &[&'static str]) -> ParseError {
        let (position, found) = match self.peek() {
            Some(t) => (t.position, Some(t.text.to_string())),
            None => (self.end, None),
        };
        ParseError::new(
            position,
            ParseErrorKind::Unexpected {
                found,
                expected: expected.to_vec(),
            },
        )
    }

    fn expect(&mut self, kind: TokenKind, text: &'static str) -> Result<(), ParseError> {
        if self.eat(kind, text) {
            Ok(())
        } else {
            Err(self.unexpected(&[text]))
        }
    }

    fn or_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.eat(TokenKind::Keyword, "or") {
            let rhs = self.and_expr()?;
            lhs = Expr::Bool(BoolOp::Or, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.not_expr()?;
        while self.eat(TokenKind::Keyword, "and") {
            let rhs = self.not_expr()?;
            lhs = Expr::Bool(BoolOp::And, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn not_expr(&mut self) -> Result<Expr, ParseError> {
        if self.eat(TokenKind::Keyword, "not") {
            return Ok(Expr::Not(Box::new(self.not_expr()?)));
        }
        self.chain()
    }

    fn chain(&mut self) -> Result<Expr, ParseError> {
        let first = self.additive()?;
        let mut operands = vec![first];
        let mut comparators = Vec::new();
        while let Some(op) = self
            .peek()
            .filter(|t| t.kind == TokenKind::Comparator)
            .and_then(|t| CmpOp::from_symbol(t.text))
        {
            self.pos += 1;
            comparators.push(op);
            operands.push(self.additive()?);
        }
        if comparators.is_empty() {
            Ok(operands.pop().unwrap())
        } else {
            Ok(Expr::Chain {
                operands,
                comparators,
            })
        }
    }

    fn additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = if self.eat(TokenKind::Operator, "+") {
                BinOp::Add
            } else if self.eat(TokenKind::Operator, "-") {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.multiplicative()?;
            lhs = Expr::binary(op, lhs, rhs);
        }
    }

    fn multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(TokenKind::Operator, "*") {
            let rhs = self.unary()?;
            lhs = Expr::binary(BinOp::Mul, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(TokenKind::Operator, "-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let Some(tok) = self.peek().copied() else {
            return Err(self.unexpected(ATOM_START));
        };
        match tok.kind {
            TokenKind::Integer => {
                self.pos += 1;
                Ok(Expr::Int(int_literal(&tok)?))
            }
            TokenKind::LParen => {
                self.pos += 1;
                let inner = self.or_expr()?;
                self.expect(TokenKind::RParen, ")")?;
                Ok(inner)
            }
            TokenKind::Identifier => {
                self.pos += 1;
                self.identifier(tok)
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn identifier(&mut self, tok: Token<'a>) -> Result<Expr, ParseError> {
        match tok.text {
            "sum" => Ok(Expr::Var(Var::Sum)),
            "min" => Ok(Expr::Var(Var::Min)),
            "max" => Ok(Expr::Var(Var::Max)),
            "count" => {
                self.expect(TokenKind::LParen, "(")?;
                let arg = self.face_ref()?;
                self.expect(TokenKind::RParen, ")")?;
                Ok(Expr::Call(Call::Count(arg)))
            }
            "die" => {
                self.expect(TokenKind::LParen, "(")?;
                let index = match self.bump() {
                    Some(t) if t.kind == TokenKind::Integer => index_literal(&t, t.text)?,
                    _ => {
                        self.pos -= 1;
                        return Err(self.unexpected(&["integer"]));
                    }
                };
                self.expect(TokenKind::RParen, ")")?;
                Ok(Expr::Call(Call::Die(index)))
            }
            text => match text.strip_prefix('d') {
                Some(digits)
                    if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) =>
                {
                    Ok(Expr::Index(index_literal(&tok, digits)?))
                }
                _ => Err(ParseError::new(
                    tok.position,
                    ParseErrorKind::UnknownIdentifier(text.to_string()),
                )),
            },
        }
    }

    fn face_ref(&mut self) -> Result<FaceRef, ParseError> {
        const EXPECTED: &[&str] = &["face label", "integer"];
        let negative = self.eat(TokenKind::Operator, "-");
        match self.peek().copied() {
            Some(t) if t.kind == TokenKind::Integer => {
                self.pos += 1;
                let n = int_literal(&t)?;
                Ok(FaceRef::Int(if negative { -n } else { n }))
            }
            Some(t) if t.kind == TokenKind::Identifier && !negative => {
                self.pos += 1;
                Ok(FaceRef::Label(t.text.to_string()))
            }
            _ => Err(self.unexpected(if negative { &["integer"] } else { EXPECTED })),
        }
    }
}

fn int_literal(tok: &Token<'_>) -> Result<i64, ParseError> {
    tok.text.parse().map_err(|_| {
        ParseError::new(
            tok.position,
            ParseErrorKind::IntegerTooLarge(tok.text.to_string()),
        )
    })
}

fn index_literal(tok: &Token<'_>, digits: &str) -> Result<usize, ParseError> {
    digits.parse().map_err(|_| {
        ParseError::new(
            tok.position,
            ParseErrorKind::IntegerTooLarge(digits.to_string()),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Expr {
        Expr::Int(n)
    }

    #[test]
    fn chain_between_bounds() {
        assert_eq!(
            parse("7 <= sum <= 14").unwrap(),
            Expr::chain(
                vec![int(7), Expr::Var(Var::Sum), int(14)],
                vec![CmpOp::Le, CmpOp::Le]
            )
        );
    }

    #[test]
    fn chain_of_die_accessors() {
        assert_eq!(
            parse("d1 <= d2 <= d3").unwrap(),
            Expr::chain(
                vec![Expr::Index(1), Expr::Index(2), Expr::Index(3)],
                vec![CmpOp::Le, CmpOp::Le]
            )
        );
    }

    #[test]
    fn count_comparison() {
        assert_eq!(
            parse("count(K) == 2").unwrap(),
            Expr::compare(
                Expr::Call(Call::Count(FaceRef::Label("K".into()))),
                CmpOp::Eq,
                int(2)
            )
        );
        assert_eq!(
            parse("count(-1)").unwrap(),
            Expr::Call(Call::Count(FaceRef::Int(-1)))
        );
        assert_eq!(parse("die(2)").unwrap(), Expr::Call(Call::Die(2)));
    }

    #[test]
    fn precedence() {
        // a + b * c
        assert_eq!(
            parse("1 + 2 * 3").unwrap(),
            Expr::binary(BinOp::Add, int(1), Expr::binary(BinOp::Mul, int(2), int(3)))
        );
        // left associative subtraction
        assert_eq!(
            parse("1 - 2 - 3").unwrap(),
            Expr::binary(BinOp::Sub, Expr::binary(BinOp::Sub, int(1), int(2)), int(3))
        );
        // not binds tighter than and, looser than comparison
        assert_eq!(
            parse("not sum == 10 and d1 > 1").unwrap(),
            Expr::and(
                Expr::not(Expr::compare(Expr::Var(Var::Sum), CmpOp::Eq, int(10))),
                Expr::compare(Expr::Index(1), CmpOp::Gt, int(1))
            )
        );
        // and binds tighter than or
        assert_eq!(
            parse("d1 > 1 or d1 < 2 and d2 < 3").unwrap(),
            Expr::or(
                Expr::compare(Expr::Index(1), CmpOp::Gt, int(1)),
                Expr::and(
                    Expr::compare(Expr::Index(1), CmpOp::Lt, int(2)),
                    Expr::compare(Expr::Index(2), CmpOp::Lt, int(3))
                )
            )
        );
        assert_eq!(
            parse("--d1 * -2").unwrap(),
            Expr::binary(
                BinOp::Mul,
                Expr::Neg(Box::new(Expr::Neg(Box::new(Expr::Index(1))))),
                Expr::Neg(Box::new(int(2)))
            )
        );
    }

    #[test]
    fn d0_parses_and_fails_later() {
        assert_eq!(parse("d0").unwrap(), Expr::Index(0));
        assert_eq!(parse("d12").unwrap(), Expr::Index(12));
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse("sum <= ").unwrap_err();
        assert_eq!(e.position, 7);
        match e.kind {
            ParseErrorKind::Unexpected {
                found: None,
                expected,
            } => {
                assert!(expected.contains(&"integer"))
            }
            other => panic!("unexpected {other:?}"),
        }

        let e = parse("7 <= total").unwrap_err();
        assert_eq!(e.position, 5);
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("total".into()));

        let e = parse("(sum > 3").unwrap_err();
        assert_eq!(e.position, 8);

        let e = parse("sum 3").unwrap_err();
        assert_eq!(e.position, 4);
        assert!(e.to_string().contains("expected one of"));

        let e = parse("99999999999999999999").unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::IntegerTooLarge("99999999999999999999".into())
        );

        assert_eq!(parse("").unwrap_err().position, 0);
        assert_eq!(parse("count()").unwrap_err().position, 6);
        assert_eq!(parse("die(K)").unwrap_err().position, 4);
        assert_eq!(
            parse("d").unwrap_err().kind,
            ParseErrorKind::UnknownIdentifier("d".into())
        );
    }
}
