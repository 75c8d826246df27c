//! Binding and evaluation.
//!
//! [`BoundExpr::bind`] type-checks an expression, resolves `count(..)`
//! arguments against a die, and checks every `d<i>` against the number of
//! dice once. Evaluation of a bound expression over outcomes of that space
//! cannot fail except on `i64` overflow.

use crate::space::{DieSpec, Outcome};

use super::ast::{BinOp, BoolOp, Call, CmpOp, Expr, FaceRef, Ty, Var};
use super::error::EvalError;

#[derive(Debug, Clone)]
enum Node {
    Int(i64),
    Sum,
    Min,
    Max,
    /// 0-based position.
    At(usize),
    /// Face-index membership mask.
    Count(Vec<bool>),
    Neg(Box<Node>),
    Binary(BinOp, Box<Node>, Box<Node>),
    Chain(Vec<Node>, Vec<CmpOp>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Not(Box<Node>),
}

/// An expression bound to a die and a dice count.
#[derive(Debug, Clone)]
pub struct BoundExpr {
    root: Node,
    ty: Ty,
    dice: usize,
    values: Vec<i64>,
    source: String,
    diagnostics: Vec<String>,
}

impl BoundExpr {
    pub fn bind(expr: &Expr, die: &DieSpec, dice: usize) -> Result<BoundExpr, EvalError> {
        let mut binder = Binder {
            die,
            dice,
            diagnostics: Vec::new(),
        };
        let (root, ty) = binder.bind(expr)?;
        Ok(BoundExpr {
            root,
            ty,
            dice,
            values: die.faces().iter().map(|f| f.value).collect(),
            source: expr.to_string(),
            diagnostics: binder.diagnostics,
        })
    }

    /// Binds and requires an integer-valued root.
    pub fn bind_int(expr: &Expr, die: &DieSpec, dice: usize) -> Result<BoundExpr, EvalError> {
        BoundExpr::bind(expr, die, dice)?.expect(Ty::Int)
    }

    /// Binds and requires a boolean-valued root.
    pub fn bind_bool(expr: &Expr, die: &DieSpec, dice: usize) -> Result<BoundExpr, EvalError> {
        BoundExpr::bind(expr, die, dice)?.expect(Ty::Bool)
    }

    fn expect(self, ty: Ty) -> Result<BoundExpr, EvalError> {
        if self.ty == ty {
            Ok(self)
        } else {
            Err(EvalError::Type {
                expected: ty,
                found: self.ty,
                expr: self.source,
            })
        }
    }

    pub fn ty(&self) -> Ty {
        self.ty
    }

    pub fn dice(&self) -> usize {
        self.dice
    }

    /// Non-fatal notes produced while binding, e.g. ambiguous `count(..)`.
    pub fn diagnostics(&self) -> &[String] {
        &self.diagnostics
    }

    /// Evaluates an integer expression on an outcome given as face indices.
    pub fn eval_int(&self, faces: &[usize]) -> Result<i64, EvalError> {
        self.check_len(faces)?;
        self.int(&self.root, faces)
            .ok_or_else(|| EvalError::Overflow(self.source.clone()))
    }

    /// Evaluates a boolean expression on an outcome given as face indices.
    pub fn eval_bool(&self, faces: &[usize]) -> Result<bool, EvalError> {
        self.check_len(faces)?;
        self.boolean(&self.root, faces)
            .ok_or_else(|| EvalError::Overflow(self.source.clone()))
    }

    fn check_len(&self, faces: &[usize]) -> Result<(), EvalError> {
        if faces.len() != self.dice {
            return Err(EvalError::OutcomeLength {
                expected: self.dice,
                found: faces.len(),
            });
        }
        Ok(())
    }

    // `None` signals overflow.
    fn int(&self, node: &Node, faces: &[usize]) -> Option<i64> {
        let value = |i: &usize| self.values[*i];
        match node {
            Node::Int(n) => Some(*n),
            Node::Sum => faces
                .iter()
                .try_fold(0i64, |acc, i| acc.checked_add(value(i))),
            // dice >= 1 is enforced at bind time for min/max
            Node::Min => faces.iter().map(value).min(),
            Node::Max => faces.iter().map(value).max(),
            Node::At(p) => Some(self.values[faces[*p]]),
            Node::Count(mask) => Some(faces.iter().filter(|&&i| mask[i]).count() as i64),
            Node::Neg(e) => self.int(e, faces)?.checked_neg(),
            Node::Binary(op, l, r) => {
                let (a, b) = (self.int(l, faces)?, self.int(r, faces)?);
                match op {
                    BinOp::Add => a.checked_add(b),
                    BinOp::Sub => a.checked_sub(b),
                    BinOp::Mul => a.checked_mul(b),
                }
            }
            _ => unreachable!("boolean node in integer position"),
        }
    }

    fn boolean(&self, node: &Node, faces: &[usize]) -> Option<bool> {
        match node {
            Node::Chain(operands, comparators) => {
                let mut lhs = self.int(&operands[0], faces)?;
                for (op, rhs) in comparators.iter().zip(&operands[1..]) {
                    let rhs = self.int(rhs, faces)?;
                    if !op.holds(lhs, rhs) {
                        return Some(false);
                    }
                    lhs = rhs;
                }
                Some(true)
            }
            Node::And(l, r) => Some(self.boolean(l, faces)? && self.boolean(r, faces)?),
            Node::Or(l, r) => Some(self.boolean(l, faces)? || self.boolean(r, faces)?),
            Node::Not(e) => Some(!self.boolean(e, faces)?),
            _ => unreachable!("integer node in boolean position"),
        }
    }
}

struct Binder<'a> {
    die: &'a DieSpec,
    dice: usize,
    diagnostics: Vec<String>,
}

impl Binder<'_> {
    fn bind(&mut self, e: &Expr) -> Result<(Node, Ty), EvalError> {
        Ok(match e {
            Expr::Int(n) => (Node::Int(*n), Ty::Int),
            Expr::Var(v) => {
                if self.dice == 0 && *v != Var::Sum {
                    return Err(EvalError::IndexOutOfRange { index: 1, dice: 0 });
                }
                let node = match v {
                    Var::Sum => Node::Sum,
                    Var::Min => Node::Min,
                    Var::Max => Node::Max,
                };
                (node, Ty::Int)
            }
            Expr::Index(i) | Expr::Call(Call::Die(i)) => (Node::At(self.position(*i)?), Ty::Int),
            Expr::Call(Call::Count(arg)) => (Node::Count(self.face_mask(arg)?), Ty::Int),
            Expr::Neg(inner) => (Node::Neg(Box::new(self.int(inner)?)), Ty::Int),
            Expr::Binary(op, l, r) => (
                Node::Binary(*op, Box::new(self.int(l)?), Box::new(self.int(r)?)),
                Ty::Int,
            ),
            Expr::Chain {
                operands,
                comparators,
            } => {
                let nodes = operands
                    .iter()
                    .map(|o| self.int(o))
                    .collect::<Result<Vec<_>, _>>()?;
                (Node::Chain(nodes, comparators.clone()), Ty::Bool)
            }
            Expr::Bool(op, l, r) => {
                let (l, r) = (Box::new(self.boolean(l)?), Box::new(self.boolean(r)?));
                let node = match op {
                    BoolOp::And => Node::And(l, r),
                    BoolOp::Or => Node::Or(l, r),
                };
                (node, Ty::Bool)
            }
            Expr::Not(inner) => (Node::Not(Box::new(self.boolean(inner)?)), Ty::Bool),
        })
    }

    fn typed(&mut self, e: &Expr, want: Ty) -> Result<Node, EvalError> {
        let (node, ty) = self.bind(e)?;
        if ty != want {
            return Err(EvalError::Type {
                expected: want,
                found: ty,
                expr: e.to_string(),
            });
        }
        Ok(node)
    }

    fn int(&mut self, e: &Expr) -> Result<Node, EvalError> {
        self.typed(e, Ty::Int)
    }

    fn boolean(&mut self, e: &Expr) -> Result<Node, EvalError> {
        self.typed(e, Ty::Bool)
    }

    fn position(&self, index: usize) -> Result<usize, EvalError> {
        if index == 0 || index > self.dice {
            return Err(EvalError::IndexOutOfRange {
                index,
                dice: self.dice,
            });
        }
        Ok(index - 1)
    }

    fn face_mask(&mut self, arg: &FaceRef) -> Result<Vec<bool>, EvalError> {
        let faces = self.die.faces();
        let only = |idx: usize| (0..faces.len()).map(|i| i == idx).collect::<Vec<_>>();
        match arg {
            FaceRef::Label(label) => self
                .die
                .label_index(label)
                .map(only)
                .ok_or_else(|| EvalError::UnknownFace(label.clone())),
            FaceRef::Int(n) => {
                let by_value: Vec<bool> = faces.iter().map(|f| f.value == *n).collect();
                match self.die.label_index(&n.to_string()) {
                    Some(idx) => {
                        let by_label = only(idx);
                        if by_value.iter().any(|&b| b) && by_value != by_label {
                            self.diagnostics.push(format!(
                                "count({n}): `{n}` is a face label and also a face value \
                                 of other faces; counting the face labelled {n:?}"
                            ));
                        }
                        Ok(by_label)
                    }
                    None if by_value.iter().any(|&b| b) => Ok(by_value),
                    None => Err(EvalError::UnknownFace(n.to_string())),
                }
            }
        }
    }
}

/// An outcome together with the die it was drawn from.
#[derive(Debug, Clone, Copy)]
pub struct EvalContext<'a> {
    pub outcome: &'a Outcome,
    pub die: &'a DieSpec,
}

impl<'a> EvalContext<'a> {
    pub fn new(outcome: &'a Outcome, die: &'a DieSpec) -> Self {
        EvalContext { outcome, die }
    }
}

/// Evaluates an integer-valued expression on one outcome.
pub fn eval_int(expr: &Expr, ctx: &EvalContext<'_>) -> Result<i64, EvalError> {
    BoundExpr::bind_int(expr, ctx.die, ctx.outcome.len())?.eval_int(ctx.outcome.face_indices())
}

/// Evaluates a boolean-valued expression on one outcome.
pub fn eval_bool(expr: &Expr, ctx: &EvalContext<'_>) -> Result<bool, EvalError> {
    BoundExpr::bind_bool(expr, ctx.die, ctx.outcome.len())?.eval_bool(ctx.outcome.face_indices())
}
