use std::fmt;

/// Built-in statistics of an outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    Sum,
    Min,
    Max,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::Sum => "sum",
            Var::Min => "min",
            Var::Max => "max",
        }
    }
}

/// Argument of `count(..)`: a face label (identifier) or an integer which
/// matches a label first and a face value otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FaceRef {
    Label(String),
    Int(i64),
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FaceRef::Label(l) => f.write_str(l),
            FaceRef::Int(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Call {
    /// Occurrences of a face in the outcome.
    Count(FaceRef),
    /// `die(i)`, same as `d<i>`; 1-indexed.
    Die(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl CmpOp {
    pub const ALL: [CmpOp; 6] = [
        CmpOp::Lt,
        CmpOp::Le,
        CmpOp::Gt,
        CmpOp::Ge,
        CmpOp::Eq,
        CmpOp::Ne,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "==",
            CmpOp::Ne => "!=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<CmpOp> {
        CmpOp::ALL.into_iter().find(|op| op.symbol() == s)
    }

    pub fn holds(self, a: i64, b: i64) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoolOp {
    And,
    Or,
}

impl BoolOp {
    pub fn keyword(self) -> &'static str {
        match self {
            BoolOp::And => "and",
            BoolOp::Or => "or",
        }
    }
}

/// Expression tree for events (boolean) and random variables (integer).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(i64),
    Var(Var),
    /// `d<i>`, 1-indexed.
    Index(usize),
    Call(Call),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    /// `a op1 b op2 c ...`: true iff every adjacent pair satisfies its
    /// comparator. Always `operands.len() == comparators.len() + 1 >= 2`.
    Chain {
        operands: Vec<Expr>,
        comparators: Vec<CmpOp>,
    },
    Bool(BoolOp, Box<Expr>, Box<Expr>),
    Not(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ty {
    Int,
    Bool,
}

impl fmt::Display for Ty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ty::Int => "integer",
            Ty::Bool => "boolean",
        })
    }
}

impl Expr {
    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn compare(lhs: Expr, op: CmpOp, rhs: Expr) -> Expr {
        Expr::Chain {
            operands: vec![lhs, rhs],
            comparators: vec![op],
        }
    }

    pub fn chain(operands: Vec<Expr>, comparators: Vec<CmpOp>) -> Expr {
        assert!(
            operands.len() >= 2 && operands.len() == comparators.len() + 1,
            "malformed comparison chain"
        );
        Expr::Chain {
            operands,
            comparators,
        }
    }

    pub fn and(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Bool(BoolOp::And, Box::new(lhs), Box::new(rhs))
    }

    pub fn or(lhs: Expr, rhs: Expr) -> Expr {
        Expr::Bool(BoolOp::Or, Box::new(lhs), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }

    /// Type of the root node, without checking subterms.
    pub fn root_ty(&self) -> Ty {
        match self {
            Expr::Int(_)
            | Expr::Var(_)
            | Expr::Index(_)
            | Expr::Call(_)
            | Expr::Neg(_)
            | Expr::Binary(..) => Ty::Int,
            Expr::Chain { .. } | Expr::Bool(..) | Expr::Not(_) => Ty::Bool,
        }
    }

    /// True for the bare random variable `sum`.
    pub fn is_sum(&self) -> bool {
        matches!(self, Expr::Var(Var::Sum))
    }
}
