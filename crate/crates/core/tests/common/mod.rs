#![allow(dead_code)]

use dicelab_core::dsl::{BinOp, BoolOp, Call, CmpOp, Expr, FaceRef, Var};
use dicelab_core::space::{DieSpec, Face};
use proptest::prelude::*;

pub const LABELS: [&str; 4] = ["K", "Z", "H", "T"];

/// Dice with 1 to 4 faces, small values, weights in 0..=4 (not all zero).
pub fn arb_die() -> impl Strategy<Value = DieSpec> {
    prop::collection::vec((-3i64..=6, 0u64..=4), 1..=4)
        .prop_filter("some weight positive", |f| f.iter().any(|&(_, w)| w > 0))
        .prop_map(|faces| {
            let faces = faces
                .into_iter()
                .enumerate()
                .map(|(i, (v, w))| Face::new(LABELS[i], v, w))
                .collect();
            DieSpec::new(faces).unwrap()
        })
}

pub fn arb_unit_die() -> impl Strategy<Value = DieSpec> {
    prop::collection::vec(-3i64..=6, 1..=4).prop_map(|values| {
        let faces = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| Face::new(LABELS[i], v, 1))
            .collect();
        DieSpec::new(faces).unwrap()
    })
}

fn arb_cmp() -> impl Strategy<Value = CmpOp> {
    prop::sample::select(CmpOp::ALL.to_vec())
}

fn arb_var() -> impl Strategy<Value = Var> {
    prop::sample::select(vec![Var::Sum, Var::Min, Var::Max])
}

/// Integer-valued expressions that bind on a space of `dice >= 1` rolls of
/// `die`.
pub fn arb_int_expr(die: &DieSpec, dice: usize, depth: u32) -> BoxedStrategy<Expr> {
    let labels: Vec<String> = die.faces().iter().map(|f| f.label.clone()).collect();
    let values: Vec<i64> = die.faces().iter().map(|f| f.value).collect();
    let leaf = prop_oneof![
        (0i64..=9).prop_map(Expr::Int),
        arb_var().prop_map(Expr::Var),
        (1..=dice).prop_map(Expr::Index),
        (1..=dice).prop_map(|i| Expr::Call(Call::Die(i))),
        prop::sample::select(labels).prop_map(|l| Expr::Call(Call::Count(FaceRef::Label(l)))),
        prop::sample::select(values).prop_map(|v| Expr::Call(Call::Count(FaceRef::Int(v)))),
    ];
    leaf.prop_recursive(depth, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (
                prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul]),
                inner.clone(),
                inner
            )
                .prop_map(|(op, a, b)| Expr::binary(op, a, b)),
        ]
    })
    .boxed()
}

/// Boolean expressions over [`arb_int_expr`] operands.
pub fn arb_bool_expr(die: &DieSpec, dice: usize, depth: u32) -> BoxedStrategy<Expr> {
    let int = arb_int_expr(die, dice, 2);
    let chain =
        (int.clone(), prop::collection::vec((arb_cmp(), int), 1..=3)).prop_map(|(first, rest)| {
            let mut operands = vec![first];
            let mut comparators = Vec::new();
            for (c, e) in rest {
                comparators.push(c);
                operands.push(e);
            }
            Expr::chain(operands, comparators)
        });
    chain
        .prop_recursive(depth, 16, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Expr::not),
                (
                    prop::sample::select(vec![BoolOp::And, BoolOp::Or]),
                    inner.clone(),
                    inner
                )
                    .prop_map(|(op, a, b)| Expr::Bool(
                        op,
                        Box::new(a),
                        Box::new(b)
                    )),
            ]
        })
        .boxed()
}

/// Any syntactically representable tree, typed or not, up to `depth` levels.
pub fn arb_any_expr(depth: u32) -> BoxedStrategy<Expr> {
    let leaf = prop_oneof![
        (0i64..=1_000_000).prop_map(Expr::Int),
        arb_var().prop_map(Expr::Var),
        (0usize..=12).prop_map(Expr::Index),
        (0usize..=12).prop_map(|i| Expr::Call(Call::Die(i))),
        "[A-Za-z_][A-Za-z_]{0,3}"
            .prop_filter("not reserved", |s| {
                !matches!(
                    s.as_str(),
                    "and" | "or" | "not" | "sum" | "min" | "max" | "count" | "die"
                )
            })
            .prop_map(|l| Expr::Call(Call::Count(FaceRef::Label(l)))),
        (-50i64..=50).prop_map(|v| Expr::Call(Call::Count(FaceRef::Int(v)))),
    ];
    leaf.prop_recursive(depth, 64, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (
                prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::binary(op, a, b)),
            (
                inner.clone(),
                prop::collection::vec((arb_cmp(), inner.clone()), 1..=3)
            )
                .prop_map(|(first, rest)| {
                    let mut operands = vec![first];
                    let mut comparators = Vec::new();
                    for (c, e) in rest {
                        comparators.push(c);
                        operands.push(e);
                    }
                    Expr::chain(operands, comparators)
                }),
            (
                prop::sample::select(vec![BoolOp::And, BoolOp::Or]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::Bool(op, Box::new(a), Box::new(b))),
            inner.prop_map(Expr::not),
        ]
    })
    .boxed()
}

pub fn depth(e: &Expr) -> usize {
    match e {
        Expr::Int(_) | Expr::Var(_) | Expr::Index(_) | Expr::Call(_) => 1,
        Expr::Neg(x) | Expr::Not(x) => 1 + depth(x),
        Expr::Binary(_, a, b) | Expr::Bool(_, a, b) => 1 + depth(a).max(depth(b)),
        Expr::Chain { operands, .. } => 1 + operands.iter().map(depth).max().unwrap(),
    }
}
