//! Exact probability, moments and distributions by exhaustive enumeration.
//!
//! Every result is an exact rational over the space's weight denominator.
//! Scans are split into prefix blocks and run in parallel; accumulation is
//! integer and order independent, so the results do not depend on the
//! schedule.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::dsl::{BoundExpr, EvalError, Expr};
use crate::exact::{Accum, Probability, Rational};
use crate::space::{Outcome, OutcomeCursor, SampleSpace, SpaceError, WeightMode};

/// Default maximum number of outcomes [`favorable`] will list.
pub const DEFAULT_LISTING_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{count} favorable outcomes exceed the listing cap of {cap}")]
    ListingCap { count: BigUint, cap: usize },
}

/// Weight of a single outcome.
pub(crate) enum Weight {
    Small(i128),
    Big(BigInt),
}

impl Accum {
    pub(crate) fn add_weighted(&mut self, w: &Weight, t: i128) {
        match w {
            Weight::Small(w) => self.add_mul(*w, t),
            Weight::Big(w) => self.add_big(w * BigInt::from(t)),
        }
    }

    fn add_weighted_big(&mut self, w: &Weight, t: &BigInt) {
        match w {
            Weight::Small(w) => self.add_big(BigInt::from(*w) * t),
            Weight::Big(w) => self.add_big(w * t),
        }
    }
}

/// Parallel fold over every outcome of `space` with its weight.
pub(crate) fn scan<A, I, S, M>(
    space: &SampleSpace,
    init: I,
    step: S,
    merge: M,
) -> Result<A, StatsError>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, &[usize], &Weight) -> Result<(), EvalError> + Sync,
    M: Fn(A, A) -> A,
{
    space.check_enumerable()?;
    let die = space.die();
    let radix = die.face_count();
    let dice = space.dice();
    let mode = space.weight_mode();
    let parts: Vec<A> = space
        .partitions()
        .into_par_iter()
        .map(|prefix| {
            let mut acc = init();
            let mut cursor = OutcomeCursor::with_prefix(radix, dice, &prefix);
            while let Some(faces) = cursor.advance() {
                let w = match mode {
                    WeightMode::Big => Weight::Big(WeightMode::big_weight(die, faces)),
                    m => Weight::Small(m.small_weight(die, faces)),
                };
                step(&mut acc, faces, &w)?;
            }
            Ok(acc)
        })
        .collect::<Result<_, EvalError>>()?;
    Ok(parts.into_iter().reduce(merge).unwrap_or_else(init))
}

/// Favorable weight over total weight, unreduced (`56/216`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventWeight {
    pub favorable: BigUint,
    pub total: BigUint,
}

impl EventWeight {
    pub fn probability(&self) -> Probability {
        Probability::from_counts(&self.favorable, &self.total)
    }
}

impl fmt::Display for EventWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.favorable, self.total)
    }
}

/// Total weight of the outcomes satisfying `event`.
pub fn event_weight(space: &SampleSpace, event: &Expr) -> Result<EventWeight, StatsError> {
    let bound = BoundExpr::bind_bool(event, space.die(), space.dice())?;
    let acc = scan(
        space,
        Accum::default,
        |acc, faces, w| {
            if bound.eval_bool(faces)? {
                acc.add_weighted(w, 1);
            }
            Ok(())
        },
        Accum::merge,
    )?;
    let favorable = acc.total().to_biguint().expect("weights are nonnegative");
    Ok(EventWeight {
        favorable,
        total: space.denominator().clone(),
    })
}

/// `P(event)`, exact and reduced.
pub fn probability(space: &SampleSpace, event: &Expr) -> Result<Probability, StatsError> {
    Ok(event_weight(space, event)?.probability())
}

/// Every outcome satisfying `event`, in lexicographic order.
pub fn favorable(space: &SampleSpace, event: &Expr) -> Result<Vec<Outcome>, StatsError> {
    favorable_capped(space, event, DEFAULT_LISTING_CAP)
}

pub fn favorable_capped(
    space: &SampleSpace,
    event: &Expr,
    cap: usize,
) -> Result<Vec<Outcome>, StatsError> {
    let bound = BoundExpr::bind_bool(event, space.die(), space.dice())?;
    space.check_enumerable()?;
    let mut out = Vec::new();
    let mut count = BigUint::zero();
    let mut cursor = space.cursor();
    while let Some(faces) = cursor.advance() {
        if bound.eval_bool(faces)? {
            count += 1u32;
            if out.len() < cap {
                out.push(Outcome::new(faces.to_vec()));
            }
        }
    }
    if count > BigUint::from(cap) {
        return Err(StatsError::ListingCap { count, cap });
    }
    Ok(out)
}

/// Exact mean and (population) variance of a random variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Moments {
    pub mean: Rational,
    pub variance: Rational,
}

impl Moments {
    pub fn std_dev(&self) -> f64 {
        crate::exact::to_f64(&self.variance).sqrt()
    }
}

fn ratio(num: BigInt, den: &BigUint) -> Rational {
    Rational::new(num, BigInt::from(den.clone()))
}

/// `E(X) = Σ w(ω)·X(ω) / denominator`.
pub fn expectation(space: &SampleSpace, rv: &Expr) -> Result<Rational, StatsError> {
    let bound = BoundExpr::bind_int(rv, space.die(), space.dice())?;
    let acc = scan(
        space,
        Accum::default,
        |acc, faces, w| {
            acc.add_weighted(w, bound.eval_int(faces)? as i128);
            Ok(())
        },
        Accum::merge,
    )?;
    Ok(ratio(acc.total(), space.denominator()))
}

/// `V(X) = E((X - E(X))^2)`: one pass for the mean, a second for the
/// weighted squared deviations.
pub fn variance_definitional(space: &SampleSpace, rv: &Expr) -> Result<Rational, StatsError> {
    let mean = expectation(space, rv)?;
    let bound = BoundExpr::bind_int(rv, space.die(), space.dice())?;
    // (X - p/q)^2 = (qX - p)^2 / q^2
    let (p, q) = (mean.numer().clone(), mean.denom().clone());
    let small = p.to_i64().zip(q.to_i64());
    let acc = scan(
        space,
        Accum::default,
        |acc, faces, w| {
            let x = bound.eval_int(faces)?;
            let dev = small.map(|(p, q)| x as i128 * q as i128 - p as i128);
            match dev.and_then(|d| d.checked_mul(d)) {
                Some(sq) => acc.add_weighted(w, sq),
                None => {
                    let d = &q * x - &p;
                    acc.add_weighted_big(w, &(&d * &d));
                }
            }
            Ok(())
        },
        Accum::merge,
    )?;
    let den = BigInt::from(space.denominator().clone()) * &q * &q;
    Ok(Rational::new(acc.total(), den))
}

/// `V(X) = E(X^2) - E(X)^2` from a single pass.
pub fn variance_moments(space: &SampleSpace, rv: &Expr) -> Result<Rational, StatsError> {
    Ok(moments(space, rv)?.variance)
}

/// Mean and variance from one pass accumulating `Σw·X` and `Σw·X²`.
pub fn moments(space: &SampleSpace, rv: &Expr) -> Result<Moments, StatsError> {
    let bound = BoundExpr::bind_int(rv, space.die(), space.dice())?;
    let (s1, s2) = scan(
        space,
        || (Accum::default(), Accum::default()),
        |(s1, s2), faces, w| {
            let x = bound.eval_int(faces)? as i128;
            s1.add_weighted(w, x);
            s2.add_weighted(w, x * x);
            Ok(())
        },
        |(a1, a2), (b1, b2)| (a1.merge(b1), a2.merge(b2)),
    )?;
    let mean = ratio(s1.total(), space.denominator());
    let second = ratio(s2.total(), space.denominator());
    let variance = second - &mean * &mean;
    Ok(Moments { mean, variance })
}

/// Exact distribution of an integer random variable.
///
/// Only values with positive mass are stored; the support bounds are the
/// smallest and largest of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    masses: BTreeMap<i64, Rational>,
}

/// Which side of `h` the cumulative sum stops at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CdfConvention {
    /// `F(h) = P(X <= h)`.
    #[default]
    Inclusive,
    /// `F(h) = P(X < h)`, the prefix-sum `probabilities[:h]` layout.
    StrictBelow,
}

impl Distribution {
    /// Builds a distribution from integer weights over a common
    /// denominator. Zero weights are dropped; the weights must sum to the
    /// denominator.
    pub fn from_weights(weights: BTreeMap<i64, BigInt>, denominator: &BigInt) -> Self {
        assert!(denominator.is_positive(), "denominator must be positive");
        let masses: BTreeMap<i64, Rational> = weights
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|(v, w)| {
                assert!(!w.is_negative(), "negative weight for value {v}");
                (v, Rational::new(w, denominator.clone()))
            })
            .collect();
        assert!(!masses.is_empty(), "distribution without mass");
        Distribution { masses }
    }

    pub fn support_min(&self) -> i64 {
        *self.masses.keys().next().unwrap()
    }

    pub fn support_max(&self) -> i64 {
        *self.masses.keys().next_back().unwrap()
    }

    /// Mass at `v`; zero outside the support.
    pub fn mass(&self, v: i64) -> Rational {
        self.masses.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    /// Values with positive mass, increasing.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.masses.iter().map(|(v, m)| (*v, m))
    }

    /// Every integer of `[support_min, support_max]` with its mass.
    pub fn dense(&self) -> Vec<(i64, Rational)> {
        (self.support_min()..=self.support_max())
            .map(|v| (v, self.mass(v)))
            .collect()
    }

    pub fn total_mass(&self) -> Rational {
        self.masses.values().sum()
    }

    pub fn mean(&self) -> Rational {
        self.masses
            .iter()
            .map(|(v, m)| m * Rational::from_integer(BigInt::from(*v)))
            .sum()
    }

    pub fn moments(&self) -> Moments {
        let mean = self.mean();
        let variance = self
            .masses
            .iter()
            .map(|(v, m)| {
                let d = Rational::from_integer(BigInt::from(*v)) - &mean;
                m * &d * &d
            })
            .sum();
        Moments { mean, variance }
    }

    /// Cumulative mass at `h` under the given convention.
    pub fn cdf_at(&self, h: i64, convention: CdfConvention) -> Rational {
        let range = match convention {
            CdfConvention::Inclusive => self.masses.range(..=h),
            CdfConvention::StrictBelow => self.masses.range(..h),
        };
        range.map(|(_, m)| m).sum()
    }
}

/// Distribution of `rv` over `space`.
pub fn pmf(space: &SampleSpace, rv: &Expr) -> Result<Distribution, StatsError> {
    let bound = BoundExpr::bind_int(rv, space.die(), space.dice())?;
    let weights = scan(
        space,
        BTreeMap::<i64, Accum>::new,
        |acc, faces, w| {
            acc.entry(bound.eval_int(faces)?)
                .or_default()
                .add_weighted(w, 1);
            Ok(())
        },
        merge_maps,
    )?;
    Ok(Distribution::from_weights(
        weights.into_iter().map(|(v, a)| (v, a.total())).collect(),
        &BigInt::from(space.denominator().clone()),
    ))
}

pub(crate) fn merge_maps(
    mut a: BTreeMap<i64, Accum>,
    b: BTreeMap<i64, Accum>,
) -> BTreeMap<i64, Accum> {
    for (v, acc) in b {
        let slot = a.entry(v).or_default();
        *slot = std::mem::take(slot).merge(acc);
    }
    a
}

/// Cumulative distribution over `[support_min, support_max]`.
pub fn cdf(dist: &Distribution, convention: CdfConvention) -> Vec<(i64, Rational)> {
    let mut running = Rational::zero();
    let mut out = Vec::new();
    for v in dist.support_min()..=dist.support_max() {
        let m = dist.mass(v);
        match convention {
            CdfConvention::Inclusive => {
                running += m;
                out.push((v, running.clone()));
            }
            CdfConvention::StrictBelow => {
                out.push((v, running.clone()));
                running += m;
            }
        }
    }
    out
}
