//! Distribution of the sum of `d` dice by repeated polynomial convolution.
//!
//! The single-die weight-generating polynomial is raised to the `d`-th power
//! in big-integer weight space; the division by `total_weight^d` happens once
//! at the end. Cost is `O(d^2 · value_range)` instead of `faces^d`.
//!
//! [`sum_pmf_enumeration`] walks the sample space directly and is kept as
//! the independent oracle; [`compare_paths`] runs both and reports.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::exact::{Accum, Rational};
use crate::space::{DieSpec, SampleSpace};
use crate::stats::{merge_maps, scan, Distribution, StatsError};

/// Dense weight polynomial `Σ c_k · x^(offset + k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightPolynomial {
    offset: i64,
    coefficients: Vec<BigUint>,
}

impl WeightPolynomial {
    /// One-die polynomial: the coefficient of `x^v` is the total weight of
    /// faces with value `v`. Zero-weight faces do not contribute.
    pub fn from_die(die: &DieSpec) -> Self {
        let offset = die.min_value();
        let width = (die.max_value() - offset) as usize + 1;
        let mut coefficients = vec![BigUint::zero(); width];
        for face in die.faces().iter().filter(|f| f.weight > 0) {
            coefficients[(face.value - offset) as usize] += face.weight;
        }
        WeightPolynomial {
            offset,
            coefficients,
        }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        WeightPolynomial {
            offset: 0,
            coefficients: vec![BigUint::one()],
        }
    }

    pub fn coefficient(&self, value: i64) -> BigUint {
        usize::try_from(value - self.offset)
            .ok()
            .and_then(|k| self.coefficients.get(k).cloned())
            .unwrap_or_default()
    }

    pub fn min_exponent(&self) -> i64 {
        self.offset
    }

    pub fn max_exponent(&self) -> i64 {
        self.offset + self.coefficients.len() as i64 - 1
    }

    pub fn multiply(&self, other: &WeightPolynomial) -> WeightPolynomial {
        let mut out = vec![BigUint::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        WeightPolynomial {
            offset: self.offset + other.offset,
            coefficients: out,
        }
    }

    fn into_distribution(self, denominator: &BigUint) -> Distribution {
        let weights = self
            .coefficients
            .into_iter()
            .enumerate()
            .map(|(k, c)| (self.offset + k as i64, BigInt::from(c)))
            .collect();
        Distribution::from_weights(weights, &BigInt::from(denominator.clone()))
    }
}

/// Exact distribution of the sum of `dice` independent rolls of `die`,
/// via `dice - 1` convolutions.
pub fn sum_pmf_convolution(die: &DieSpec, dice: usize) -> Distribution {
    assert!(dice >= 1, "at least one die is required");
    let base = WeightPolynomial::from_die(die);
    let mut acc = base.clone();
    for _ in 1..dice {
        acc = acc.multiply(&base);
    }
    let exp = u32::try_from(dice).expect("dice count fits in u32");
    acc.into_distribution(&BigUint::from(die.total_weight()).pow(exp))
}

/// Same contract as `stats::pmf(space, "sum")`, computed by walking the
/// space and adding face values directly.
pub fn sum_pmf_enumeration(space: &SampleSpace) -> Result<Distribution, StatsError> {
    let values: Vec<i64> = space.die().faces().iter().map(|f| f.value).collect();
    let weights = scan(
        space,
        BTreeMap::<i64, Accum>::new,
        |acc, faces, w| {
            let s: i64 = faces.iter().map(|&i| values[i]).sum();
            acc.entry(s).or_default().add_weighted(w, 1);
            Ok(())
        },
        merge_maps,
    )?;
    Ok(Distribution::from_weights(
        weights.into_iter().map(|(v, a)| (v, a.total())).collect(),
        &BigInt::from(space.denominator().clone()),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    Mismatch,
    /// The enumeration path was over the cap and did not run.
    Unchecked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointCheck {
    pub value: i64,
    pub convolution: Rational,
    pub enumeration: Option<Rational>,
}

impl PointCheck {
    pub fn agrees(&self) -> Option<bool> {
        self.enumeration.as_ref().map(|e| *e == self.convolution)
    }
}

/// Outcome of running both sum-distribution engines on the same input.
#[derive(Debug, Clone)]
pub struct PathComparison {
    pub dice: usize,
    pub verdict: Verdict,
    /// One entry per integer of the union of both supports.
    pub points: Vec<PointCheck>,
    pub convolution_time: Duration,
    pub enumeration_time: Option<Duration>,
    pub convolution: Distribution,
}

impl PathComparison {
    /// `enumeration_time / convolution_time`, when both ran.
    pub fn speedup(&self) -> Option<f64> {
        let conv = self.convolution_time.as_secs_f64().max(1e-9);
        self.enumeration_time.map(|e| e.as_secs_f64() / conv)
    }
}

pub fn compare_paths(die: &DieSpec, dice: usize, cap: u64) -> PathComparison {
    let start = Instant::now();
    let conv = sum_pmf_convolution(die, dice);
    let convolution_time = start.elapsed();

    let space = SampleSpace::new(die.clone(), dice).with_cap(cap);
    let start = Instant::now();
    let enumerated = sum_pmf_enumeration(&space).ok();
    let enumeration_time = enumerated.as_ref().map(|_| start.elapsed());

    let (lo, hi) = match &enumerated {
        Some(e) => (
            conv.support_min().min(e.support_min()),
            conv.support_max().max(e.support_max()),
        ),
        None => (conv.support_min(), conv.support_max()),
    };
    let points: Vec<PointCheck> = (lo..=hi)
        .map(|v| PointCheck {
            value: v,
            convolution: conv.mass(v),
            enumeration: enumerated.as_ref().map(|e| e.mass(v)),
        })
        .collect();
    let verdict = match &enumerated {
        None => Verdict::Unchecked,
        Some(_) if points.iter().all(|p| p.agrees() == Some(true)) => Verdict::Equal,
        Some(_) => Verdict::Mismatch,
    };
    PathComparison {
        dice,
        verdict,
        points,
        convolution_time,
        enumeration_time,
        convolution: conv,
    }
}
