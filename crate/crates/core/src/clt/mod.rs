//! Normal numerics and the comparison of exact sum distributions with their
//! normal approximation.

mod erf;
mod normal;

pub use erf::{erf, erfc};
pub use normal::{normal_cdf, normal_pdf, normal_quantile, std_normal_cdf, NormalParams};

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{to_f64, Rational};
use crate::space::DieSpec;
use crate::sumdist::sum_pmf_convolution;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CltError {
    #[error("standard deviation must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("quantile level must lie strictly between 0 and 1, got {0}")]
    QuantileDomain(f64),
    #[error("the die has zero variance; there is no spread to normalise")]
    ZeroVariance,
    #[error("inflection abscissa equals the mean ({0}); the rule is undefined")]
    DegenerateInflection(f64),
    #[error(
        "inflection abscissa {inflection} lies below the mean {mean}, giving a negative deviation"
    )]
    NegativeOrientation { inflection: f64, mean: f64 },
}

/// How the normal mass at an integer `s` is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Continuity {
    /// `Φ(s + ½) - Φ(s - ½)`.
    #[default]
    On,
    /// The density `pdf(s)`.
    Off,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproximationReport {
    pub dice: usize,
    pub mu: f64,
    pub sigma: f64,
    /// Largest absolute gap between exact and approximate mass on the support.
    pub sup_error: f64,
    /// Half the L1 gap on the support plus the normal mass outside it.
    pub total_variation: f64,
    pub continuity: Continuity,
}

/// Normal mass of `[a, b]` in standard units, taken on whichever tail keeps
/// precision.
fn interval_mass(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        std_normal_cdf(-a) - std_normal_cdf(-b)
    } else {
        std_normal_cdf(b) - std_normal_cdf(a)
    }
}

/// Compares the exact distribution of the sum of `dice` rolls with the
/// normal law of the same mean and variance.
pub fn approximation_report(
    die: &DieSpec,
    dice: usize,
    continuity: Continuity,
) -> Result<ApproximationReport, CltError> {
    let dist = sum_pmf_convolution(die, dice);
    let moments = dist.moments();
    if moments.variance.is_zero() {
        return Err(CltError::ZeroVariance);
    }
    let mu = to_f64(&moments.mean);
    let sigma = to_f64(&moments.variance).sqrt();
    let normal = NormalParams::new(mu, sigma)?;
    let std = |x: f64| (x - mu) / sigma;

    let (lo, hi) = (dist.support_min(), dist.support_max());
    let mut sup_error = 0.0_f64;
    let mut l1 = 0.0_f64;
    let mut approx_total = 0.0_f64;
    for s in lo..=hi {
        let exact = to_f64(&dist.mass(s));
        let x = s as f64;
        let approx = match continuity {
            Continuity::On => interval_mass(std(x - 0.5), std(x + 0.5)),
            Continuity::Off => normal.pdf(x),
        };
        let gap = (exact - approx).abs();
        sup_error = sup_error.max(gap);
        l1 += gap;
        approx_total += approx;
    }
    let leaked = match continuity {
        Continuity::On => {
            std_normal_cdf(std(lo as f64 - 0.5)) + std_normal_cdf(-std(hi as f64 + 0.5))
        }
        Continuity::Off => (1.0 - approx_total).max(0.0),
    };
    let total_variation = (0.5 * (l1 + leaked)).clamp(0.0, 1.0);
    Ok(ApproximationReport {
        dice,
        mu,
        sigma,
        sup_error,
        total_variation,
        continuity,
    })
}

/// Support points of the `dice`-fold sum mapped to `z = (s - μ)/σ`, with
/// their exact masses.
pub fn standardized_distribution(
    die: &DieSpec,
    dice: usize,
) -> Result<Vec<(f64, Rational)>, CltError> {
    let dist = sum_pmf_convolution(die, dice);
    let moments = dist.moments();
    if moments.variance.is_zero() {
        return Err(CltError::ZeroVariance);
    }
    let mu = to_f64(&moments.mean);
    let sigma = to_f64(&moments.variance).sqrt();
    Ok(dist
        .iter()
        .map(|(s, m)| ((s as f64 - mu) / sigma, m.clone()))
        .collect())
}

/// Which level the inflection-point rule inverts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EmpiricalRule {
    /// `Φ((i - μ)/σ) = 0.6827`: the central-band share used as a one-sided
    /// CDF value.
    #[default]
    AsPrinted,
    /// `Φ((i - μ)/σ) = Φ(1) ≈ 0.84134`, which recovers σ when `i = μ + σ`.
    Corrected,
}

impl EmpiricalRule {
    pub fn level(self) -> f64 {
        match self {
            EmpiricalRule::AsPrinted => 0.6827,
            EmpiricalRule::Corrected => std_normal_cdf(1.0),
        }
    }
}

/// What to do when the inflection abscissa lies below the mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Reject,
    /// Return the magnitude.
    Absolute,
}

/// Standard deviation from a guessed inflection point `i`:
/// `σ = (i - mean) / Φ⁻¹(level)`.
pub fn sigma_from_empirical_rule(
    inflection: f64,
    mean: f64,
    rule: EmpiricalRule,
    orientation: Orientation,
) -> Result<f64, CltError> {
    if inflection == mean {
        return Err(CltError::DegenerateInflection(mean));
    }
    let sigma = (inflection - mean) / normal_quantile(rule.level())?;
    match orientation {
        Orientation::Reject if sigma < 0.0 => {
            Err(CltError::NegativeOrientation { inflection, mean })
        }
        _ => Ok(sigma.abs()),
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn fair() -> DieSpec {
        DieSpec::fair(1..=6)
    }

    #[test]
    fn single_die_is_far_from_normal() {
        let r = approximation_report(&fair(), 1, Continuity::On).unwrap();
        assert!(r.total_variation > 0.05);
        assert_eq!(r.mu, 3.5);
        assert!((r.sigma * r.sigma - 35.0 / 12.0).abs() < 1e-12);
    }

    #[test]
    fn more_dice_look_more_normal() {
        let tv = |d| {
            approximation_report(&fair(), d, Continuity::On)
                .unwrap()
                .total_variation
        };
        assert!(tv(4) < tv(2) && tv(2) < tv(1));
    }

    #[test]
    fn zero_variance_is_degenerate() {
        let flat = DieSpec::fair(2..=2);
        assert_eq!(
            approximation_report(&flat, 3, Continuity::On),
            Err(CltError::ZeroVariance)
        );
        assert_eq!(
            standardized_distribution(&flat, 3),
            Err(CltError::ZeroVariance)
        );
    }

    #[test]
    fn empirical_rule() {
        let s =
            sigma_from_empirical_rule(18.0, 14.0, EmpiricalRule::AsPrinted, Orientation::Reject)
                .unwrap();
        assert!((s - 8.414).abs() < 0.01);
        let true_sigma = (35.0_f64 * 4.0 / 12.0).sqrt();
        let s = sigma_from_empirical_rule(
            14.0 + true_sigma,
            14.0,
            EmpiricalRule::Corrected,
            Orientation::Reject,
        )
        .unwrap();
        assert!((s - true_sigma).abs() < 1e-6);
        assert!(matches!(
            sigma_from_empirical_rule(13.0, 14.0, EmpiricalRule::AsPrinted, Orientation::Reject),
            Err(CltError::NegativeOrientation { .. })
        ));
        let s =
            sigma_from_empirical_rule(13.0, 14.0, EmpiricalRule::AsPrinted, Orientation::Absolute)
                .unwrap();
        assert!((s - 1.0 / 0.4752623375152985).abs() < 1e-9);
        assert_eq!(
            sigma_from_empirical_rule(14.0, 14.0, EmpiricalRule::AsPrinted, Orientation::Absolute),
            Err(CltError::DegenerateInflection(14.0))
        );
    }
    // Reference values from an independent mpmath computation.
    const FAIR_TV_ON: [(usize, f64); 6] = [
        (1, 0.18746459650779234),
        (2, 0.058144819829179201),
        (3, 0.028257438181577006),
        (4, 0.019291393220132978),
        (8, 0.0090922317789817899),
        (10, 0.0071437613249072431),
    ];
    const LOADED_TV_ON: [(usize, f64); 6] = [
        (1, 0.42370026932428652),
        (2, 0.21960979698439568),
        (3, 0.11883121418129279),
        (4, 0.0858106697711555),
        (8, 0.037772216518756487),
        (10, 0.033076861176883724),
    ];
    const FAIR_TV_OFF: [(usize, f64); 6] = [
        (1, 0.18896910397248455),
        (2, 0.059498741700342374),
        (3, 0.029777018279569568),
        (4, 0.020578870993651252),
        (8, 0.0096899940908060635),
        (10, 0.0076141657183469016),
    ];
    const FAIR_SUP_ON: [(usize, f64); 4] = [
        (1, 0.08537466281407173),
        (2, 0.013124669371953792),
        (4, 0.003728219630977381),
        (8, 0.0014981535334735403),
    ];
    const LOADED_SUP_OFF: [(usize, f64); 4] = [
        (1, 0.3434562691258079),
        (2, 0.17169527351101148),
        (4, 0.034791847542657012),
        (8, 0.0055781088460917808),
    ];

    fn loaded() -> DieSpec {
        DieSpec::weighted(&[(1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 5)]).unwrap()
    }

    #[test]
    fn frozen_reference_metrics() {
        let check = |die: &DieSpec, c: Continuity, table: &[(usize, f64)], tv: bool| {
            for &(d, want) in table {
                let r = approximation_report(die, d, c).unwrap();
                let got = if tv { r.total_variation } else { r.sup_error };
                assert!((got - want).abs() < 1e-9, "d={d} {c:?}: {got} vs {want}");
            }
        };
        check(&fair(), Continuity::On, &FAIR_TV_ON, true);
        check(&loaded(), Continuity::On, &LOADED_TV_ON, true);
        check(&fair(), Continuity::Off, &FAIR_TV_OFF, true);
        check(&fair(), Continuity::On, &FAIR_SUP_ON, false);
        check(&loaded(), Continuity::Off, &LOADED_SUP_OFF, false);
    }

    #[test]
    fn standardized_band_share() {
        let z = standardized_distribution(&fair(), 10).unwrap();
        let inside: Rational = z
            .iter()
            .filter(|(x, _)| x.abs() <= 1.0)
            .map(|(_, m)| m.clone())
            .sum();
        assert_eq!(inside, Rational::new(10_384_949.into(), 15_116_544.into()));
        let total: Rational = z.iter().map(|(_, m)| m.clone()).sum();
        assert_eq!(total, Rational::from_integer(1.into()));
    }
}
