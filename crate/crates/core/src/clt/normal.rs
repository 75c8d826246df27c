use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::erf::erfc;
use super::CltError;

/// Mean and standard deviation of a normal distribution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalParams {
    mu: f64,
    sigma: f64,
}

impl NormalParams {
    pub fn new(mu: f64, sigma: f64) -> Result<Self, CltError> {
        if !(sigma > 0.0 && sigma.is_finite()) || !mu.is_finite() {
            return Err(CltError::InvalidSigma(sigma));
        }
        Ok(NormalParams { mu, sigma })
    }

    pub fn standard() -> Self {
        NormalParams {
            mu: 0.0,
            sigma: 1.0,
        }
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn pdf(&self, x: f64) -> f64 {
        normal_pdf(x, self)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        normal_cdf(x, self)
    }
}

/// `exp(-(x-μ)²/(2σ²)) / (σ√(2π))`.
pub fn normal_pdf(x: f64, p: &NormalParams) -> f64 {
    let z = (x - p.mu) / p.sigma;
    (-0.5 * z * z).exp() / (p.sigma * (2.0 * PI).sqrt())
}

/// `Φ((x-μ)/σ)`, evaluated as `erfc(-z/√2)/2` so that the lower tail keeps
/// full relative precision.
pub fn normal_cdf(x: f64, p: &NormalParams) -> f64 {
    std_normal_cdf((x - p.mu) / p.sigma)
}

/// Standard normal CDF `Φ(z)`; `Φ(0)` is exactly `0.5`.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// `z` with `Φ(z) = q`, by bisection on [`std_normal_cdf`].
///
/// Upper-half quantiles are solved on the lower tail through
/// `z(q) = -z(1 - q)`; `1 - q` is exact for `q >= 0.5`.
pub fn normal_quantile(q: f64) -> Result<f64, CltError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(CltError::QuantileDomain(q));
    }
    if q == 0.5 {
        return Ok(0.0);
    }
    if q > 0.5 {
        return Ok(-lower_quantile(1.0 - q));
    }
    Ok(lower_quantile(q))
}

fn lower_quantile(q: f64) -> f64 {
    // Φ(-39) underflows to zero, so the root lies in (-39, 0).
    let (mut lo, mut hi) = (-39.0_f64, 0.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if std_normal_cdf(mid) < q {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick the endpoint whose CDF is closer to q
    if (std_normal_cdf(lo) - q).abs() <= (std_normal_cdf(hi) - q).abs() {
        lo
    } else {
        hi
    }
}
