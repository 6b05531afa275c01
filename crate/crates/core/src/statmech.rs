//! Grand-canonical occupation of a single mode that holds at most `nu` anyons.
//!
//! With `x = beta (epsilon - mu)` the mode's trace is a truncated geometric
//! series in `y = exp(-x)`:
//!
//! `<n> = sum_{n=0}^{nu} n y^n / sum_{n=0}^{nu} y^n`
//!
//! which sums to `1/(e^x - 1) - (nu + 1)/(e^{(nu+1) x} - 1)`. At `nu = 1` this
//! is Fermi-Dirac; as `nu` grows it approaches Bose-Einstein.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationQuery {
    pub beta: f64,
    pub epsilon: f64,
    pub mu: f64,
    pub nu: u32,
}

impl OccupationQuery {
    pub fn new(beta: f64, epsilon: f64, mu: f64, nu: u32) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 || !beta.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta = {beta} must be positive"
            )));
        }
        if nu == 0 {
            return Err(Error::InvalidParameter("nu must be at least 1".into()));
        }
        let q = Self {
            beta,
            epsilon,
            mu,
            nu,
        };
        if !q.x().is_finite() {
            return Err(Error::InvalidParameter(format!(
                "beta (epsilon - mu) is not finite for epsilon = {epsilon}, mu = {mu}"
            )));
        }
        Ok(q)
    }

    /// `beta (epsilon - mu)`.
    pub fn x(&self) -> f64 {
        self.beta * (self.epsilon - self.mu)
    }

    /// Value at the removable singularity `x = 0`.
    pub fn midpoint(&self) -> f64 {
        f64::from(self.nu) / 2.0
    }
}

/// Truncated geometric form. For `x < 0` the series is rewritten in
/// `exp(x) < 1` so nothing overflows.
pub fn gentile_occupation(q: &OccupationQuery) -> f64 {
    let x = q.x();
    if x == 0.0 {
        return q.midpoint();
    }
    let nu = q.nu as usize;
    let ratio = (-x.abs()).exp();
    let mut weight = 1.0;
    let mut numerator = 0.0;
    let mut denominator = 0.0;
    for n in 0..=nu {
        numerator += n as f64 * weight;
        denominator += weight;
        weight *= ratio;
    }
    let low = numerator / denominator;
    if x > 0.0 {
        low
    } else {
        // terms reversed: n -> nu - n
        f64::from(q.nu) - low
    }
}

// Bernoulli numbers B_2, B_4, .. B_20 divided by (2k)!
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

/// Below this `|(nu + 1) x|` the two reciprocals nearly cancel; the difference
/// is summed from their Laurent expansions instead.
const SERIES_RADIUS: f64 = 0.5;

/// `1/(e^x - 1) - (nu + 1)/(e^{(nu+1) x} - 1)`; undefined at `x = 0`.
pub fn gentile_occupation_closed(q: &OccupationQuery) -> Result<f64> {
    let x = q.x();
    if x == 0.0 {
        return Err(Error::SingularPoint {
            limit: q.midpoint(),
        });
    }
    let k = f64::from(q.nu) + 1.0;
    if (k * x).abs() < SERIES_RADIUS {
        // 1/(e^t - 1) = 1/t - 1/2 + sum_k B_2k t^{2k-1} / (2k)!; the 1/t poles cancel
        let mut sum = f64::from(q.nu) / 2.0;
        let mut x_pow = x;
        let mut k_pow = k * k;
        for b in BERNOULLI_OVER_FACTORIAL {
            sum += b * x_pow * (1.0 - k_pow);
            x_pow *= x * x;
            k_pow *= k * k;
        }
        return Ok(sum);
    }
    Ok(1.0 / x.exp_m1() - k / (k * x).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn q(nu: u32, x: f64) -> OccupationQuery {
        OccupationQuery::new(1.0, x, 0.0, nu).unwrap()
    }

    #[test]
    fn fermi_limit_at_ln2() {
        assert!((gentile_occupation(&q(1, LN_2)) - 1.0 / 3.0).abs() < 1e-15);
        assert!((gentile_occupation_closed(&q(1, LN_2)).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn nu3_at_ln2() {
        assert!((gentile_occupation(&q(3, LN_2)) - 11.0 / 15.0).abs() < 1e-15);
        assert!((gentile_occupation_closed(&q(3, LN_2)).unwrap() - 11.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn midpoint_and_singularity() {
        assert_eq!(gentile_occupation(&q(5, 0.0)), 2.5);
        assert_eq!(
            gentile_occupation_closed(&q(5, 0.0)),
            Err(Error::SingularPoint { limit: 2.5 })
        );
    }

    #[test]
    fn extreme_arguments_stay_finite() {
        assert_eq!(gentile_occupation(&q(3, 1e6)), 0.0);
        assert_eq!(gentile_occupation(&q(3, -1e6)), 3.0);
        assert_eq!(gentile_occupation_closed(&q(3, 1e6)).unwrap(), 0.0);
        assert_eq!(gentile_occupation_closed(&q(3, -1e6)).unwrap(), 3.0);
    }

    #[test]
    fn query_validation() {
        assert!(OccupationQuery::new(0.0, 1.0, 0.0, 1).is_err());
        assert!(OccupationQuery::new(1.0, 1.0, 0.0, 0).is_err());
        assert!(OccupationQuery::new(1.0, f64::INFINITY, 0.0, 1).is_err());
    }

    #[test]
    fn series_matches_direct_at_the_switch() {
        for nu in [1u32, 3, 9] {
            let k = f64::from(nu) + 1.0;
            let inside = q(nu, 0.999 * SERIES_RADIUS / k);
            let outside = q(nu, 1.001 * SERIES_RADIUS / k);
            let a = gentile_occupation_closed(&inside).unwrap();
            let b = gentile_occupation_closed(&outside).unwrap();
            assert!((a - gentile_occupation(&inside)).abs() < 1e-14 * a);
            assert!((b - gentile_occupation(&outside)).abs() < 1e-14 * b);
        }
    }
}
