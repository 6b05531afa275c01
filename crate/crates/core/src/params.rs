//! Parameters of the generalized anyon algebra.
//!
//! Every phase produced by the algebra is `exp(i * w * theta)` for an integer
//! winding `w`, so operator actions track `w` and only turn it into a complex
//! number at the end. When `theta` is a rational multiple of pi the reduction
//! `w * theta mod 2 pi` is done in integer arithmetic.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest full Fock space (`(nu + 1)^L`) the library will materialize.
pub const MAX_FOCK_DIMENSION: usize = 1 << 20;

/// The exchange angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExchangePhase {
    /// `theta = pi * num / den`, kept in lowest terms with `den > 0`.
    PiFraction { num: i64, den: i64 },
    /// An arbitrary angle in radians.
    Radians(f64),
}

impl ExchangePhase {
    pub fn pi_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        ExchangePhase::PiFraction {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub fn radians(theta: f64) -> Self {
        ExchangePhase::Radians(theta)
    }

    pub fn angle(&self) -> f64 {
        match *self {
            ExchangePhase::PiFraction { num, den } => PI * num as f64 / den as f64,
            ExchangePhase::Radians(theta) => theta,
        }
    }

    /// `exp(i * winding * theta)`.
    pub fn unit(&self, winding: i64) -> Complex64 {
        match *self {
            ExchangePhase::PiFraction { num, den } => {
                // angle = pi * k / den with k reduced modulo 2 den
                let k = (i128::from(winding) * i128::from(num)).rem_euclid(2 * i128::from(den));
                if (2 * k) % i128::from(den) == 0 {
                    match (2 * k) / i128::from(den) {
                        0 => Complex64::new(1.0, 0.0),
                        1 => Complex64::new(0.0, 1.0),
                        2 => Complex64::new(-1.0, 0.0),
                        _ => Complex64::new(0.0, -1.0),
                    }
                } else {
                    let angle = PI * k as f64 / den as f64;
                    Complex64::new(angle.cos(), angle.sin())
                }
            }
            ExchangePhase::Radians(theta) => Complex64::from_polar(1.0, winding as f64 * theta),
        }
    }

    /// Exact comparison against `pi / m^2`.
    pub fn is_pi_over_square(&self, m: u32) -> bool {
        let m2 = i64::from(m) * i64::from(m);
        matches!(*self, ExchangePhase::PiFraction { num: 1, den } if den == m2)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Maximum occupancy `nu`, exchange angle `theta`, and chain length `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraParams {
    nu: u32,
    theta: ExchangePhase,
    num_sites: usize,
}

impl AlgebraParams {
    /// General parameters; `theta` must lie in `[0, pi]`.
    pub fn new(nu: u32, theta: ExchangePhase, num_sites: usize) -> Result<Self> {
        if nu == 0 {
            return Err(Error::InvalidParameter("nu must be at least 1".into()));
        }
        if num_sites == 0 {
            return Err(Error::InvalidParameter(
                "the chain needs at least one site".into(),
            ));
        }
        let angle = theta.angle();
        if !angle.is_finite() || !(0.0..=PI).contains(&angle) {
            return Err(Error::InvalidParameter(format!(
                "theta = {angle} is outside [0, pi]"
            )));
        }
        Ok(Self {
            nu,
            theta,
            num_sites,
        })
    }

    /// Parameters for which `f_j = a_j^m` is a fermion: odd `nu`, `m = (nu + 1) / 2`,
    /// `theta = pi / m^2` exactly.
    pub fn fermionic(nu: u32, num_sites: usize) -> Result<Self> {
        if nu.is_multiple_of(2) {
            return Err(Error::NotFermionic(format!("nu = {nu} is even")));
        }
        let m = i64::from(nu.div_ceil(2));
        Self::new(nu, ExchangePhase::pi_fraction(1, m * m), num_sites)
    }

    /// Shorthand for `fermionic(2m - 1, num_sites)`.
    pub fn from_composite_size(m: u32, num_sites: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        Self::fermionic(2 * m - 1, num_sites)
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn theta(&self) -> ExchangePhase {
        self.theta
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    /// Composite size `m = (nu + 1) / 2`, defined for odd `nu`.
    pub fn m(&self) -> Option<u32> {
        (self.nu % 2 == 1).then_some(self.nu.div_ceil(2))
    }

    pub fn is_fermionic(&self) -> bool {
        self.m().is_some_and(|m| self.theta.is_pi_over_square(m))
    }

    /// Returns `m` or explains why these parameters do not fermionize.
    pub fn require_fermionic(&self) -> Result<u32> {
        match self.m() {
            None => Err(Error::NotFermionic(format!("nu = {} is even", self.nu))),
            Some(m) if self.theta.is_pi_over_square(m) => Ok(m),
            Some(m) => Err(Error::NotFermionic(format!(
                "theta = {} but pi/m^2 = {} for m = {m}",
                self.theta.angle(),
                PI / f64::from(m * m)
            ))),
        }
    }

    pub fn max_particles(&self) -> usize {
        self.nu as usize * self.num_sites
    }

    /// `(nu + 1)^L`, or an error past [`MAX_FOCK_DIMENSION`].
    pub fn fock_dimension(&self) -> Result<usize> {
        let mut dim: u128 = 1;
        for _ in 0..self.num_sites {
            dim *= u128::from(self.nu) + 1;
            if dim > MAX_FOCK_DIMENSION as u128 {
                return Err(Error::TooLarge {
                    dimension: dim,
                    limit: MAX_FOCK_DIMENSION,
                });
            }
        }
        Ok(dim as usize)
    }

    pub(crate) fn check_site(&self, site: usize) -> Result<()> {
        if site == 0 || site > self.num_sites {
            Err(Error::SiteOutOfRange {
                site,
                num_sites: self.num_sites,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_sector(&self, particles: usize) -> Result<()> {
        if particles > self.max_particles() {
            Err(Error::SectorOutOfRange {
                particles,
                max: self.max_particles(),
            })
        } else {
            Ok(())
        }
    }
}
