//! One-particle reduced density matrix and von Neumann entropy.
//!
//! The reduced density matrix of an `N`-particle state is
//! `rho = (1/Z) sum_k a_k |Phi><Phi| a_k^dag`, an operator on the `N - 1`
//! sector. `Z` is taken as the trace of the unnormalized sum; `a^dag a` is not
//! the number operator in this algebra, so the trace is the only normalization
//! that guarantees a unit-trace result.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigensolve::{ground_state, hermitian_eig, max_asymmetry, HermitianMatrix};
use crate::error::{Error, Result};
use crate::fock::{sector_basis, StateVector};
use crate::hamiltonian::{build_sector_hamiltonian, ModelParams};
use crate::operators::apply_annihilation;
use crate::params::AlgebraParams;

pub const DENSITY_TOLERANCE: f64 = 1e-12;
pub const PSD_TOLERANCE: f64 = 1e-10;
const NEGLIGIBLE_WEIGHT: f64 = 1e-15;

/// Hermitian, unit-trace, positive-semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: DMatrix<Complex64>,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        let asym = max_asymmetry(&matrix);
        if asym > DENSITY_TOLERANCE {
            return Err(Error::NotHermitian {
                max_asymmetry: asym,
            });
        }
        let h = HermitianMatrix::new(matrix)?;
        let trace = h.trace();
        if (trace - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(Error::TraceNotUnit { trace });
        }
        let eigenvalues = hermitian_eig(&h).eigenvalues;
        if eigenvalues[0] < -PSD_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: eigenvalues[0],
            });
        }
        Ok(Self {
            matrix: h.into_matrix(),
            eigenvalues,
        })
    }

    /// Scales a Hermitian PSD matrix to unit trace.
    fn from_unnormalized(mut matrix: DMatrix<Complex64>) -> Result<Self> {
        let trace: f64 = (0..matrix.nrows()).map(|i| matrix[(i, i)].re).sum();
        if trace <= 0.0 {
            return Err(Error::TraceNotUnit { trace });
        }
        matrix /= Complex64::from(trace);
        Self::new(matrix)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

fn check_input(phi: &StateVector) -> Result<usize> {
    let n = match phi.sector() {
        Some(n) => n,
        None if phi.is_empty() => return Err(Error::NotNormalized { norm: 0.0 }),
        None => return Err(Error::MixedSector),
    };
    if n == 0 {
        return Err(Error::VacuumSector);
    }
    let norm = phi.norm();
    if (norm - 1.0).abs() > DENSITY_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    Ok(n)
}

/// `rho = sum_k a_k |Phi><Phi| a_k^dag / trace`, in the ordered basis of the
/// `N - 1` sector.
pub fn reduced_density_matrix_general(
    phi: &StateVector,
    params: &AlgebraParams,
) -> Result<DensityMatrix> {
    let n = check_input(phi)?;
    let basis = sector_basis(n - 1, params)?;
    let d = basis.len();
    let mut acc = DMatrix::<Complex64>::zeros(d, d);
    for site in 1..=params.num_sites() {
        let reduced = apply_annihilation(phi, site, params)?.to_dense(&basis);
        acc += &reduced * reduced.adjoint();
    }
    DensityMatrix::from_unnormalized(acc)
}

/// Closed form on two sites. `phi_coeffs` are the amplitudes over the ordered
/// basis of the `N` sector (`|j, N - j>`, `j` ascending); for rows `l, l'` of
/// the `N - 1` sector (site-1 occupation)
/// `rho_{l,l'} ~ phi_{l+1} phi*_{l'+1} + exp(-i theta (l - l')) phi_l phi*_{l'}`.
pub fn reduced_density_matrix_two_site(
    phi_coeffs: &[Complex64],
    particles: usize,
    params: &AlgebraParams,
) -> Result<DensityMatrix> {
    if params.num_sites() != 2 {
        return Err(Error::InvalidParameter(format!(
            "the closed form needs two sites, not {}",
            params.num_sites()
        )));
    }
    if particles == 0 {
        return Err(Error::VacuumSector);
    }
    params.check_sector(particles)?;
    let nu = params.nu() as usize;
    let first = particles.saturating_sub(nu);
    let last = particles.min(nu);
    let expected = last - first + 1;
    if phi_coeffs.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            got: phi_coeffs.len(),
        });
    }
    let norm = phi_coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > DENSITY_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    let coeff = |j: usize| -> Complex64 {
        if (first..=last).contains(&j) {
            phi_coeffs[j - first]
        } else {
            Complex64::default()
        }
    };

    let reduced_first = (particles - 1).saturating_sub(nu);
    let reduced_last = (particles - 1).min(nu);
    let d = reduced_last - reduced_first + 1;
    let theta = params.theta();
    let mut acc = DMatrix::<Complex64>::zeros(d, d);
    for (row, l) in (reduced_first..=reduced_last).enumerate() {
        for (col, lp) in (reduced_first..=reduced_last).enumerate() {
            let phase = theta.unit(lp as i64 - l as i64);
            acc[(row, col)] =
                coeff(l + 1) * coeff(lp + 1).conj() + phase * coeff(l) * coeff(lp).conj();
        }
    }
    DensityMatrix::from_unnormalized(acc)
}

/// `-sum lambda ln lambda` (nats) from a density matrix spectrum. Eigenvalues
/// below `-1e-10` are rejected; the rest are clamped into `[0, 1]`.
pub fn entropy_from_eigenvalues(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &lambda in eigenvalues {
        if lambda < -PSD_TOLERANCE {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: lambda });
        }
        let lambda = lambda.clamp(0.0, 1.0);
        if lambda > NEGLIGIBLE_WEIGHT {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_from_eigenvalues(rho.eigenvalues()).expect("density matrices are validated PSD")
}

/// Ground-state entanglement of one `(m, N)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyRecord {
    pub m: u32,
    pub particles: usize,
    pub kappa_a: f64,
    pub kappa_f: f64,
    pub seed: u64,
    pub ground_energy: f64,
    pub degeneracy: usize,
    pub entropy: f64,
}

/// Builds the `N` block, picks its ground state (seeded when degenerate) and
/// returns the entropy of its one-particle reduced density matrix.
pub fn ground_state_entropy(
    params: &ModelParams,
    particles: usize,
    seed: u64,
) -> Result<EntropyRecord> {
    if particles == 0 {
        return Err(Error::VacuumSector);
    }
    let block = build_sector_hamiltonian(params, particles)?;
    let spec = hermitian_eig(&block.matrix);
    let ground = ground_state(&spec, seed);
    let coeffs: Vec<Complex64> = ground.state.iter().copied().collect();
    let phi = StateVector::from_dense(&block.basis, &coeffs)?;
    let rho = reduced_density_matrix_general(&phi, params.algebra())?;
    Ok(EntropyRecord {
        m: params.m(),
        particles,
        kappa_a: params.kappa_a(),
        kappa_f: params.kappa_f(),
        seed,
        ground_energy: ground.energy,
        degeneracy: ground.degeneracy,
        entropy: von_neumann_entropy(&rho),
    })
}

/// Which particle numbers a scan visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParticlePolicy {
    /// Every `N` in `1..=2 nu`.
    Auto,
    /// Exactly these values (out-of-range ones are reported as skipped).
    Only(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SkipReason {
    /// The block Hamiltonian vanishes identically; no ground state to speak of.
    SectorZero,
    /// `N` is outside `1..=2 nu`.
    OutOfRange,
}

impl SkipReason {
    pub fn code(&self) -> &'static str {
        match self {
            SkipReason::SectorZero => "SECTOR_ZERO",
            SkipReason::OutOfRange => "OUT_OF_RANGE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedPoint {
    pub m: u32,
    pub particles: usize,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScanOutcome {
    pub records: Vec<EntropyRecord>,
    pub skipped: Vec<SkippedPoint>,
}

/// Entropy of the two-site ground state over `(m, N)`, ordered
/// lexicographically. With `kappa_a = 0` only `m <= N <= 3m - 2` carries a
/// nonzero Hamiltonian; the rest of `1..=2 nu` is reported as skipped.
pub fn entropy_scan(
    m_values: &[u32],
    policy: &ParticlePolicy,
    kappa_a: f64,
    kappa_f: f64,
    seed: u64,
) -> Result<ScanOutcome> {
    let mut ms = m_values.to_vec();
    ms.sort_unstable();
    ms.dedup();
    let mut outcome = ScanOutcome::default();
    for m in ms {
        let params = ModelParams::two_site(m, kappa_a, kappa_f)?;
        let nu = (2 * m - 1) as usize;
        let m_us = m as usize;
        let candidates: Vec<usize> = match policy {
            ParticlePolicy::Auto => (1..=2 * nu).collect(),
            ParticlePolicy::Only(list) => {
                let mut list = list.clone();
                list.sort_unstable();
                list.dedup();
                list
            }
        };
        for n in candidates {
            let reason = if n == 0 || n > 2 * nu {
                Some(SkipReason::OutOfRange)
            } else if kappa_a == 0.0 && (kappa_f == 0.0 || n < m_us || n > 3 * m_us - 2) {
                Some(SkipReason::SectorZero)
            } else {
                None
            };
            match reason {
                Some(reason) => outcome.skipped.push(SkippedPoint {
                    m,
                    particles: n,
                    reason,
                }),
                None => outcome
                    .records
                    .push(ground_state_entropy(&params, n, seed)?),
            }
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::FockState;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn single_particle_reduces_to_scalar() {
        let p = AlgebraParams::fermionic(3, 2).unwrap();
        let phi = StateVector::from_terms([
            (
                FockState::new(vec![1, 0], &p).unwrap(),
                c(FRAC_1_SQRT_2, 0.0),
            ),
            (
                FockState::new(vec![0, 1], &p).unwrap(),
                c(FRAC_1_SQRT_2, 0.0),
            ),
        ]);
        let rho = reduced_density_matrix_general(&phi, &p).unwrap();
        assert_eq!(rho.dim(), 1);
        assert!((rho.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(von_neumann_entropy(&rho), 0.0);
    }

    #[test]
    fn fermion_pair_is_maximally_mixed() {
        let p = AlgebraParams::fermionic(1, 2).unwrap();
        let phi = StateVector::basis(FockState::new(vec![1, 1], &p).unwrap());
        let rho = reduced_density_matrix_general(&phi, &p).unwrap();
        let want = DMatrix::<Complex64>::identity(2, 2) * c(0.5, 0.0);
        assert!(crate::eigensolve::max_abs(&(rho.matrix() - want)) < 1e-15);
        assert!((von_neumann_entropy(&rho) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn closed_form_on_the_nu3_ground_state() {
        let p = AlgebraParams::fermionic(3, 2).unwrap();
        let phi = [
            c(0.5, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            Complex64::from_polar(0.5, -PI / 4.0),
        ];
        let rho = reduced_density_matrix_two_site(&phi, 2, &p).unwrap();
        assert!((rho.get(0, 0) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((rho.get(1, 1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((rho.get(0, 1).norm() - 2f64.sqrt() / 3.0).abs() < 1e-15);
        let general = reduced_density_matrix_general(
            &StateVector::from_dense(&sector_basis(2, &p).unwrap(), &phi).unwrap(),
            &p,
        )
        .unwrap();
        assert!(crate::eigensolve::max_abs(&(rho.matrix() - general.matrix())) < 1e-15);
    }

    #[test]
    fn pure_single_configuration_has_zero_entropy() {
        let p = AlgebraParams::fermionic(3, 2).unwrap();
        let rho = reduced_density_matrix_two_site(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)], 2, &p)
            .unwrap();
        assert!(von_neumann_entropy(&rho).abs() < 1e-12);
    }

    #[test]
    fn input_validation() {
        let p = AlgebraParams::fermionic(3, 2).unwrap();
        let vac = StateVector::basis(FockState::vacuum(&p));
        assert_eq!(
            reduced_density_matrix_general(&vac, &p),
            Err(Error::VacuumSector)
        );
        let half = StateVector::basis(FockState::new(vec![1, 0], &p).unwrap()).scaled(c(0.5, 0.0));
        assert!(matches!(
            reduced_density_matrix_general(&half, &p),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            reduced_density_matrix_two_site(&[c(1.0, 0.0)], 2, &p),
            Err(Error::LengthMismatch {
                expected: 3,
                got: 1
            })
        ));
    }

    #[test]
    fn entropy_of_known_spectra() {
        assert_eq!(entropy_from_eigenvalues(&[0.0, 1.0]).unwrap(), 0.0);
        let s = entropy_from_eigenvalues(&[0.25; 4]).unwrap();
        assert!((s - 4f64.ln()).abs() < 1e-15);
        assert!(matches!(
            entropy_from_eigenvalues(&[-1e-6, 1.0]),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        // tiny negative round-off is clamped
        assert_eq!(entropy_from_eigenvalues(&[-1e-13, 1.0]).unwrap(), 0.0);
    }

    #[test]
    fn density_matrix_validation() {
        let bad_trace = DMatrix::<Complex64>::identity(2, 2);
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::TraceNotUnit { .. })
        ));
        let not_psd =
            DMatrix::from_row_slice(2, 2, &[c(1.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-0.5, 0.0)]);
        assert!(matches!(
            DensityMatrix::new(not_psd),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn scan_respects_sector_policy() {
        let out = entropy_scan(&[2], &ParticlePolicy::Auto, 0.0, 1.0, 42).unwrap();
        let ns: Vec<usize> = out.records.iter().map(|r| r.particles).collect();
        assert_eq!(ns, vec![2, 3, 4]);
        let skipped: Vec<usize> = out.skipped.iter().map(|s| s.particles).collect();
        assert_eq!(skipped, vec![1, 5, 6]);
        assert!(out
            .skipped
            .iter()
            .all(|s| s.reason == SkipReason::SectorZero));

        let out =
            entropy_scan(&[2, 1], &ParticlePolicy::Only(vec![0, 1, 9]), 1.0, 1.0, 42).unwrap();
        let keys: Vec<(u32, usize)> = out.records.iter().map(|r| (r.m, r.particles)).collect();
        assert_eq!(keys, vec![(1, 1), (2, 1)]);
        assert_eq!(out.skipped.len(), 4);
        assert!(out
            .skipped
            .iter()
            .all(|s| s.reason == SkipReason::OutOfRange));
    }
}
