//! Anyon plus composite-fermion hopping Hamiltonian, one block per sector.
//!
//! `H = -kappa_a sum_j (a_{j+1}^dag a_j + h.c.) - kappa_f sum_j (f_{j+1}^dag f_j + h.c.)`
//! over the open-chain bonds `j = 1..L-1`, with `f_j = a_j^m`. Matrix elements
//! are obtained by applying the operator strings to the sector basis, so every
//! phase comes from the algebra itself.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigensolve::HermitianMatrix;
use crate::error::{Error, Result};
use crate::fock::{basis_index, sector_basis, FockState};
use crate::operators::{apply_to_basis, OperatorString};
use crate::params::AlgebraParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    algebra: AlgebraParams,
    kappa_a: f64,
    kappa_f: f64,
}

impl ModelParams {
    /// `algebra` must fermionize (odd `nu`, `theta = pi/m^2`).
    pub fn new(algebra: AlgebraParams, kappa_a: f64, kappa_f: f64) -> Result<Self> {
        algebra.require_fermionic()?;
        if !kappa_a.is_finite() || !kappa_f.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "hopping energies must be finite (kappa_a = {kappa_a}, kappa_f = {kappa_f})"
            )));
        }
        Ok(Self {
            algebra,
            kappa_a,
            kappa_f,
        })
    }

    /// Two-site model with `nu = 2m - 1`.
    pub fn two_site(m: u32, kappa_a: f64, kappa_f: f64) -> Result<Self> {
        Self::new(AlgebraParams::from_composite_size(m, 2)?, kappa_a, kappa_f)
    }

    pub fn algebra(&self) -> &AlgebraParams {
        &self.algebra
    }

    pub fn kappa_a(&self) -> f64 {
        self.kappa_a
    }

    pub fn kappa_f(&self) -> f64 {
        self.kappa_f
    }

    pub fn m(&self) -> u32 {
        // validated in the constructor
        self.algebra.m().expect("fermionic parameters have odd nu")
    }

    /// Hopping terms as (coefficient, operator string).
    pub fn terms(&self) -> Vec<(f64, OperatorString)> {
        let mut out = Vec::new();
        let m = self.m();
        for j in 1..self.algebra.num_sites() {
            for (kappa, power) in [(self.kappa_a, 1), (self.kappa_f, m)] {
                out.push((-kappa, hop(j + 1, j, power)));
                out.push((-kappa, hop(j, j + 1, power)));
            }
        }
        out
    }

    fn fermion_terms(&self) -> Vec<(f64, OperatorString)> {
        let m = self.m();
        (1..self.algebra.num_sites())
            .flat_map(|j| [(-1.0, hop(j + 1, j, m)), (-1.0, hop(j, j + 1, m))])
            .collect()
    }
}

/// `(a_to^dag)^power (a_from)^power`
fn hop(to: usize, from: usize, power: u32) -> OperatorString {
    OperatorString::identity()
        .create(to, power)
        .annihilate(from, power)
}

/// One particle-number block of the Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorHamiltonian {
    pub particles: usize,
    pub basis: Vec<FockState>,
    pub matrix: HermitianMatrix,
}

impl SectorHamiltonian {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn assemble(
    algebra: &AlgebraParams,
    particles: usize,
    terms: &[(f64, OperatorString)],
) -> Result<(Vec<FockState>, DMatrix<Complex64>)> {
    let basis = sector_basis(particles, algebra)?;
    let index = basis_index(&basis);
    let d = basis.len();
    let mut mat = DMatrix::<Complex64>::zeros(d, d);
    for (coefficient, ops) in terms {
        if *coefficient == 0.0 {
            continue;
        }
        for (col, state) in basis.iter().enumerate() {
            if let Some((image, amp)) = apply_to_basis(state, ops, algebra)? {
                mat[(index[&image], col)] += amp * *coefficient;
            }
        }
    }
    Ok((basis, mat))
}

pub fn build_sector_hamiltonian(
    params: &ModelParams,
    particles: usize,
) -> Result<SectorHamiltonian> {
    let (basis, mat) = assemble(&params.algebra, particles, &params.terms())?;
    Ok(SectorHamiltonian {
        particles,
        basis,
        matrix: HermitianMatrix::new(mat)?,
    })
}

/// One block per particle number `0..=nu L`.
pub fn build_full_hamiltonian(params: &ModelParams) -> Result<Vec<SectorHamiltonian>> {
    params.algebra.fock_dimension()?;
    (0..=params.algebra.max_particles())
        .map(|n| build_sector_hamiltonian(params, n))
        .collect()
}

/// Whether the composite-fermion hopping vanishes identically on this sector.
/// On two sites this happens exactly for `N < m` and `N > 3m - 2`.
pub fn fermion_sector_is_zero(params: &ModelParams, particles: usize) -> Result<bool> {
    let (_, mat) = assemble(&params.algebra, particles, &params.fermion_terms())?;
    Ok(mat.iter().all(|z| *z == Complex64::default()))
}

/// Winding (in units of `theta = pi/m^2`) of the diagonal gauge entry
/// `exp(i pi r (r - 1) / (2 m^2))`, `r` = occupation of site 1.
fn gauge_winding(state: &FockState) -> i64 {
    let r = i64::from(state.occupation(1));
    r * (r - 1) / 2
}

/// Conjugates a two-site block by `U = diag(exp(i pi r(r-1) / (2 m^2)))`, which
/// makes it a banded Hermitian Toeplitz matrix: `-kappa_a` on the first
/// off-diagonals and a constant of modulus `|kappa_f|` on the `m`-th ones.
pub fn toeplitz_gauge_transform(
    h: &SectorHamiltonian,
    params: &ModelParams,
) -> Result<SectorHamiltonian> {
    if params.algebra.num_sites() != 2 {
        return Err(Error::InvalidParameter(format!(
            "the Toeplitz gauge is defined for two sites, not {}",
            params.algebra.num_sites()
        )));
    }
    let theta = params.algebra.theta();
    let u: Vec<Complex64> = h
        .basis
        .iter()
        .map(|s| theta.unit(gauge_winding(s)))
        .collect();
    let d = h.dim();
    let mut mat = h.matrix.as_matrix().clone();
    for row in 0..d {
        for col in 0..d {
            mat[(row, col)] *= u[row] * u[col].conj();
        }
    }
    Ok(SectorHamiltonian {
        particles: h.particles,
        basis: h.basis.clone(),
        matrix: HermitianMatrix::new(mat)?,
    })
}

/// Summary of one diagonal (`offset` = column - row) of a square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalProfile {
    pub offset: isize,
    /// First entry of the diagonal.
    pub value: Complex64,
    /// Largest distance of any entry on the diagonal from `value`.
    pub spread: f64,
}

pub fn diagonal_profile(mat: &DMatrix<Complex64>) -> Vec<DiagonalProfile> {
    let d = mat.nrows() as isize;
    (-(d - 1)..d)
        .map(|offset| {
            let entries: Vec<Complex64> = (0..d)
                .filter_map(|row| {
                    let col = row + offset;
                    (0..d)
                        .contains(&col)
                        .then(|| mat[(row as usize, col as usize)])
                })
                .collect();
            let value = entries[0];
            let spread = entries
                .iter()
                .map(|z| (z - value).norm())
                .fold(0.0, f64::max);
            DiagonalProfile {
                offset,
                value,
                spread,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolve::{hermitian_eig, max_abs};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spin_half_like_single_particle() {
        let p = ModelParams::two_site(1, 1.0, 0.0).unwrap();
        let h = build_sector_hamiltonian(&p, 1).unwrap();
        let want = DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)],
        );
        assert_eq!(h.matrix.as_matrix(), &want);
    }

    #[test]
    fn vacuum_block_is_zero() {
        let p = ModelParams::two_site(3, 1.3, -0.4).unwrap();
        let h = build_sector_hamiltonian(&p, 0).unwrap();
        assert_eq!(h.dim(), 1);
        assert_eq!(h.matrix.get(0, 0), c(0.0, 0.0));
    }

    #[test]
    fn nu3_two_particle_block() {
        let p = ModelParams::two_site(2, 1.0, 0.0).unwrap();
        let h = build_sector_hamiltonian(&p, 2).unwrap();
        let e = Complex64::from_polar(1.0, -PI / 4.0);
        let want = DMatrix::from_row_slice(
            3,
            3,
            &[
                c(0.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                c(-1.0, 0.0),
                c(0.0, 0.0),
                -e.conj(),
                c(0.0, 0.0),
                -e,
                c(0.0, 0.0),
            ],
        );
        assert!(max_abs(&(h.matrix.as_matrix() - want)) < 1e-15);
        let spec = hermitian_eig(&h.matrix);
        let s2 = 2f64.sqrt();
        for (got, want) in spec.eigenvalues.iter().zip([-s2, 0.0, s2]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn gauge_makes_nu3_block_real() {
        let p = ModelParams::two_site(2, 1.0, 0.0).unwrap();
        let h = build_sector_hamiltonian(&p, 2).unwrap();
        let t = toeplitz_gauge_transform(&h, &p).unwrap();
        assert!((t.matrix.get(1, 0) - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((t.matrix.get(2, 1) - c(-1.0, 0.0)).norm() < 1e-15);
        let before = hermitian_eig(&h.matrix).eigenvalues;
        let after = hermitian_eig(&t.matrix).eigenvalues;
        for (a, b) in before.iter().zip(&after) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn fermion_sector_bounds_m2() {
        let p = ModelParams::two_site(2, 1.0, 1.0).unwrap();
        let zero: Vec<bool> = (0..=6)
            .map(|n| fermion_sector_is_zero(&p, n).unwrap())
            .collect();
        assert_eq!(zero, vec![true, true, false, false, false, true, true]);
        assert!(fermion_sector_is_zero(&p, 7).is_err());
    }

    #[test]
    fn full_hamiltonian_block_sizes() {
        let p = ModelParams::two_site(1, 1.0, 0.5).unwrap();
        let sizes: Vec<usize> = build_full_hamiltonian(&p)
            .unwrap()
            .iter()
            .map(|h| h.dim())
            .collect();
        assert_eq!(sizes, vec![1, 2, 1]);
        let p = ModelParams::two_site(2, 1.0, 0.5).unwrap();
        let sizes: Vec<usize> = build_full_hamiltonian(&p)
            .unwrap()
            .iter()
            .map(|h| h.dim())
            .collect();
        assert_eq!(sizes, vec![1, 2, 3, 4, 3, 2, 1]);
    }

    #[test]
    fn longer_chain_hops_only_neighbours() {
        let algebra = AlgebraParams::fermionic(1, 3).unwrap();
        let p = ModelParams::new(algebra, 1.0, 0.0).unwrap();
        let h = build_sector_hamiltonian(&p, 1).unwrap();
        // basis |001>, |010>, |100>: only 1-2 and 2-3 bonds
        assert_eq!(h.matrix.get(0, 2), c(0.0, 0.0));
        assert_eq!(h.matrix.get(0, 1), c(-1.0, 0.0));
        assert_eq!(h.matrix.get(1, 2), c(-1.0, 0.0));
        assert_eq!(build_full_hamiltonian(&p).unwrap().len(), 4);
    }

    #[test]
    fn rejects_non_fermionic_algebra() {
        use crate::params::ExchangePhase;
        let generic = AlgebraParams::new(3, ExchangePhase::radians(0.3), 2).unwrap();
        assert!(ModelParams::new(generic, 1.0, 0.0).is_err());
        let p = AlgebraParams::fermionic(3, 2).unwrap();
        assert!(ModelParams::new(p, f64::NAN, 0.0).is_err());
    }

    #[test]
    fn gauge_requires_two_sites() {
        let algebra = AlgebraParams::fermionic(1, 3).unwrap();
        let p = ModelParams::new(algebra, 1.0, 0.0).unwrap();
        let h = build_sector_hamiltonian(&p, 1).unwrap();
        assert!(toeplitz_gauge_transform(&h, &p).is_err());
    }
}
