//! Dense Hermitian eigensolver.
//!
//! Householder reflections reduce the matrix to a complex tridiagonal form, a
//! diagonal unitary makes the off-diagonal real and non-negative, and the real
//! symmetric tridiagonal problem is solved with the implicit-shift QL iteration
//! (EISPACK `tql2`). Output is a pure function of the input bits:
//!
//! * eigenvalues ascending;
//! * inside a cluster of (near-)degenerate eigenvalues the basis is rebuilt by
//!   projecting the unit vectors `e_0, e_1, ..` onto the cluster subspace and
//!   orthonormalizing in index order, so it does not depend on how the QL
//!   sweep happened to rotate inside the cluster;
//! * the first component of modulus above `1e-8` of every eigenvector is real
//!   and non-negative.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Entrywise tolerance for `H = H^dag` on ingestion.
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues closer than this, relative to `max |H_ij|`, share a cluster.
pub const CLUSTER_TOLERANCE: f64 = 1e-9;

const PHASE_PIVOT: f64 = 1e-8;
const PROJECTION_FLOOR: f64 = 1e-3;
const MAX_QL_SWEEPS: usize = 200;

/// Square complex matrix validated to be Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(DMatrix<Complex64>);

impl HermitianMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::InvalidParameter(format!(
                "expected a non-empty square matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidParameter(
                "matrix has non-finite entries".into(),
            ));
        }
        let asym = max_asymmetry(&matrix);
        if asym > HERMITICITY_TOLERANCE {
            return Err(Error::NotHermitian {
                max_asymmetry: asym,
            });
        }
        Ok(Self(matrix))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    /// `max |H_ij|`.
    pub fn max_norm(&self) -> f64 {
        max_abs(&self.0)
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.0[(i, i)].re).sum()
    }
}

/// `max |A_ij - conj(A_ji)|`.
pub fn max_asymmetry(matrix: &DMatrix<Complex64>) -> f64 {
    let n = matrix.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((matrix[(i, j)] - matrix[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn max_abs(matrix: &DMatrix<Complex64>) -> f64 {
    matrix.iter().fold(0.0, |acc: f64, z| acc.max(z.norm()))
}

/// Eigenvalues (ascending) with orthonormal eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: DMatrix<Complex64>,
    /// Largest `||H v_i - lambda_i v_i||_2` over all pairs.
    pub residual_bound: f64,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, index: usize) -> DVector<Complex64> {
        self.eigenvectors.column(index).into_owned()
    }

    /// Contract value `1e-10 (1 + max|H_ij| d)` that `residual_bound` must respect.
    pub fn residual_budget(h: &HermitianMatrix) -> f64 {
        1e-10 * (1.0 + h.max_norm() * h.dim() as f64)
    }
}

pub fn hermitian_eig(h: &HermitianMatrix) -> SpectralDecomposition {
    let n = h.dim();
    let (diag, offdiag, mut vectors) = tridiagonalize(h.as_matrix());
    let mut d = diag;
    let mut e = vec![0.0; n];
    e[1..n].copy_from_slice(&offdiag);
    tql2(&mut d, &mut e, &mut vectors);

    canonicalize_clusters(&d, &mut vectors, CLUSTER_TOLERANCE * h.max_norm());
    for mut col in vectors.column_iter_mut() {
        if let Some(pivot) = col.iter().find(|z| z.norm() > PHASE_PIVOT).copied() {
            let phase = pivot.conj() / pivot.norm();
            col *= phase;
        }
    }

    let hv = h.as_matrix() * &vectors;
    let residual_bound = (0..n)
        .map(|i| (hv.column(i) - vectors.column(i) * Complex64::from(d[i])).norm())
        .fold(0.0, f64::max);

    SpectralDecomposition {
        eigenvalues: d,
        eigenvectors: vectors,
        residual_bound,
    }
}

/// Returns `(diagonal, |subdiagonal|, V)` with `H = V T V^dag` and `T` the real
/// symmetric tridiagonal matrix.
fn tridiagonalize(h: &DMatrix<Complex64>) -> (Vec<f64>, Vec<f64>, DMatrix<Complex64>) {
    let n = h.nrows();
    let mut a = h.clone();
    let mut q = DMatrix::<Complex64>::identity(n, n);

    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let norm_x = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;

        let mut w = DVector::<Complex64>::zeros(n);
        w[k + 1] = x0 - alpha;
        for i in k + 2..n {
            w[i] = a[(i, k)];
        }
        let wn = w.norm();
        w /= Complex64::from(wn);

        // A <- P A P with P = I - 2 w w^dag
        let two = Complex64::new(2.0, 0.0);
        let wa = w.adjoint() * &a;
        a -= &w * wa * two;
        let aw = &a * &w;
        a -= aw * w.adjoint() * two;
        let qw = &q * &w;
        q -= qw * w.adjoint() * two;

        // clean the annihilated column/row exactly
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = Complex64::default();
            a[(k, i)] = Complex64::default();
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    let mut delta = Complex64::new(1.0, 0.0);
    let mut phases = vec![delta];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1, i)];
        let r = sub.norm();
        if r > 0.0 {
            delta *= sub / r;
        }
        offdiag.push(r);
        phases.push(delta);
    }
    for (j, mut col) in q.column_iter_mut().enumerate() {
        col *= phases[j];
    }
    (diag, offdiag, q)
}

/// Implicit-shift QL on a real symmetric tridiagonal matrix. `e[i]` couples
/// `i - 1` and `i`; rotations are accumulated into the columns of `v`.
/// Eigenvalues come back sorted ascending with `v` permuted to match.
fn tql2(d: &mut [f64], e: &mut [f64], v: &mut DMatrix<Complex64>) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            for _ in 0..MAX_QL_SWEEPS {
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..n {
                        let vk1 = v[(k, i + 1)];
                        let vk = v[(k, i)];
                        v[(k, i + 1)] = vk * s + vk1 * c;
                        v[(k, i)] = vk * c - vk1 * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d.swap(i, k);
            v.swap_columns(i, k);
        }
    }
}

fn canonicalize_clusters(eigenvalues: &[f64], v: &mut DMatrix<Complex64>, tol: f64) {
    let n = eigenvalues.len();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && eigenvalues[end] - eigenvalues[end - 1] <= tol {
            end += 1;
        }
        if end - start > 1 {
            let block = v.columns(start, end - start).into_owned();
            let projector = &block * block.adjoint();
            let mut accepted: Vec<DVector<Complex64>> = Vec::with_capacity(end - start);
            for i in 0..n {
                if accepted.len() == end - start {
                    break;
                }
                let mut u = projector.column(i).into_owned();
                // two passes of Gram-Schmidt
                for _ in 0..2 {
                    for q in &accepted {
                        let overlap = q.dotc(&u);
                        u -= q * overlap;
                    }
                }
                let norm = u.norm();
                if norm > PROJECTION_FLOOR {
                    accepted.push(u / Complex64::from(norm));
                }
            }
            // the floor can only starve us if the cluster basis was not orthonormal
            if accepted.len() == end - start {
                for (offset, q) in accepted.into_iter().enumerate() {
                    v.set_column(start + offset, &q);
                }
            }
        }
        start = end;
    }
}

/// Lowest eigenpair, with the degeneracy of the lowest level.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    pub state: DVector<Complex64>,
    pub degeneracy: usize,
    /// Column of the decomposition that was returned.
    pub index: usize,
}

/// Picks the ground state. With a degenerate lowest level, one member of the
/// deterministic eigenbasis is drawn uniformly using a generator seeded by
/// `seed`; the same decomposition and seed always give the same member.
pub fn ground_state(spec: &SpectralDecomposition, seed: u64) -> GroundState {
    let lowest = spec.eigenvalues[0];
    let window = CLUSTER_TOLERANCE * (1.0 + lowest.abs());
    let degeneracy = spec
        .eigenvalues
        .iter()
        .take_while(|&&x| x - lowest <= window)
        .count();
    let index = if degeneracy > 1 {
        ChaCha8Rng::seed_from_u64(seed).gen_range(0..degeneracy)
    } else {
        0
    };
    GroundState {
        energy: spec.eigenvalues[index],
        state: spec.eigenvector(index),
        degeneracy,
        index,
    }
}
