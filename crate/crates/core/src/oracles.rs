//! Independent checks: dense full-space operator matrices for the algebraic
//! identities, and closed-form spectra of the two solvable two-site cases.
//!
//! The single-operator matrices used as a cross-check are built here by direct
//! enumeration of the mixed-radix Fock index with floating-point phases, not
//! through the winding arithmetic in `operators`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigensolve::{hermitian_eig, max_abs};
use crate::error::{Error, Result};
use crate::fock::{basis_index, fock_basis};
use crate::hamiltonian::{build_sector_hamiltonian, ModelParams};
use crate::operators::{apply_to_basis, LadderKind, OperatorString};
use crate::params::AlgebraParams;

/// Tolerance for exact algebraic identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

type CMat = DMatrix<Complex64>;

/// Matrix of `ops` on the full Fock space in [`fock_basis`] order; column `c`
/// is the image of the `c`-th basis state.
pub fn operator_matrix_dense(ops: &OperatorString, params: &AlgebraParams) -> Result<CMat> {
    let basis = fock_basis(params)?;
    let index = basis_index(&basis);
    let d = basis.len();
    let mut mat = CMat::zeros(d, d);
    for (col, state) in basis.iter().enumerate() {
        if let Some((image, amp)) = apply_to_basis(state, ops, params)? {
            mat[(index[&image], col)] += amp;
        }
    }
    Ok(mat)
}

/// `a_site` or `a_site^dag` on the full space, by enumeration of occupation
/// digits (site 1 most significant) and `exp(-+ i theta S)` computed in floats.
/// Rows and columns follow the mixed-radix order, not [`fock_basis`].
pub fn enumerated_ladder_matrix(
    site: usize,
    kind: LadderKind,
    params: &AlgebraParams,
) -> Result<CMat> {
    let d = params.fock_dimension()?;
    if site == 0 || site > params.num_sites() {
        return Err(Error::SiteOutOfRange {
            site,
            num_sites: params.num_sites(),
        });
    }
    let radix = params.nu() as usize + 1;
    let sites = params.num_sites();
    let theta = params.theta().angle();
    let stride = radix.pow((sites - site) as u32);
    let mut mat = CMat::zeros(d, d);
    for col in 0..d {
        let digits: Vec<usize> = (0..sites)
            .map(|k| (col / radix.pow((sites - 1 - k) as u32)) % radix)
            .collect();
        let left: usize = digits[..site - 1].iter().sum();
        let here = digits[site - 1];
        match kind {
            LadderKind::Annihilate if here > 0 => {
                mat[(col - stride, col)] = Complex64::from_polar(1.0, -theta * left as f64);
            }
            LadderKind::Create if here + 1 < radix => {
                mat[(col + stride, col)] = Complex64::from_polar(1.0, theta * left as f64);
            }
            _ => {}
        }
    }
    Ok(mat)
}

/// Permutation taking [`fock_basis`] order to the mixed-radix order.
fn radix_permutation(params: &AlgebraParams) -> Result<CMat> {
    let basis = fock_basis(params)?;
    let radix = params.nu() as usize + 1;
    let d = basis.len();
    let mut p = CMat::zeros(d, d);
    for (i, s) in basis.iter().enumerate() {
        let code = s
            .occupations()
            .iter()
            .fold(0usize, |acc, &n| acc * radix + n as usize);
        p[(code, i)] = Complex64::new(1.0, 0.0);
    }
    Ok(p)
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub relation: String,
    pub nu: u32,
    pub theta: f64,
    pub num_sites: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Relation ids whose validity depends on `theta = pi/m^2`.
pub fn needs_fermionic_theta(relation: &str) -> bool {
    matches!(
        relation,
        "fermion.anticommute_ff" | "fermion.anticommute_ffdag"
    )
}

struct Checker<'a> {
    params: &'a AlgebraParams,
    reports: Vec<VerificationReport>,
}

impl Checker<'_> {
    fn record(&mut self, relation: &str, deviation: f64) {
        self.reports.push(VerificationReport {
            relation: relation.to_string(),
            nu: self.params.nu(),
            theta: self.params.theta().angle(),
            num_sites: self.params.num_sites(),
            max_deviation: deviation,
            tolerance: IDENTITY_TOLERANCE,
            passed: deviation <= IDENTITY_TOLERANCE,
        });
    }
}

fn pow(mat: &CMat, exponent: u32) -> CMat {
    let mut out = CMat::identity(mat.nrows(), mat.ncols());
    for _ in 0..exponent {
        out = &out * mat;
    }
    out
}

fn dev(lhs: &CMat, rhs: &CMat) -> f64 {
    max_abs(&(lhs - rhs))
}

fn sgn(j: usize, k: usize) -> f64 {
    (j as f64 - k as f64).signum()
}

/// Checks the defining relations, the on-site identities, the number-operator
/// commutators and (for odd `nu`) the composite-fermion algebra as dense matrix
/// identities. One report per relation, aggregated over sites and powers.
pub fn verify_algebra(params: &AlgebraParams) -> Result<Vec<VerificationReport>> {
    let d = params.fock_dimension()?;
    let nu = params.nu();
    let sites = params.num_sites();
    let theta = params.theta().angle();
    let id = CMat::identity(d, d);
    let zero = CMat::zeros(d, d);
    let a: Vec<CMat> = (1..=sites)
        .map(|j| operator_matrix_dense(&OperatorString::identity().annihilate(j, 1), params))
        .collect::<Result<_>>()?;
    let ad: Vec<CMat> = (1..=sites)
        .map(|j| operator_matrix_dense(&OperatorString::identity().create(j, 1), params))
        .collect::<Result<_>>()?;
    let a_pow: Vec<Vec<CMat>> = a
        .iter()
        .map(|m| (0..=nu + 1).map(|p| pow(m, p)).collect())
        .collect();
    let ad_pow: Vec<Vec<CMat>> = ad
        .iter()
        .map(|m| (0..=nu + 1).map(|p| pow(m, p)).collect())
        .collect();

    let mut check = Checker {
        params,
        reports: Vec::new(),
    };

    // representation cross-checks
    let perm = radix_permutation(params)?;
    let mut worst: f64 = 0.0;
    for j in 0..sites {
        let ea = enumerated_ladder_matrix(j + 1, LadderKind::Annihilate, params)?;
        let ec = enumerated_ladder_matrix(j + 1, LadderKind::Create, params)?;
        worst = worst.max(dev(&(&perm * &a[j] * perm.adjoint()), &ea));
        worst = worst.max(dev(&(&perm * &ad[j] * perm.adjoint()), &ec));
    }
    check.record("representation.enumeration", worst);

    let worst = (0..sites)
        .map(|j| dev(&ad[j], &a[j].adjoint()))
        .fold(0.0, f64::max);
    check.record("representation.adjoint", worst);

    let mut worst: f64 = 0.0;
    for j in 0..sites {
        for k in 0..sites {
            let word = OperatorString::identity()
                .annihilate(j + 1, 1)
                .create(k + 1, 1);
            worst = worst.max(dev(
                &operator_matrix_dense(&word, params)?,
                &(&a[j] * &ad[k]),
            ));
            let word = OperatorString::identity()
                .create(j + 1, nu)
                .annihilate(k + 1, nu);
            worst = worst.max(dev(
                &operator_matrix_dense(&word, params)?,
                &(&ad_pow[j][nu as usize] * &a_pow[k][nu as usize]),
            ));
        }
    }
    check.record("representation.functoriality", worst);

    // defining relations
    let mut exchange: f64 = 0.0;
    let mut mixed: f64 = 0.0;
    for j in 0..sites {
        for k in 0..sites {
            if j == k {
                continue;
            }
            let s = sgn(j, k);
            let phase = Complex64::from_polar(1.0, theta * s);
            exchange = exchange.max(dev(&(&a[j] * &a[k]), &(&a[k] * &a[j] * phase)));
            mixed = mixed.max(dev(&(&a[j] * &ad[k]), &(&ad[k] * &a[j] * phase.conj())));
        }
    }
    check.record("algebra.exchange", exchange);
    check.record("algebra.mixed", mixed);

    let n = nu as usize;
    let worst = (0..sites)
        .map(|j| dev(&(&a[j] * &ad[j] + &ad_pow[j][n] * &a_pow[j][n]), &id))
        .fold(0.0, f64::max);
    check.record("algebra.onsite", worst);

    let worst = (0..sites)
        .map(|j| max_abs(&ad_pow[j][n + 1]).max(max_abs(&a_pow[j][n + 1])))
        .fold(0.0, f64::max);
    check.record("algebra.nilpotent", worst);

    // on-site identities; exponents above nu give the zero matrix
    let ap = |j: usize, p: usize| -> &CMat {
        if p <= n + 1 {
            &a_pow[j][p]
        } else {
            &zero
        }
    };
    let cp = |j: usize, p: usize| -> &CMat {
        if p <= n + 1 {
            &ad_pow[j][p]
        } else {
            &zero
        }
    };
    let mut lower_raise_lower: f64 = 0.0;
    let mut lower_raise_power: f64 = 0.0;
    let mut power_reorder: f64 = 0.0;
    let mut sandwich_zero: f64 = 0.0;
    let mut sandwich: f64 = 0.0;
    for j in 0..sites {
        for p in 1..=n {
            for q in 1..=n {
                // a^p a^dag a^q = a^{p+q-1}
                lower_raise_lower =
                    lower_raise_lower.max(dev(&(ap(j, p) * &ad[j] * ap(j, q)), ap(j, p + q - 1)));
                // a^q (a^dag)^p = delta + [q>p] a^{q-p} + [p>q] (a^dag)^{p-q} - (a^dag)^{nu-q+1} a^{nu-p+1}
                let mut rhs = -(cp(j, n - q + 1) * ap(j, n - p + 1));
                if p == q {
                    rhs += &id;
                } else if q > p {
                    rhs += ap(j, q - p);
                } else {
                    rhs += cp(j, p - q);
                }
                power_reorder = power_reorder.max(dev(&(ap(j, q) * cp(j, p)), &rhs));
            }
            // a (a^dag)^p = (a^dag)^{p-1} - (a^dag)^nu a^{nu-p+1}
            let rhs = cp(j, p - 1) - cp(j, n) * ap(j, n - p + 1);
            lower_raise_power = lower_raise_power.max(dev(&(&a[j] * cp(j, p)), &rhs));
        }
        for p in 0..n {
            sandwich_zero = sandwich_zero.max(max_abs(&(ap(j, n) * cp(j, p) * ap(j, n))));
        }
        sandwich = sandwich.max(dev(&(ap(j, n) * cp(j, n) * ap(j, n)), ap(j, n)));
    }
    check.record("identity.lower_raise_lower", lower_raise_lower);
    check.record("identity.lower_raise_power", lower_raise_power);
    check.record("identity.power_reorder", power_reorder);
    check.record("identity.top_sandwich_zero", sandwich_zero);
    check.record("identity.top_sandwich", sandwich);

    // number operators
    let number: Vec<CMat> = (0..sites)
        .map(|j| (1..=n).fold(CMat::zeros(d, d), |acc, k| acc + cp(j, k) * ap(j, k)))
        .collect();
    let basis = fock_basis(params)?;
    let mut diag: f64 = 0.0;
    for (j, nj) in number.iter().enumerate() {
        let want = CMat::from_diagonal(&nalgebra::DVector::from_iterator(
            d,
            basis
                .iter()
                .map(|s| Complex64::from(f64::from(s.occupation(j + 1)))),
        ));
        diag = diag.max(dev(nj, &want));
    }
    check.record("number.occupation", diag);

    let mut site_comm: f64 = 0.0;
    for (j, nj) in number.iter().enumerate() {
        for k in 0..sites {
            let delta = if j == k { 1.0 } else { 0.0 };
            let c_lower = nj * &a[k] - &a[k] * nj;
            let c_raise = nj * &ad[k] - &ad[k] * nj;
            site_comm = site_comm.max(dev(&c_lower, &(&a[k] * Complex64::from(-delta))));
            site_comm = site_comm.max(dev(&c_raise, &(&ad[k] * Complex64::from(delta))));
        }
    }
    check.record("number.site_commutator", site_comm);

    let total = number.iter().fold(CMat::zeros(d, d), |acc, nj| acc + nj);
    let mut total_comm: f64 = 0.0;
    for j in 0..sites {
        total_comm = total_comm.max(dev(&(&total * &a[j] - &a[j] * &total), &(-&a[j])));
        total_comm = total_comm.max(dev(&(&total * &ad[j] - &ad[j] * &total), &ad[j]));
    }
    check.record("number.total_commutator", total_comm);

    // composite fermions f = a^m
    if let Some(m) = params.m() {
        let m = m as usize;
        let f: Vec<&CMat> = (0..sites).map(|j| ap(j, m)).collect();
        let fd: Vec<&CMat> = (0..sites).map(|j| cp(j, m)).collect();
        let mut phase_rel: f64 = 0.0;
        let mut ff: f64 = 0.0;
        let mut ffd: f64 = 0.0;
        for j in 0..sites {
            for k in 0..sites {
                if j == k {
                    continue;
                }
                let phase = Complex64::from_polar(1.0, (m * m) as f64 * theta * sgn(j, k));
                phase_rel = phase_rel.max(dev(&(f[j] * f[k]), &(f[k] * f[j] * phase)));
                ff = ff.max(max_abs(&(f[j] * f[k] + f[k] * f[j])));
                ffd = ffd.max(max_abs(&(f[j] * fd[k] + fd[k] * f[j])));
            }
        }
        let onsite = (0..sites)
            .map(|j| dev(&(f[j] * fd[j] + fd[j] * f[j]), &id))
            .fold(0.0, f64::max);
        let nil = (0..sites)
            .map(|j| max_abs(&(f[j] * f[j])))
            .fold(0.0, f64::max);
        check.record("fermion.exchange_phase", phase_rel);
        check.record("fermion.anticommute_ff", ff);
        check.record("fermion.anticommute_ffdag", ffd);
        check.record("fermion.onsite", onsite);
        check.record("fermion.nilpotent", nil);
    }

    Ok(check.reports)
}

/// Two-site sector dimension `d(N, nu)`: `N + 1` up to `nu`, then `2 nu + 1 - N`.
pub fn two_site_sector_dimension(particles: usize, nu: u32) -> usize {
    let nu = nu as usize;
    if particles <= nu {
        particles + 1
    } else if particles <= 2 * nu {
        2 * nu + 1 - particles
    } else {
        0
    }
}

/// Spectrum of the `d x d` tridiagonal Toeplitz matrix with zero diagonal and
/// `-kappa_a` off the diagonal: `-2 kappa_a cos(j pi / (d + 1))`, eigenvectors
/// `sin(j k pi / (d + 1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Normalized real eigenvectors of the gauged (Toeplitz) matrix, columns
    /// matching `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
}

pub fn tridiagonal_toeplitz_spectrum(d: usize, kappa_a: f64) -> ToeplitzSpectrum {
    let scale = (2.0 / (d as f64 + 1.0)).sqrt();
    let mut modes: Vec<(f64, usize)> = (1..=d)
        .map(|j| (-2.0 * kappa_a * (j as f64 * PI / (d as f64 + 1.0)).cos(), j))
        .collect();
    modes.sort_by(|x, y| x.0.total_cmp(&y.0));
    let eigenvectors = DMatrix::from_fn(d, d, |k, col| {
        let j = modes[col].1 as f64;
        scale * (j * (k as f64 + 1.0) * PI / (d as f64 + 1.0)).sin()
    });
    ToeplitzSpectrum {
        eigenvalues: modes.iter().map(|m| m.0).collect(),
        eigenvectors,
    }
}

impl ToeplitzSpectrum {
    /// Eigenvectors in the ungauged sector basis whose site-1 occupations start
    /// at `first_occupation`: row `r` carries `exp(-i pi r (r - 1) / (2 m^2))`.
    pub fn ungauged_eigenvectors(&self, first_occupation: usize, m: u32) -> CMat {
        let m2 = f64::from(m * m);
        let d = self.eigenvectors.nrows();
        DMatrix::from_fn(d, d, |row, col| {
            let r = (first_occupation + row) as f64;
            Complex64::from_polar(
                self.eigenvectors[(row, col)],
                -PI * r * (r - 1.0) / (2.0 * m2),
            )
        })
    }
}

/// Spectrum of the two-site fermion-hopping block (`kappa_a = 0`).
#[derive(Debug, Clone, PartialEq)]
pub struct FermionicSpectrum {
    /// `(-|kappa_f|, +|kappa_f|)`.
    pub nonzero_pair: (f64, f64),
    /// Paired site-1 occupations `(k, k + m)`.
    pub pairs: Vec<(usize, usize)>,
    /// Lower-energy state of each pair as coefficients on `(chi_k, chi_{k+m})`.
    pub lower_states: Vec<[Complex64; 2]>,
    /// Upper-energy state of each pair.
    pub upper_states: Vec<[Complex64; 2]>,
    pub zero_modes: usize,
}

impl FermionicSpectrum {
    /// Ascending eigenvalue multiset.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let p = self.pairs.len();
        let mut out = vec![self.nonzero_pair.0; p];
        out.extend(std::iter::repeat_n(0.0, self.zero_modes));
        out.extend(std::iter::repeat_n(self.nonzero_pair.1, p));
        out
    }
}

/// Pairs `chi_k` with `chi_{k+m}`; each pair spans `+-kappa_f` and every
/// unpaired basis state is a zero mode. The hop `chi_k -> chi_{k+m}` carries
/// `-kappa_f exp(-i theta m k)`.
pub fn fermionic_sector_spectrum(
    particles: usize,
    m: u32,
    kappa_f: f64,
) -> Result<FermionicSpectrum> {
    let mu = m as usize;
    if m == 0 || particles < mu || particles + 2 > 3 * mu {
        return Err(Error::InvalidParameter(format!(
            "the fermion-hopping block for N = {particles}, m = {m} is zero (need m <= N <= 3m - 2)"
        )));
    }
    let nu = 2 * mu - 1;
    let first = particles.saturating_sub(nu);
    let last = particles.min(nu);
    let theta = PI / (mu * mu) as f64;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let sign = if kappa_f >= 0.0 { 1.0 } else { -1.0 };
    let mut pairs = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for k in first..=last {
        if k + mu > last {
            break;
        }
        let c = Complex64::from_polar(1.0, -theta * (mu * k) as f64);
        pairs.push((k, k + mu));
        let plus = [Complex64::from(s), c * s];
        let minus = [Complex64::from(s), -c * s];
        if sign > 0.0 {
            lower.push(plus);
            upper.push(minus);
        } else {
            lower.push(minus);
            upper.push(plus);
        }
    }
    let d = last - first + 1;
    Ok(FermionicSpectrum {
        nonzero_pair: (-kappa_f.abs(), kappa_f.abs()),
        zero_modes: d - 2 * pairs.len(),
        pairs,
        lower_states: lower,
        upper_states: upper,
    })
}

/// Tolerance for comparisons against closed-form spectra.
pub const SPECTRUM_TOLERANCE: f64 = 1e-10;

fn spectrum_report(relation: &str, m: u32, deviation: f64) -> VerificationReport {
    VerificationReport {
        relation: relation.to_string(),
        nu: 2 * m - 1,
        theta: PI / f64::from(m * m),
        num_sites: 2,
        max_deviation: deviation,
        tolerance: SPECTRUM_TOLERANCE,
        passed: deviation <= SPECTRUM_TOLERANCE,
    }
}

fn max_eigenvalue_gap(numeric: &[f64], exact: &[f64]) -> f64 {
    if numeric.len() != exact.len() {
        return f64::INFINITY;
    }
    numeric
        .iter()
        .zip(exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// Every two-site block at `kappa_a = 1`, `kappa_f = 0` against
/// `-2 cos(j pi / (d + 1))`.
pub fn check_anyonic_spectra(m: u32) -> Result<VerificationReport> {
    let model = ModelParams::two_site(m, 1.0, 0.0)?;
    let mut worst: f64 = 0.0;
    for n in 0..=model.algebra().max_particles() {
        let block = build_sector_hamiltonian(&model, n)?;
        let numeric = hermitian_eig(&block.matrix).eigenvalues;
        let exact = tridiagonal_toeplitz_spectrum(block.dim(), 1.0).eigenvalues;
        worst = worst.max(max_eigenvalue_gap(&numeric, &exact));
    }
    Ok(spectrum_report("spectrum.anyonic", m, worst))
}

/// Every two-site block at `kappa_a = 0`, `kappa_f = 1`: identically zero
/// outside `m <= N <= 3m - 2`, paired `+-1` plus zero modes inside.
pub fn check_fermionic_spectra(m: u32) -> Result<VerificationReport> {
    let model = ModelParams::two_site(m, 0.0, 1.0)?;
    let mu = m as usize;
    let mut worst: f64 = 0.0;
    for n in 0..=model.algebra().max_particles() {
        let block = build_sector_hamiltonian(&model, n)?;
        if n < mu || n + 2 > 3 * mu {
            worst = worst.max(max_abs(block.matrix.as_matrix()));
            continue;
        }
        let numeric = hermitian_eig(&block.matrix).eigenvalues;
        let exact = fermionic_sector_spectrum(n, m, 1.0)?.eigenvalues();
        worst = worst.max(max_eigenvalue_gap(&numeric, &exact));
    }
    Ok(spectrum_report("spectrum.fermionic", m, worst))
}
