//! Values frozen from an independent numpy construction of the two-site model
//! (explicit phase rules, `numpy.linalg.eigh`) and from hand evaluation.

// frozen values keep every digit of the oracle output
#![allow(clippy::excessive_precision, clippy::approx_constant)]

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, PI};

use anyon_ed::entanglement::entropy_from_eigenvalues;
use anyon_ed::hamiltonian::{fermion_sector_is_zero, toeplitz_gauge_transform};
use anyon_ed::operators::{apply_creation, apply_string, number_operator_matrix};
use anyon_ed::{
    build_full_hamiltonian, build_sector_hamiltonian, entropy_scan, ground_state,
    ground_state_entropy, hermitian_eig, reduced_density_matrix_general,
    reduced_density_matrix_two_site, AlgebraParams, FockState, ModelParams, OperatorString,
    ParticlePolicy, SkipReason, StateVector,
};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// (m, N, ground energy, entropy)
const ANYONIC_SCAN: [(u32, usize, f64, f64); 11] = [
    (2, 2, -1.4142135623730949, 0.12982549552077383),
    (2, 3, -1.6180339887498947, 0.13690995961113556),
    (2, 4, -1.4142135623730949, 0.41649553069968759),
    (2, 5, -1.0, 0.56233514461880829),
    (3, 4, -1.7320508075688776, 0.12637805660622958),
    (3, 5, -1.8019377358048376, 0.11288112688803359),
    (3, 6, -1.7320508075688781, 0.24577536666847133),
    (4, 6, -1.8477590650225733, 0.099998549484360238),
    (4, 7, -1.8793852415718166, 0.08860212659853936),
    (5, 9, -1.9189859472289945, 0.070359678049392749),
    (5, 11, -1.8793852415718171, 0.13527600324092851),
];

const MIXED_SCAN: [(u32, usize, f64, f64, f64, f64); 8] = [
    (2, 3, 1.0, 1.0, -2.4781719302048764, 0.054025782859102423),
    (2, 4, 1.0, 1.0, -1.9318516525781364, 0.45056120886630507),
    (3, 4, 1.0, 1.0, -2.3760789782885143, 0.07071186527035403),
    (3, 7, 1.0, 1.0, -1.9318516525781366, 0.37677016125643681),
    (2, 2, 1.0, 10.0, -10.168128136492269, 0.62974032714589967),
    (2, 3, 1.0, 10.0, -11.410754171623712, 0.024929271457842732),
    (3, 5, 1.0, 10.0, -11.607545442281154, 0.062548227036098983),
    (3, 7, 1.0, 10.0, -10.10488959376997, 0.68730714808994242),
];

#[test]
fn anyonic_scan_matches_independent_construction() {
    for (m, n, energy, entropy) in ANYONIC_SCAN {
        let model = ModelParams::two_site(m, 1.0, 0.0).unwrap();
        let r = ground_state_entropy(&model, n, 42).unwrap();
        assert!((r.ground_energy - energy).abs() < 1e-12, "m={m} N={n}");
        assert!(
            (r.entropy - entropy).abs() < 1e-10,
            "m={m} N={n}: {}",
            r.entropy
        );
        assert_eq!(r.degeneracy, 1);
    }
}

#[test]
fn mixed_scan_matches_independent_construction() {
    for (m, n, ka, kf, energy, entropy) in MIXED_SCAN {
        let model = ModelParams::two_site(m, ka, kf).unwrap();
        let r = ground_state_entropy(&model, n, 42).unwrap();
        assert!(
            (r.ground_energy - energy).abs() < 1e-11,
            "m={m} N={n} kf={kf}"
        );
        assert!(
            (r.entropy - entropy).abs() < 1e-10,
            "m={m} N={n} kf={kf}: {}",
            r.entropy
        );
    }
}

#[test]
fn single_site_anyon_term_doubles_at_m1() {
    // for m = 1 the two hopping terms coincide
    let model = ModelParams::two_site(1, 1.0, 1.0).unwrap();
    let r = ground_state_entropy(&model, 1, 0).unwrap();
    assert_eq!(r.ground_energy, -2.0);
    let model = ModelParams::two_site(1, 1.0, 10.0).unwrap();
    assert_eq!(
        ground_state_entropy(&model, 1, 0).unwrap().ground_energy,
        -11.0
    );
}

#[test]
fn entropy_dip_sits_at_two_m_minus_one() {
    // the entropy falls up to the half-filled point and rises after it
    let outcome = entropy_scan(&[3, 4, 5], &ParticlePolicy::Auto, 1.0, 0.0, 42).unwrap();
    for m in [3u32, 4, 5] {
        let curve: Vec<(usize, f64)> = outcome
            .records
            .iter()
            .filter(|r| r.m == m && r.particles >= 2)
            .map(|r| (r.particles, r.entropy))
            .collect();
        let dip = curve.iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap().0;
        assert_eq!(dip, 2 * m as usize - 1, "m = {m}");
    }
}

#[test]
fn ladder_examples() {
    let p = AlgebraParams::fermionic(3, 2).unwrap();
    let s = |n: Vec<u32>| FockState::new(n, &p).unwrap();
    let a1 = OperatorString::identity().annihilate(1, 1);
    let vac = StateVector::basis(s(vec![0, 0]));
    assert!(apply_string(&vac, &a1, &p).unwrap().is_empty());
    let one = apply_string(&StateVector::basis(s(vec![1, 0])), &a1, &p).unwrap();
    assert_eq!(one.amplitude(&s(vec![0, 0])), c(1.0, 0.0));
    let top = apply_creation(&StateVector::basis(s(vec![3, 0])), 1, &p).unwrap();
    assert!(top.is_empty());
    // a_2^dag |r, s> = e^{i theta r} |r, s + 1>
    let raised = apply_creation(&StateVector::basis(s(vec![2, 1])), 2, &p).unwrap();
    assert!(
        (raised.amplitude(&s(vec![2, 2])) - Complex64::from_polar(1.0, PI / 2.0)).norm() < 1e-15
    );
    let two = OperatorString::identity().create(1, 2);
    assert!(apply_string(&StateVector::basis(s(vec![2, 0])), &two, &p)
        .unwrap()
        .is_empty());
}

#[test]
fn number_operator_reads_occupations() {
    let p = AlgebraParams::fermionic(3, 2).unwrap();
    for n in 0..=6 {
        let basis = anyon_ed::sector_basis(n, &p).unwrap();
        for site in 1..=2 {
            let mat = number_operator_matrix(site, n, &p).unwrap();
            for (i, b) in basis.iter().enumerate() {
                assert_eq!(mat.get(i, i), c(f64::from(b.occupation(site)), 0.0));
            }
        }
    }
    let single = AlgebraParams::fermionic(3, 1).unwrap();
    let mat = number_operator_matrix(1, 2, &single).unwrap();
    assert_eq!(mat.get(0, 0), c(2.0, 0.0));
}

#[test]
fn hamiltonian_examples() {
    let model = ModelParams::two_site(2, 1.0, 0.0).unwrap();
    let h = build_sector_hamiltonian(&model, 2).unwrap();
    let w = Complex64::from_polar(1.0, -PI / 4.0);
    assert_eq!(h.matrix.get(1, 0), c(-1.0, 0.0));
    assert!((h.matrix.get(2, 1) + w).norm() < 1e-15);
    let g = toeplitz_gauge_transform(&h, &model).unwrap();
    assert!((g.matrix.get(1, 0) + 1.0).norm() < 1e-15);
    assert!((g.matrix.get(2, 1) + 1.0).norm() < 1e-15);

    let sizes: Vec<usize> = build_full_hamiltonian(&model)
        .unwrap()
        .iter()
        .map(|b| b.dim())
        .collect();
    assert_eq!(sizes, vec![1, 2, 3, 4, 3, 2, 1]);
    let m1 = ModelParams::two_site(1, 1.0, 0.0).unwrap();
    let sizes: Vec<usize> = build_full_hamiltonian(&m1)
        .unwrap()
        .iter()
        .map(|b| b.dim())
        .collect();
    assert_eq!(sizes, vec![1, 2, 1]);

    let fermi = ModelParams::two_site(2, 0.0, 1.0).unwrap();
    assert!(fermion_sector_is_zero(&fermi, 1).unwrap());
    assert!(!fermion_sector_is_zero(&fermi, 4).unwrap());
    assert!(fermion_sector_is_zero(&fermi, 5).unwrap());
}

#[test]
fn eigen_examples() {
    let model = ModelParams::two_site(2, 1.0, 0.0).unwrap();
    let h = build_sector_hamiltonian(&model, 2).unwrap();
    let ev = hermitian_eig(&h.matrix).eigenvalues;
    let s2 = 2f64.sqrt();
    for (got, want) in ev.iter().zip([-s2, 0.0, s2]) {
        assert!((got - want).abs() < 1e-14);
    }
    let fermi = ModelParams::two_site(2, 0.0, 1.0).unwrap();
    let spec = hermitian_eig(&build_sector_hamiltonian(&fermi, 2).unwrap().matrix);
    let g = ground_state(&spec, 7);
    assert!((g.energy + 1.0).abs() < 1e-14);
    // xi = (chi_0 + chi_2)/sqrt 2 at k = 0
    assert!((g.state[0].norm() - FRAC_1_SQRT_2).abs() < 1e-14);
    assert!(g.state[1].norm() < 1e-14);
    assert!((g.state[0] - g.state[2]).norm() < 1e-14);
}

#[test]
fn reduced_density_examples() {
    let p = AlgebraParams::fermionic(3, 2).unwrap();
    let phi = [
        c(0.5, 0.0),
        c(FRAC_1_SQRT_2, 0.0),
        Complex64::from_polar(0.5, -PI / 4.0),
    ];
    let rho = reduced_density_matrix_two_site(&phi, 2, &p).unwrap();
    let third = 2f64.sqrt() / 3.0;
    assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15);
    assert!((rho.get(1, 1).re - 0.5).abs() < 1e-15);
    assert!((rho.get(0, 1).norm() - third).abs() < 1e-15);
    let s = entropy_from_eigenvalues(rho.eigenvalues()).unwrap();
    let exact = entropy_from_eigenvalues(&[0.5 - third, 0.5 + third]).unwrap();
    assert!((s - exact).abs() < 1e-14);
    assert!((exact - 0.12982549552077338).abs() < 1e-14);

    let p1 = AlgebraParams::fermionic(1, 2).unwrap();
    let both = StateVector::basis(FockState::new(vec![1, 1], &p1).unwrap());
    let rho = reduced_density_matrix_general(&both, &p1).unwrap();
    assert!((rho.get(0, 0).re - 0.5).abs() < 1e-15 && rho.get(0, 1).norm() < 1e-15);
    assert!((entropy_from_eigenvalues(rho.eigenvalues()).unwrap() - LN_2).abs() < 1e-15);

    let pure = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let rho = reduced_density_matrix_two_site(&pure, 2, &p).unwrap();
    assert!(entropy_from_eigenvalues(rho.eigenvalues()).unwrap() < 1e-15);
}

#[test]
fn scan_examples() {
    let out = entropy_scan(&[2], &ParticlePolicy::Auto, 0.0, 1.0, 42).unwrap();
    let ns: Vec<usize> = out.records.iter().map(|r| r.particles).collect();
    assert_eq!(ns, vec![2, 3, 4]);
    assert!(out.records.iter().all(|r| r.degeneracy >= 1));
    assert_eq!(out.records[1].degeneracy, 2);
    assert!(out
        .skipped
        .iter()
        .all(|s| s.reason == SkipReason::SectorZero));
    assert_eq!(out.skipped.len(), 3);

    let out = entropy_scan(&[1], &ParticlePolicy::Auto, 1.0, 1.0, 42).unwrap();
    assert_eq!(out.records.len(), 2);
    assert_eq!(out.records[0].entropy, 0.0);
    assert!((out.records[1].entropy - LN_2).abs() < 1e-12);

    let out = entropy_scan(&[2], &ParticlePolicy::Only(vec![0, 3, 9]), 1.0, 0.0, 42).unwrap();
    assert_eq!(out.records.len(), 1);
    assert_eq!(
        out.skipped.iter().map(|s| s.reason).collect::<Vec<_>>(),
        vec![SkipReason::OutOfRange, SkipReason::OutOfRange]
    );
}

#[test]
fn anyonic_eigenvectors_match_sine_modes() {
    use anyon_ed::oracles::tridiagonal_toeplitz_spectrum;
    for m in 1..=4u32 {
        let nu = 2 * m as usize - 1;
        let model = ModelParams::two_site(m, 1.0, 0.0).unwrap();
        for block in build_full_hamiltonian(&model).unwrap() {
            let spec = hermitian_eig(&block.matrix);
            let oracle = tridiagonal_toeplitz_spectrum(block.dim(), 1.0)
                .ungauged_eigenvectors(block.particles.saturating_sub(nu), m);
            for k in 0..block.dim() {
                let overlap = (oracle.column(k).adjoint() * spec.eigenvectors.column(k))[(0, 0)];
                assert!(
                    (overlap.norm() - 1.0).abs() < 1e-12,
                    "m={m} N={} k={k}",
                    block.particles
                );
            }
        }
    }
}
