//! Ladder operators of the anyon algebra acting on occupation states.
//!
//! Moving `a_j` or `a_j^dag` to its slot in the ordered product
//! `(a_1^dag)^{n_1} .. (a_L^dag)^{n_L}` crosses every creation operator of the
//! sites to its left, one exchange phase each. The on-site amplitude is exactly
//! one, not `sqrt(n)`: `a (a^dag)^p |0> = (a^dag)^{p-1} |0>` in this algebra.
//!
//! * `a_j   |n> = exp(-i theta S_j) |n - e_j>`, zero if `n_j = 0`
//! * `a_j^dag |n> = exp(+i theta S_j) |n + e_j>`, zero if `n_j = nu`
//!
//! where `S_j = n_1 + .. + n_{j-1}`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::eigensolve::HermitianMatrix;
use crate::error::Result;
use crate::fock::{basis_index, sector_basis, FockState, StateVector};
use crate::params::AlgebraParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// `(a_site)^power` or `(a_site^dag)^power`; sites are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub site: usize,
    pub kind: LadderKind,
    pub power: u32,
}

/// A product of ladder factors written left to right and applied right to left.
/// The empty string is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorString {
    factors: Vec<Factor>,
}

impl OperatorString {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Appends `(a_site^dag)^power` on the right.
    pub fn create(mut self, site: usize, power: u32) -> Self {
        self.push(Factor {
            site,
            kind: LadderKind::Create,
            power,
        });
        self
    }

    /// Appends `(a_site)^power` on the right.
    pub fn annihilate(mut self, site: usize, power: u32) -> Self {
        self.push(Factor {
            site,
            kind: LadderKind::Annihilate,
            power,
        });
        self
    }

    /// Appends another string on the right (operator product `self * rhs`).
    pub fn then(mut self, rhs: &OperatorString) -> Self {
        for f in &rhs.factors {
            self.push(*f);
        }
        self
    }

    fn push(&mut self, factor: Factor) {
        // zero powers are identity factors
        if factor.power > 0 {
            self.factors.push(factor);
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Hermitian conjugate: reversed order, kinds swapped.
    pub fn adjoint(&self) -> Self {
        Self {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|f| Factor {
                    kind: match f.kind {
                        LadderKind::Create => LadderKind::Annihilate,
                        LadderKind::Annihilate => LadderKind::Create,
                    },
                    ..*f
                })
                .collect(),
        }
    }

    /// Net change of the particle number.
    pub fn particle_shift(&self) -> i64 {
        self.factors
            .iter()
            .map(|f| match f.kind {
                LadderKind::Create => i64::from(f.power),
                LadderKind::Annihilate => -i64::from(f.power),
            })
            .sum()
    }

    pub(crate) fn validate(&self, params: &AlgebraParams) -> Result<()> {
        self.factors
            .iter()
            .try_for_each(|f| params.check_site(f.site))
    }
}

impl fmt::Display for OperatorString {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(out, "1");
        }
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(out, " ")?;
            }
            let dag = if f.kind == LadderKind::Create {
                "+"
            } else {
                ""
            };
            write!(out, "a{}{dag}", f.site)?;
            if f.power > 1 {
                write!(out, "^{}", f.power)?;
            }
        }
        Ok(())
    }
}

/// Applies `ops` to one basis state in place. Returns the accumulated winding
/// `w` (the amplitude is `exp(i w theta)`), or `None` when the result vanishes.
/// Sites must already be validated.
pub(crate) fn act_on_basis(state: &mut FockState, ops: &OperatorString, nu: u32) -> Option<i64> {
    let mut winding: i64 = 0;
    let occ = state.occupations_mut();
    for factor in ops.factors.iter().rev() {
        let j = factor.site - 1;
        for _ in 0..factor.power {
            let left: i64 = occ[..j].iter().map(|&n| i64::from(n)).sum();
            match factor.kind {
                LadderKind::Annihilate => {
                    if occ[j] == 0 {
                        return None;
                    }
                    occ[j] -= 1;
                    winding -= left;
                }
                LadderKind::Create => {
                    if occ[j] == nu {
                        return None;
                    }
                    occ[j] += 1;
                    winding += left;
                }
            }
        }
    }
    Some(winding)
}

/// Image of a single basis state under `ops`, with its complex amplitude.
pub fn apply_to_basis(
    state: &FockState,
    ops: &OperatorString,
    params: &AlgebraParams,
) -> Result<Option<(FockState, Complex64)>> {
    ops.validate(params)?;
    let mut out = state.clone();
    Ok(act_on_basis(&mut out, ops, params.nu()).map(|w| (out, params.theta().unit(w))))
}

/// Applies an operator string to a state vector (linear extension).
pub fn apply_string(
    state: &StateVector,
    ops: &OperatorString,
    params: &AlgebraParams,
) -> Result<StateVector> {
    ops.validate(params)?;
    let theta = params.theta();
    let mut out = StateVector::zero();
    for (basis, amp) in state.iter() {
        let mut image = basis.clone();
        if let Some(w) = act_on_basis(&mut image, ops, params.nu()) {
            out.add(image, amp * theta.unit(w));
        }
    }
    let sector = state
        .sector()
        .and_then(|n| usize::try_from(n as i64 + ops.particle_shift()).ok());
    out.set_sector(sector);
    Ok(out)
}

/// `a_site |state>`; maps sector `N` to `N - 1`.
pub fn apply_annihilation(
    state: &StateVector,
    site: usize,
    params: &AlgebraParams,
) -> Result<StateVector> {
    apply_string(
        state,
        &OperatorString::identity().annihilate(site, 1),
        params,
    )
}

/// `a_site^dag |state>`; maps sector `N` to `N + 1`.
pub fn apply_creation(
    state: &StateVector,
    site: usize,
    params: &AlgebraParams,
) -> Result<StateVector> {
    apply_string(state, &OperatorString::identity().create(site, 1), params)
}

/// Composite fermion `f_site = a_site^m` (requires odd `nu`).
pub fn fermion_annihilator(site: usize, params: &AlgebraParams) -> Result<OperatorString> {
    let m = params
        .m()
        .ok_or_else(|| crate::Error::NotFermionic(format!("nu = {} is even", params.nu())))?;
    params.check_site(site)?;
    Ok(OperatorString::identity().annihilate(site, m))
}

/// `n_site = sum_{k=1}^{nu} (a^dag)^k a^k` as an operator string list.
pub fn number_operator_terms(site: usize, params: &AlgebraParams) -> Vec<OperatorString> {
    (1..=params.nu())
        .map(|k| {
            OperatorString::identity()
                .create(site, k)
                .annihilate(site, k)
        })
        .collect()
}

/// Matrix of `n_site` on the `particles` sector, assembled by applying each
/// power term to every basis state.
pub fn number_operator_matrix(
    site: usize,
    particles: usize,
    params: &AlgebraParams,
) -> Result<HermitianMatrix> {
    params.check_site(site)?;
    let basis = sector_basis(particles, params)?;
    let index = basis_index(&basis);
    let d = basis.len();
    let mut mat = DMatrix::<Complex64>::zeros(d, d);
    for term in number_operator_terms(site, params) {
        for (col, state) in basis.iter().enumerate() {
            if let Some((image, amp)) = apply_to_basis(state, &term, params)? {
                mat[(index[&image], col)] += amp;
            }
        }
    }
    HermitianMatrix::new(mat)
}
