//! Occupation-number basis and sparse state vectors.
//!
//! `|n_1, .., n_L> = (a_1^dag)^{n_1} .. (a_L^dag)^{n_L} |0>`, with the site-1
//! creation operators leftmost.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::AlgebraParams;

/// Occupation tuple over the chain; every entry is at most `nu`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState(Vec<u32>);

impl FockState {
    pub fn new(occupations: Vec<u32>, params: &AlgebraParams) -> Result<Self> {
        if occupations.len() != params.num_sites() {
            return Err(Error::LengthMismatch {
                expected: params.num_sites(),
                got: occupations.len(),
            });
        }
        if let Some(&n) = occupations.iter().find(|&&n| n > params.nu()) {
            return Err(Error::InvalidParameter(format!(
                "occupation {n} exceeds nu = {}",
                params.nu()
            )));
        }
        Ok(Self(occupations))
    }

    pub fn vacuum(params: &AlgebraParams) -> Self {
        Self(vec![0; params.num_sites()])
    }

    pub fn occupations(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn occupations_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    /// Occupation of a 1-based site.
    pub fn occupation(&self, site: usize) -> u32 {
        self.0[site - 1]
    }

    pub fn particle_number(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }
}

/// Sparse superposition of basis states. Exact zeros are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StateVector {
    amplitudes: BTreeMap<FockState, Complex64>,
    sector: Option<usize>,
}

impl StateVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The zero vector tagged with a particle-number sector.
    pub fn zero_in(sector: usize) -> Self {
        Self {
            amplitudes: BTreeMap::new(),
            sector: Some(sector),
        }
    }

    pub fn basis(state: FockState) -> Self {
        let sector = state.particle_number();
        let mut amplitudes = BTreeMap::new();
        amplitudes.insert(state, Complex64::new(1.0, 0.0));
        Self {
            amplitudes,
            sector: Some(sector),
        }
    }

    /// Builds a vector from (state, amplitude) pairs, summing repeats. The sector
    /// is set when every state has the same particle number.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (FockState, Complex64)>,
    {
        let mut v = Self::zero();
        let mut sector: Option<Option<usize>> = None;
        for (state, amp) in terms {
            let n = state.particle_number();
            sector = match sector {
                None => Some(Some(n)),
                Some(Some(s)) if s == n => Some(Some(s)),
                _ => Some(None),
            };
            v.add(state, amp);
        }
        v.sector = sector.flatten();
        v
    }

    /// Coefficients over an ordered sector basis.
    pub fn from_dense(basis: &[FockState], coefficients: &[Complex64]) -> Result<Self> {
        if basis.len() != coefficients.len() {
            return Err(Error::LengthMismatch {
                expected: basis.len(),
                got: coefficients.len(),
            });
        }
        let mut v = Self::from_terms(basis.iter().cloned().zip(coefficients.iter().copied()));
        if v.sector.is_none() {
            if let Some(first) = basis.first() {
                if basis
                    .iter()
                    .all(|s| s.particle_number() == first.particle_number())
                {
                    v.sector = Some(first.particle_number());
                } else {
                    return Err(Error::MixedSector);
                }
            }
        }
        Ok(v)
    }

    /// Dense coefficients over `basis`; components outside it are dropped.
    pub fn to_dense(&self, basis: &[FockState]) -> DVector<Complex64> {
        DVector::from_iterator(basis.len(), basis.iter().map(|s| self.amplitude(s)))
    }

    pub fn sector(&self) -> Option<usize> {
        self.sector
    }

    pub(crate) fn set_sector(&mut self, sector: Option<usize>) {
        self.sector = sector;
    }

    pub fn amplitude(&self, state: &FockState) -> Complex64 {
        self.amplitudes.get(state).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn add(&mut self, state: FockState, amp: Complex64) {
        if amp == Complex64::default() {
            return;
        }
        match self.amplitudes.entry(state) {
            Entry::Vacant(slot) => {
                slot.insert(amp);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += amp;
                if *slot.get() == Complex64::default() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            amplitudes: self
                .amplitudes
                .iter()
                .map(|(s, a)| (s.clone(), a * factor))
                .filter(|(_, a)| *a != Complex64::default())
                .collect(),
            sector: self.sector,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .values()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest componentwise modulus of `self - other`.
    pub fn max_difference(&self, other: &StateVector) -> f64 {
        let mut worst: f64 = 0.0;
        for (s, a) in &self.amplitudes {
            worst = worst.max((a - other.amplitude(s)).norm());
        }
        for (s, b) in &other.amplitudes {
            if !self.amplitudes.contains_key(s) {
                worst = worst.max(b.norm());
            }
        }
        worst
    }
}

/// All occupation tuples with `particles` in total, in ascending lexicographic
/// order. For two sites this is `|j, N - j>` with `j` ascending.
pub fn sector_basis(particles: usize, params: &AlgebraParams) -> Result<Vec<FockState>> {
    params.check_sector(particles)?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(params.num_sites());
    fill_sector(
        particles,
        params.nu() as usize,
        params.num_sites(),
        &mut prefix,
        &mut out,
    );
    Ok(out)
}

fn fill_sector(
    remaining: usize,
    nu: usize,
    sites_left: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<FockState>,
) {
    if sites_left == 0 {
        if remaining == 0 {
            out.push(FockState(prefix.clone()));
        }
        return;
    }
    let lo = remaining.saturating_sub(nu * (sites_left - 1));
    let hi = remaining.min(nu);
    for n in lo..=hi {
        prefix.push(n as u32);
        fill_sector(remaining - n, nu, sites_left - 1, prefix, out);
        prefix.pop();
    }
}

/// Every basis state of the Fock space, sector by sector.
pub fn fock_basis(params: &AlgebraParams) -> Result<Vec<FockState>> {
    params.fock_dimension()?;
    let mut all = Vec::new();
    for n in 0..=params.max_particles() {
        all.extend(sector_basis(n, params)?);
    }
    Ok(all)
}

/// Position lookup for an ordered basis.
pub fn basis_index(basis: &[FockState]) -> HashMap<&FockState, usize> {
    basis.iter().enumerate().map(|(i, s)| (s, i)).collect()
}
