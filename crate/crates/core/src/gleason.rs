//! Constraints every outcome-value assignment over an orthonormal basis must
//! satisfy — values sum to one, and two-valued assignments never mark two
//! mutually exclusive outcomes at once — plus the squared-amplitude
//! assignment that meets them on every basis, and seeded generators for
//! exercising that claim.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::StateVector;
use crate::rng::{self, Rng};

/// Non-negative values attached to the vectors of one orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameAssignment {
    basis: Vec<Vec<Complex64>>,
    values: Vec<f64>,
}

impl FrameAssignment {
    pub fn basis(&self) -> &[Vec<Complex64>] {
        &self.basis
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Assigns each basis vector the squared magnitude of its overlap with
/// `psi`. The basis must be orthonormal: every pairwise inner product within
/// `1e-9` of the identity pattern.
pub fn born_assignment(psi: &StateVector, basis: &[Vec<Complex64>]) -> Result<FrameAssignment> {
    for b in basis {
        if b.len() != psi.dim() {
            return Err(Error::DimensionMismatch {
                expected: psi.dim(),
                got: b.len(),
            });
        }
    }
    for i in 0..basis.len() {
        for j in i..basis.len() {
            let target = if i == j { 1.0 } else { 0.0 };
            let deviation = (inner(&basis[i], &basis[j]).norm() - target).abs();
            if deviation > 1e-9 {
                return Err(Error::NonOrthonormalBasis { i, j, deviation });
            }
        }
    }
    let values = basis
        .iter()
        .map(|b| inner(b, psi.amplitudes()).norm_sqr())
        .collect();
    Ok(FrameAssignment {
        basis: basis.to_vec(),
        values,
    })
}

/// Do the values sum to one within `tol`?
pub fn check_additivity(values: &[f64], tol: f64) -> bool {
    (values.iter().sum::<f64>() - 1.0).abs() <= tol
}

/// For an assignment of zeros and ones, is every pairwise product zero —
/// no two outcomes marked as having happened together? Values farther than
/// `tol` from both 0 and 1 are not two-valued at all and are rejected.
pub fn check_exclusivity(values: &[f64], tol: f64) -> Result<bool> {
    for (index, &value) in values.iter().enumerate() {
        if value.abs() > tol && (value - 1.0).abs() > tol {
            return Err(Error::NonBooleanValue { index, value });
        }
    }
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if (values[i] * values[j]).abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Normalized state with amplitudes drawn uniformly from the complex box,
/// labeled `a1..aN`.
pub fn random_state(dim: usize, rng: &mut Rng) -> StateVector {
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| random_component(rng)).collect();
        let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        let labels = (1..=dim).map(|i| format!("a{i}")).collect();
        return StateVector::new(amps.iter().map(|c| c / norm).collect(), labels)
            .expect("normalized by construction");
    }
}

/// Random orthonormal basis via Gram-Schmidt on uniform complex vectors;
/// near-dependent draws are rejected and retried.
pub fn random_orthonormal_basis(dim: usize, rng: &mut Rng) -> Vec<Vec<Complex64>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
    while basis.len() < dim {
        let mut v: Vec<Complex64> = (0..dim).map(|_| random_component(rng)).collect();
        for b in &basis {
            let overlap = inner(b, &v);
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= overlap * bk;
            }
        }
        let norm = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        basis.push(v.iter().map(|c| c / norm).collect());
    }
    basis
}

fn random_component(rng: &mut Rng) -> Complex64 {
    Complex64::new(
        2.0 * rng::unit_f64(rng) - 1.0,
        2.0 * rng::unit_f64(rng) - 1.0,
    )
}
