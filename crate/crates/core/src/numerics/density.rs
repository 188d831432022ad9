use nalgebra::{DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::hilbert::{c, CMatrix};
use crate::error::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_TOL: f64 = 1e-10;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// within tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDensity", into = "RawDensity")]
pub struct DensityMatrix {
    matrix: CMatrix,
}

/// Matrix JSON form: `dim` plus row-major `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RawDensity {
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

pub(crate) fn to_raw(m: &CMatrix) -> RawDensity {
    let dim = m.nrows();
    let mut entries = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let z = m[(i, j)];
            entries.push([z.re, z.im]);
        }
    }
    RawDensity { dim, entries }
}

pub(crate) fn from_raw(raw: &RawDensity) -> Result<CMatrix> {
    if raw.entries.len() != raw.dim * raw.dim {
        return Err(Error::DimensionMismatch {
            expected: raw.dim * raw.dim,
            got: raw.entries.len(),
        });
    }
    Ok(CMatrix::from_row_iterator(
        raw.dim,
        raw.dim,
        raw.entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
    ))
}

impl TryFrom<RawDensity> for DensityMatrix {
    type Error = String;

    fn try_from(raw: RawDensity) -> std::result::Result<Self, String> {
        from_raw(&raw)
            .and_then(DensityMatrix::new)
            .map_err(|e| e.to_string())
    }
}

impl From<DensityMatrix> for RawDensity {
    fn from(rho: DensityMatrix) -> Self {
        to_raw(&rho.matrix)
    }
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidState(format!(
                "{}x{} is not a square matrix",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = (&matrix - matrix.adjoint()).camax();
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian: deviation {herm:e}"
            )));
        }
        let tr = matrix.trace();
        if (tr - c(1.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = SymmetricEigen::new(matrix.clone()).eigenvalues.min();
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(DensityMatrix { matrix })
    }

    /// Projector onto a normalized copy of `state`.
    pub fn pure(state: &DVector<Complex64>) -> Result<Self> {
        let psi = state.normalize();
        Self::new(&psi * psi.adjoint())
    }

    /// `exp(−H/T)/Z`; the ground-state projector at T = 0.
    pub fn gibbs(hamiltonian: &CMatrix, temperature: f64) -> Result<Self> {
        let eig = SymmetricEigen::new(hamiltonian.clone());
        let e0 = eig.eigenvalues.min();
        let weights: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&e| {
                if temperature == 0.0 {
                    if (e - e0).abs() < 1e-12 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    (-(e - e0) / temperature).exp()
                }
            })
            .collect();
        let z: f64 = weights.iter().sum();
        let d = hamiltonian.nrows();
        let mut diag = CMatrix::zeros(d, d);
        for (k, w) in weights.iter().enumerate() {
            diag[(k, k)] = c(w / z);
        }
        let v = &eig.eigenvectors;
        Self::new(v * diag * v.adjoint())
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `tr(ρ X)`.
    pub fn expect(&self, op: &CMatrix) -> Complex64 {
        (&self.matrix * op).trace()
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }

    /// `½ ‖ρ − σ‖₁`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> f64 {
        let diff = &self.matrix - &other.matrix;
        0.5 * SymmetricEigen::new(diff)
            .eigenvalues
            .iter()
            .map(|e| e.abs())
            .sum::<f64>()
    }

    /// Principal square root through the eigendecomposition; negative
    /// round-off eigenvalues are clipped to zero.
    pub fn sqrt(&self) -> CMatrix {
        let eig = SymmetricEigen::new(self.matrix.clone());
        let d = self.dim();
        let mut diag = CMatrix::zeros(d, d);
        for (k, &e) in eig.eigenvalues.iter().enumerate() {
            diag[(k, k)] = c(e.max(0.0).sqrt());
        }
        &eig.eigenvectors * diag * eig.eigenvectors.adjoint()
    }
}
