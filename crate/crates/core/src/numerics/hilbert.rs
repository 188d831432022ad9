//! Site Hilbert spaces, ladder operators and tensor embedding.
//!
//! Local basis index 0 is the ground state. Multi-site basis states are
//! ordered with site 1 as the most significant digit, so for two qubits the
//! order is |00⟩, |01⟩, |10⟩, |11⟩.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ModelParams, Statistics};

pub type CMatrix = DMatrix<Complex64>;

/// Default cap on the vectorized dimension d² of dense solves.
pub const DEFAULT_DIM_CAP: usize = 4096;
/// Thermal weight allowed beyond an oscillator truncation.
pub const TAIL_TOL: f64 = 1e-10;
/// Smallest oscillator truncation ever used.
pub const MIN_OSCILLATOR_DIM: usize = 8;

/// Reads `QTM_DIM_CAP`, falling back to [`DEFAULT_DIM_CAP`].
pub fn dim_cap() -> usize {
    std::env::var("QTM_DIM_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_DIM_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SiteKind {
    Qubit,
    Oscillator(usize),
}

impl SiteKind {
    pub fn local_dim(self) -> usize {
        match self {
            SiteKind::Qubit => 2,
            SiteKind::Oscillator(d) => d,
        }
    }

    pub fn lowering(self) -> CMatrix {
        let d = self.local_dim();
        let mut m = CMatrix::zeros(d, d);
        for k in 1..d {
            let amp = match self {
                SiteKind::Qubit => 1.0,
                SiteKind::Oscillator(_) => (k as f64).sqrt(),
            };
            m[(k - 1, k)] = Complex64::new(amp, 0.0);
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSpec {
    pub site_kind: SiteKind,
    pub n_sites: usize,
}

impl HilbertSpec {
    pub fn qubits(n_sites: usize) -> Self {
        HilbertSpec {
            site_kind: SiteKind::Qubit,
            n_sites,
        }
    }

    pub fn oscillators(n_sites: usize, dim: usize) -> Self {
        HilbertSpec {
            site_kind: SiteKind::Oscillator(dim),
            n_sites,
        }
    }

    /// Two sites of the kind selected by `eps_sub`; oscillators are truncated
    /// by [`truncation_dim`] at the hotter bath temperature.
    pub fn for_params(params: &ModelParams) -> Self {
        match params.eps_sub {
            Statistics::Fermionic => Self::qubits(2),
            Statistics::Bosonic => {
                let t = params.t_left.max(params.t_right);
                Self::oscillators(2, truncation_dim(params.omega, t))
            }
        }
    }

    pub fn local_dim(&self) -> usize {
        self.site_kind.local_dim()
    }

    pub fn dim(&self) -> usize {
        self.local_dim().pow(self.n_sites as u32)
    }

    /// Checks the site count, the oscillator size and the vectorized
    /// dimension against [`dim_cap`].
    pub fn validate(&self) -> Result<()> {
        if self.n_sites == 0 {
            return Err(Error::InvalidParameter {
                field: "n_sites",
                reason: "must be >= 1".into(),
            });
        }
        if let SiteKind::Oscillator(d) = self.site_kind {
            if d < 2 {
                return Err(Error::InvalidParameter {
                    field: "site_kind",
                    reason: "oscillator dim must be >= 2".into(),
                });
            }
        }
        let cap = dim_cap();
        let vectorized = (self.local_dim() as u128).pow(2 * self.n_sites as u32);
        if vectorized > cap as u128 {
            return Err(Error::DimensionCap {
                vectorized: vectorized.min(usize::MAX as u128) as usize,
                cap,
            });
        }
        Ok(())
    }

    /// Lowering operator of `site` (0-based) on the full space.
    pub fn lowering(&self, site: usize) -> CMatrix {
        self.embed(&self.site_kind.lowering(), site)
    }

    pub fn number(&self, site: usize) -> CMatrix {
        let a = self.lowering(site);
        a.adjoint() * a
    }

    pub fn embed(&self, op: &CMatrix, site: usize) -> CMatrix {
        let d = self.local_dim();
        let mut out = CMatrix::identity(1, 1);
        for k in 0..self.n_sites {
            let factor = if k == site {
                op.clone()
            } else {
                CMatrix::identity(d, d)
            };
            out = out.kronecker(&factor);
        }
        out
    }

    /// Total excitation number of every basis state.
    pub fn charges(&self) -> Vec<usize> {
        let d = self.local_dim();
        (0..self.dim())
            .map(|mut idx| {
                let mut total = 0;
                for _ in 0..self.n_sites {
                    total += idx % d;
                    idx /= d;
                }
                total
            })
            .collect()
    }

    pub fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim(), self.dim())
    }
}

/// Thermal weight `e^{−dim ω/T}` a truncated oscillator discards.
pub fn tail_weight(dim: usize, omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        0.0
    } else {
        (-(dim as f64) * omega / temperature).exp()
    }
}

/// Smallest truncation (at least [`MIN_OSCILLATOR_DIM`]) whose thermal tail
/// at `temperature` is below [`TAIL_TOL`].
pub fn truncation_dim(omega: f64, temperature: f64) -> usize {
    let mut dim = MIN_OSCILLATOR_DIM;
    while tail_weight(dim, omega, temperature) >= TAIL_TOL {
        dim += 1;
    }
    dim
}

pub fn check_truncation(dim: usize, omega: f64, temperature: f64) -> Result<()> {
    let tail = tail_weight(dim, omega, temperature);
    if tail >= TAIL_TOL {
        Err(Error::TruncationTooSmall { dim, tail })
    } else {
        Ok(())
    }
}

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}
