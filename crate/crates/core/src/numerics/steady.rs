//! Null-space extraction of the stationary state.

use nalgebra::DVector;
use num_complex::Complex64;

use super::density::DensityMatrix;
use super::hilbert::{c, dim_cap, CMatrix};
use super::liouvillian::Liouvillian;
use crate::error::{Error, Result};

/// Singular values below this fraction of the largest count as zero.
pub const NULL_TOL: f64 = 1e-9;
/// Required `‖L(ρ)‖ / ‖L‖` of the returned state.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Blocks up to this size get a full SVD; larger ones use singular values
/// plus inverse iteration for the vector.
const FULL_SVD_MAX: usize = 400;

type Unvectorize = Box<dyn Fn(&[Complex64]) -> CMatrix>;

/// Stationary state of `liouvillian`.
///
/// Works in the zero-charge block when the generator declares charges and on
/// the full d²×d² matrix otherwise. Fails with
/// [`Error::DegenerateSteadyState`] when more than one singular value is
/// numerically zero.
pub fn steady_state(liouvillian: &Liouvillian) -> Result<DensityMatrix> {
    let (matrix, to_rho): (CMatrix, Unvectorize) = match liouvillian.sector() {
        Some(sector) => {
            let m = liouvillian.sector_matrix(&sector)?;
            (m, Box::new(move |v| sector.to_matrix(v)))
        }
        None => {
            let cap = dim_cap();
            if liouvillian.dim_sq() > cap {
                return Err(Error::DimensionCap {
                    vectorized: liouvillian.dim_sq(),
                    cap,
                });
            }
            let d = liouvillian.dim();
            // column stacking: entry j·d + i is ρ[i, j]
            (
                liouvillian.superoperator(),
                Box::new(move |v| CMatrix::from_column_slice(d, d, v)),
            )
        }
    };

    let norm = matrix.norm();
    let v = null_vector(&matrix)?;
    let rho = to_rho(v.as_slice());
    let rho = normalize(rho)?;

    let residual = liouvillian.apply(&rho).norm();
    if residual > RESIDUAL_TOL * norm {
        return Err(Error::NonConvergence(format!(
            "steady-state residual {residual:e} exceeds tolerance"
        )));
    }
    DensityMatrix::new(rho)
}

pub(crate) fn null_vector(m: &CMatrix) -> Result<DVector<Complex64>> {
    let n = m.nrows();
    if n <= FULL_SVD_MAX {
        let svd = m.clone().svd(false, true);
        let sigma = &svd.singular_values;
        check_unique(sigma.as_slice())?;
        let k = sigma.imin();
        let v_t = svd
            .v_t
            .as_ref()
            .ok_or_else(|| Error::NonConvergence("SVD returned no vectors".into()))?;
        let v = v_t.row(k).adjoint();
        Ok(inverse_iteration(m, v, sigma.max(), 1))
    } else {
        let sigma = m.singular_values();
        check_unique(sigma.as_slice())?;
        let start = DVector::from_element(n, c(1.0 / (n as f64).sqrt()));
        Ok(inverse_iteration(m, start, sigma.max(), 3))
    }
}

fn check_unique(sigma: &[f64]) -> Result<()> {
    let max = sigma.iter().copied().fold(0.0, f64::max);
    let zeros = sigma.iter().filter(|&&s| s < NULL_TOL * max).count();
    match zeros {
        0 => Err(Error::NonConvergence(format!(
            "no singular value below {NULL_TOL:e} x sigma_max; generator has no stationary state"
        ))),
        1 => Ok(()),
        k => Err(Error::DegenerateSteadyState(k)),
    }
}

/// Shifted inverse iteration towards the null vector. Falls back to the
/// current iterate if the shifted matrix cannot be factored.
fn inverse_iteration(
    m: &CMatrix,
    mut v: DVector<Complex64>,
    scale: f64,
    steps: usize,
) -> DVector<Complex64> {
    let n = m.nrows();
    let shift = c(1e-14 * scale.max(f64::MIN_POSITIVE));
    let shifted = m - CMatrix::identity(n, n) * shift;
    let lu = shifted.lu();
    for _ in 0..steps {
        match lu.solve(&v) {
            Some(next) if next.iter().all(|z| z.is_finite()) && next.norm() > 0.0 => {
                v = next.normalize()
            }
            _ => break,
        }
    }
    v
}

fn normalize(rho: CMatrix) -> Result<CMatrix> {
    let tr = rho.trace();
    if tr.norm() == 0.0 || !tr.is_finite() {
        return Err(Error::NonConvergence("null vector has zero trace".into()));
    }
    let rho = rho / tr;
    Ok((&rho + rho.adjoint()) * c(0.5))
}
