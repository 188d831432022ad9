//! Stroboscopic collision model: at every step the sites meet fresh thermal
//! ancillas, evolve jointly for a time τ and the ancillas are discarded.
//!
//! The system–ancilla coupling is `√(γ/τ)(s b† + s† b)`, so the map
//! approaches `exp(τ L)` of the local master equation as τ → 0.

use nalgebra::DVector;
use num_complex::Complex64;

use super::density::DensityMatrix;
use super::hilbert::{c, dim_cap, truncation_dim, CMatrix, HilbertSpec, SiteKind};
use super::steady::null_vector;
use crate::error::{Error, Result};
use crate::model::{ModelParams, Side, Statistics};

/// Largest `‖U†U − I‖` accepted for a collision unitary.
pub const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
struct Ancilla {
    side: Side,
    site: usize,
    kind: SiteKind,
    gamma: f64,
    temperature: f64,
}

impl Ancilla {
    fn for_side(params: &ModelParams, side: Side, site: usize, gamma: f64) -> Self {
        let temperature = params.temperature(side);
        let kind = match params.bath_statistics(side) {
            Statistics::Fermionic => SiteKind::Qubit,
            Statistics::Bosonic => SiteKind::Oscillator(truncation_dim(params.omega, temperature)),
        };
        Ancilla {
            side,
            site,
            kind,
            gamma,
            temperature,
        }
    }

    /// Gibbs populations of the (truncated) ancilla levels.
    fn populations(&self, omega: f64) -> Vec<f64> {
        let d = self.kind.local_dim();
        let w: Vec<f64> = (0..d)
            .map(|k| match self.temperature {
                0.0 => f64::from(u8::from(k == 0)),
                t => (-(k as f64) * omega / t).exp(),
            })
            .collect();
        let z: f64 = w.iter().sum();
        w.into_iter().map(|x| x / z).collect()
    }
}

/// Precomputed single-collision map of a chain of qubits.
#[derive(Debug, Clone)]
pub struct CollisionModel {
    tau: f64,
    system_dim: usize,
    /// Column-stacked superoperator of one collision.
    map: CMatrix,
    /// Per ancilla: its side, the system operator whose expectation is the
    /// ancilla energy after the collision, and its energy before.
    energy: Vec<(Side, CMatrix, f64)>,
    unitarity_error: f64,
}

impl CollisionModel {
    /// Two qubit sites, each meeting an ancilla of its own bath per step.
    pub fn new(params: &ModelParams, tau: f64) -> Result<Self> {
        Self::with_couplings(params, tau, params.gamma_left, params.gamma_right)
    }

    /// As [`CollisionModel::new`] with explicit bath couplings, which may be
    /// zero.
    pub fn with_couplings(
        params: &ModelParams,
        tau: f64,
        gamma_left: f64,
        gamma_right: f64,
    ) -> Result<Self> {
        params.validate()?;
        require_qubits(params)?;
        for (field, g) in [("gamma_left", gamma_left), ("gamma_right", gamma_right)] {
            if !g.is_finite() || g < 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    reason: "must be finite and >= 0".into(),
                });
            }
        }
        let ancillas = [
            Ancilla::for_side(params, Side::Left, 0, gamma_left),
            Ancilla::for_side(params, Side::Right, 1, gamma_right),
        ];
        Self::build(params, 2, &ancillas, tau)
    }

    /// One qubit exchanging with the bath on `side` only.
    pub fn single_site(params: &ModelParams, side: Side, tau: f64) -> Result<Self> {
        params.validate()?;
        require_qubits(params)?;
        let anc = Ancilla::for_side(params, side, 0, params.gamma(side));
        Self::build(params, 1, &[anc], tau)
    }

    fn build(params: &ModelParams, n_sites: usize, ancillas: &[Ancilla], tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "tau",
                reason: "must be finite and > 0".into(),
            });
        }
        let omega = params.omega;
        let ds = 1usize << n_sites;
        let anc_dims: Vec<usize> = ancillas.iter().map(|a| a.kind.local_dim()).collect();
        let da: usize = anc_dims.iter().product();
        let total = ds * da;
        let cap = dim_cap();
        if total > cap {
            return Err(Error::DimensionCap {
                vectorized: total,
                cap,
            });
        }

        // factor order: system sites, then ancillas; joint index = i·da + k
        let kinds: Vec<SiteKind> = std::iter::repeat_n(SiteKind::Qubit, n_sites)
            .chain(ancillas.iter().map(|a| a.kind))
            .collect();
        // products of local factors, so no full-size matrix products are needed
        let embed = |ops: &[(usize, CMatrix)]| {
            kinds
                .iter()
                .enumerate()
                .fold(CMatrix::identity(1, 1), |acc, (k, kind)| {
                    match ops.iter().find(|(pos, _)| *pos == k) {
                        Some((_, op)) => acc.kronecker(op),
                        None => {
                            acc.kronecker(&CMatrix::identity(kind.local_dim(), kind.local_dim()))
                        }
                    }
                })
        };
        let lower = |k: usize| kinds[k].lowering();
        let raise = |k: usize| kinds[k].lowering().adjoint();

        let mut h = CMatrix::zeros(total, total);
        for k in 0..kinds.len() {
            h += embed(&[(k, raise(k) * lower(k))]) * c(omega);
        }
        for k in 0..n_sites - 1 {
            let hop = embed(&[(k, raise(k)), (k + 1, lower(k + 1))]);
            h += (&hop + hop.adjoint()) * c(params.g);
        }
        for (j, anc) in ancillas.iter().enumerate() {
            let x = embed(&[
                (anc.site, lower(anc.site)),
                (n_sites + j, raise(n_sites + j)),
            ]);
            h += (&x + x.adjoint()) * c((anc.gamma / tau).sqrt());
        }

        let charges: Vec<usize> = (0..total).map(|idx| excitations(idx, &kinds)).collect();
        let (u, unitarity_error) = propagator(&h, tau, &charges)?;

        // thermal weights of every joint ancilla configuration
        let pops: Vec<Vec<f64>> = ancillas.iter().map(|a| a.populations(omega)).collect();
        let weight = |mut k: usize| {
            let mut p = 1.0;
            for (dims, pop) in anc_dims.iter().zip(&pops).rev() {
                p *= pop[k % dims];
                k /= dims;
            }
            p
        };
        let level = |mut k: usize, which: usize| {
            for (j, dims) in anc_dims.iter().enumerate().rev() {
                if j == which {
                    return k % dims;
                }
                k /= dims;
            }
            unreachable!()
        };

        let mut map = CMatrix::zeros(ds * ds, ds * ds);
        let mut energy: Vec<(Side, CMatrix, f64)> = ancillas
            .iter()
            .map(|a| (a.side, CMatrix::zeros(ds, ds), 0.0))
            .collect();
        for k in 0..da {
            let p = weight(k);
            if p == 0.0 {
                continue;
            }
            // B_k[(a, m), i] = U[(a, m), (i, k)]
            let cols: Vec<usize> = (0..ds).map(|i| i * da + k).collect();
            let b = u.select_columns(&cols);
            for m in 0..da {
                let rows: Vec<usize> = (0..ds).map(|a| a * da + m).collect();
                let kraus = b.select_rows(&rows) * c(p.sqrt());
                map += kraus.map(|z| z.conj()).kronecker(&kraus);
                for (j, (_, op, _)) in energy.iter_mut().enumerate() {
                    let e = omega * level(m, j) as f64;
                    if e != 0.0 {
                        *op += kraus.adjoint() * &kraus * c(e);
                    }
                }
            }
            for (j, (_, _, before)) in energy.iter_mut().enumerate() {
                *before += p * omega * level(k, j) as f64;
            }
        }
        Ok(CollisionModel {
            tau,
            system_dim: ds,
            map,
            energy,
            unitarity_error,
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    /// `‖U†U − I‖` of the joint unitary, largest entry.
    pub fn unitarity_error(&self) -> f64 {
        self.unitarity_error
    }

    /// Superoperator of one collision acting on column-stacked ρ.
    pub fn map_superoperator(&self) -> &CMatrix {
        &self.map
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        let d = self.system_dim;
        let v = &self.map * DVector::from_column_slice(rho.as_slice());
        let out = CMatrix::from_column_slice(d, d, v.as_slice());
        (&out + out.adjoint()) * c(0.5)
    }

    /// State after one collision.
    pub fn step(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_dim(rho)?;
        DensityMatrix::new(self.apply(rho.matrix()))
    }

    /// `initial` followed by the states after each of `n_collisions` steps.
    pub fn simulate(
        &self,
        initial: &DensityMatrix,
        n_collisions: usize,
    ) -> Result<Vec<DensityMatrix>> {
        self.check_dim(initial)?;
        let mut out = Vec::with_capacity(n_collisions + 1);
        out.push(initial.clone());
        for _ in 0..n_collisions {
            let next = self.step(out.last().expect("trajectory starts non-empty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// The state left invariant by a collision.
    pub fn fixed_point(&self) -> Result<DensityMatrix> {
        let n = self.map.nrows();
        let v = null_vector(&(&self.map - CMatrix::identity(n, n)))?;
        let d = self.system_dim;
        let rho = CMatrix::from_column_slice(d, d, v.as_slice());
        let tr = rho.trace();
        if tr.norm() == 0.0 {
            return Err(Error::NonConvergence(
                "collision fixed point has zero trace".into(),
            ));
        }
        let rho = rho / tr;
        DensityMatrix::new((&rho + rho.adjoint()) * c(0.5))
    }

    /// Heat per unit time entering the system from each bath during the next
    /// collision, as `(Q_L, Q_R)`. A side without an ancilla reports zero.
    pub fn heat_flows(&self, rho: &DensityMatrix) -> Result<(f64, f64)> {
        self.check_dim(rho)?;
        let (mut ql, mut qr) = (0.0, 0.0);
        for (side, op, before) in &self.energy {
            let after = (rho.matrix() * op).trace().re;
            let q = -(after - before) / self.tau;
            match side {
                Side::Left => ql += q,
                Side::Right => qr += q,
            }
        }
        Ok((ql, qr))
    }

    /// `J = Q_L − Q_R` in state `rho`.
    pub fn current(&self, rho: &DensityMatrix) -> Result<f64> {
        let (ql, qr) = self.heat_flows(rho)?;
        Ok(ql - qr)
    }

    /// Current in the fixed point, the long-time limit of the simulation.
    pub fn steady_current(&self) -> Result<f64> {
        self.current(&self.fixed_point()?)
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.system_dim {
            return Err(Error::DimensionMismatch {
                expected: self.system_dim,
                got: rho.dim(),
            });
        }
        Ok(())
    }
}

fn require_qubits(params: &ModelParams) -> Result<()> {
    if params.eps_sub != Statistics::Fermionic {
        return Err(Error::UnsupportedStatistics(
            "collision model needs qubit sites (eps_sub = -1)".into(),
        ));
    }
    Ok(())
}

fn excitations(mut idx: usize, kinds: &[SiteKind]) -> usize {
    let mut total = 0;
    for kind in kinds.iter().rev() {
        let d = kind.local_dim();
        total += idx % d;
        idx /= d;
    }
    total
}

/// `exp(−iτH)` assembled from the blocks of fixed excitation number, which
/// every term of the collision Hamiltonian conserves.
fn propagator(h: &CMatrix, tau: f64, charges: &[usize]) -> Result<(CMatrix, f64)> {
    let n = h.nrows();
    let top = charges.iter().copied().max().unwrap_or(0);
    let mut u = CMatrix::zeros(n, n);
    let mut worst = 0.0_f64;
    for q in 0..=top {
        let idx: Vec<usize> = (0..n).filter(|&i| charges[i] == q).collect();
        if idx.is_empty() {
            continue;
        }
        let block = h.select_rows(&idx).select_columns(&idx) * Complex64::new(0.0, -tau);
        let ub = block.exp();
        let m = idx.len();
        let err = (ub.adjoint() * &ub - CMatrix::identity(m, m)).camax();
        worst = worst.max(err);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                u[(i, j)] = ub[(a, b)];
            }
        }
    }
    if !(worst <= UNITARITY_TOL) {
        return Err(Error::NonUnitary(worst));
    }
    Ok((u, worst))
}

/// Trajectory of `n_collisions` steps starting from the ground state of
/// `spec`, which must be one or two qubits. A single qubit meets only the
/// left bath.
pub fn collision_simulate(
    params: &ModelParams,
    tau: f64,
    n_collisions: usize,
    spec: &HilbertSpec,
) -> Result<Vec<DensityMatrix>> {
    if spec.site_kind != SiteKind::Qubit {
        return Err(Error::UnsupportedStatistics(
            "collision model needs qubit sites".into(),
        ));
    }
    let model = match spec.n_sites {
        1 => CollisionModel::single_site(params, Side::Left, tau)?,
        2 => CollisionModel::new(params, tau)?,
        n => {
            return Err(Error::InvalidParameter {
                field: "n_sites",
                reason: format!("expected 1 or 2, got {n}"),
            })
        }
    };
    let ground = DensityMatrix::pure(&ground_ket(spec.dim()))?;
    model.simulate(&ground, n_collisions)
}

fn ground_ket(dim: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(dim);
    v[0] = c(1.0);
    v
}
