//! Lindblad generators of the local, global and chain master equations.
//!
//! Superoperators use column stacking, `vec(ρ)[j·d + i] = ρ[i, j]`:
//! `−i[H, ·] ↦ −i(I⊗H − Hᵀ⊗I)` and
//! `D[x] ↦ conj(x)⊗x − ½(I⊗x†x + (x†x)ᵀ⊗I)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::density::{to_raw, RawDensity};
use super::hilbert::{c, CMatrix, HilbertSpec, SiteKind};
use crate::error::{Error, Result};
use crate::global::EigenmodePair;
use crate::model::{bath_rates, rates, ModelParams, Side, Statistics};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    Local,
    Global,
}

/// One dissipative channel `rate · D[op]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub op: CMatrix,
    pub rate: f64,
}

impl Channel {
    pub fn new(op: CMatrix, rate: f64) -> Self {
        Channel { op, rate }
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        let x = &self.op;
        let xd = x.adjoint();
        let m = &xd * x;
        (x * rho * &xd - (&m * rho + rho * &m) * c(0.5)) * c(self.rate)
    }

    fn superoperator(&self) -> CMatrix {
        let d = self.op.nrows();
        let id = CMatrix::identity(d, d);
        let m = self.op.adjoint() * &self.op;
        let jump = self.op.map(|z| z.conj()).kronecker(&self.op);
        (jump - (id.kronecker(&m) + m.transpose().kronecker(&id)) * c(0.5)) * c(self.rate)
    }
}

/// A Lindblad generator kept in factored form: Hamiltonian plus the channels
/// of each bath, so that per-bath heat flows can be evaluated.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    approach: Approach,
    hamiltonian: CMatrix,
    heat_hamiltonian: CMatrix,
    left: Vec<Channel>,
    right: Vec<Channel>,
    charges: Option<Vec<usize>>,
}

impl Liouvillian {
    /// `charges`, when given, must be conserved by the Hamiltonian and
    /// shifted uniformly by every jump operator; the steady-state solver
    /// then works in the block of operators `|a⟩⟨b|` with equal charge.
    pub fn new(
        approach: Approach,
        hamiltonian: CMatrix,
        heat_hamiltonian: CMatrix,
        left: Vec<Channel>,
        right: Vec<Channel>,
        charges: Option<Vec<usize>>,
    ) -> Result<Self> {
        let d = hamiltonian.nrows();
        let square = |m: &CMatrix| m.nrows() == d && m.ncols() == d;
        if !square(&hamiltonian) || !square(&heat_hamiltonian) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: heat_hamiltonian.nrows(),
            });
        }
        if let Some(bad) = left.iter().chain(&right).find(|ch| !square(&ch.op)) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: bad.op.nrows(),
            });
        }
        if let Some(q) = &charges {
            if q.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: q.len(),
                });
            }
        }
        Ok(Liouvillian {
            approach,
            hamiltonian,
            heat_hamiltonian,
            left,
            right,
            charges,
        })
    }

    pub fn approach(&self) -> Approach {
        self.approach
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.nrows()
    }

    pub fn dim_sq(&self) -> usize {
        self.dim() * self.dim()
    }

    pub fn hamiltonian(&self) -> &CMatrix {
        &self.hamiltonian
    }

    /// Hamiltonian whose energy defines the heat flows.
    pub fn heat_hamiltonian(&self) -> &CMatrix {
        &self.heat_hamiltonian
    }

    pub fn channels(&self, side: Side) -> &[Channel] {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn charges(&self) -> Option<&[usize]> {
        self.charges.as_deref()
    }

    /// `L(ρ)` evaluated directly on the matrix.
    pub fn apply(&self, rho: &CMatrix) -> CMatrix {
        let h = &self.hamiltonian;
        let mut out = (h * rho - rho * h) * (-I);
        for ch in self.left.iter().chain(&self.right) {
            out += ch.apply(rho);
        }
        out
    }

    /// Dissipator of one bath applied to `ρ`.
    pub fn dissipate(&self, side: Side, rho: &CMatrix) -> CMatrix {
        let d = self.dim();
        self.channels(side)
            .iter()
            .fold(CMatrix::zeros(d, d), |acc, ch| acc + ch.apply(rho))
    }

    /// Full d²×d² matrix in column-stacking convention.
    pub fn superoperator(&self) -> CMatrix {
        let d = self.dim();
        let id = CMatrix::identity(d, d);
        let h = &self.hamiltonian;
        let mut l = (id.kronecker(h) - h.transpose().kronecker(&id)) * (-I);
        for ch in self.left.iter().chain(&self.right) {
            l += ch.superoperator();
        }
        l
    }

    /// Superoperator of one bath's dissipator.
    pub fn dissipator_superoperator(&self, side: Side) -> CMatrix {
        let d2 = self.dim_sq();
        self.channels(side)
            .iter()
            .fold(CMatrix::zeros(d2, d2), |acc, ch| acc + ch.superoperator())
    }

    /// The zero-charge block, or `None` without charges.
    pub fn sector(&self) -> Option<Sector> {
        self.charges.as_ref().map(|q| Sector::new(q))
    }

    /// Generator restricted to `sector`. Fails if the generator leaks out of
    /// the block, i.e. the declared charges are not conserved.
    pub fn sector_matrix(&self, sector: &Sector) -> Result<CMatrix> {
        let d = self.dim();
        let n = sector.len();
        let mut out = CMatrix::zeros(n, n);
        let mut leaked = 0.0f64;
        let mut add =
            |out: &mut CMatrix, row: usize, col: usize, v: Complex64| match sector.index(row) {
                Some(r) => out[(r, col)] += v,
                None => leaked = leaked.max(v.norm()),
            };

        struct Prepared {
            rate: f64,
            decay: CMatrix,
            cols: Vec<Vec<(usize, Complex64)>>,
        }
        let prepared: Vec<Prepared> = self
            .left
            .iter()
            .chain(&self.right)
            .filter(|ch| ch.rate != 0.0)
            .map(|ch| {
                let cols = (0..d)
                    .map(|a| {
                        (0..d)
                            .filter_map(|r| {
                                Some((r, ch.op[(r, a)])).filter(|(_, z)| z.norm() != 0.0)
                            })
                            .collect()
                    })
                    .collect();
                Prepared {
                    rate: ch.rate,
                    decay: ch.op.adjoint() * &ch.op,
                    cols,
                }
            })
            .collect();
        let h = &self.hamiltonian;

        for (col, &(a, b)) in sector.basis.iter().enumerate() {
            // L(|a⟩⟨b|) built from outer products of columns and rows
            for r in 0..d {
                let mut left_mult = -I * h[(r, a)];
                let mut right_mult = I * h[(b, r)];
                for p in &prepared {
                    left_mult -= c(0.5 * p.rate) * p.decay[(r, a)];
                    right_mult -= c(0.5 * p.rate) * p.decay[(b, r)];
                }
                if left_mult.norm() != 0.0 {
                    add(&mut out, r * d + b, col, left_mult);
                }
                if right_mult.norm() != 0.0 {
                    add(&mut out, a * d + r, col, right_mult);
                }
            }
            for p in &prepared {
                for &(r, xa) in &p.cols[a] {
                    for &(e, xb) in &p.cols[b] {
                        add(&mut out, r * d + e, col, c(p.rate) * xa * xb.conj());
                    }
                }
            }
        }
        if leaked > 0.0 {
            return Err(Error::InvalidParameter {
                field: "charges",
                reason: format!("generator leaves the zero-charge block (entry {leaked:e})"),
            });
        }
        Ok(out)
    }

    pub fn to_raw(&self) -> RawDensity {
        to_raw(&self.superoperator())
    }
}

/// Operators `|a⟩⟨b|` with equal charge on both sides.
#[derive(Debug, Clone)]
pub struct Sector {
    dim: usize,
    basis: Vec<(usize, usize)>,
    lookup: Vec<Option<usize>>,
}

impl Sector {
    fn new(charges: &[usize]) -> Self {
        let d = charges.len();
        let mut basis = Vec::new();
        let mut lookup = vec![None; d * d];
        for a in 0..d {
            for b in 0..d {
                if charges[a] == charges[b] {
                    lookup[a * d + b] = Some(basis.len());
                    basis.push((a, b));
                }
            }
        }
        Sector {
            dim: d,
            basis,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Position of `|a⟩⟨b|`, addressed by `a·d + b`.
    fn index(&self, row_major: usize) -> Option<usize> {
        self.lookup[row_major]
    }

    pub fn basis(&self) -> &[(usize, usize)] {
        &self.basis
    }

    pub fn to_matrix(&self, v: &[Complex64]) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim, self.dim);
        for (&(a, b), z) in self.basis.iter().zip(v) {
            m[(a, b)] = *z;
        }
        m
    }

    pub fn from_matrix(&self, m: &CMatrix) -> Vec<Complex64> {
        self.basis.iter().map(|&(a, b)| m[(a, b)]).collect()
    }
}

fn kind_for(params: &ModelParams, spec: &HilbertSpec) -> Result<()> {
    match (params.eps_sub, spec.site_kind) {
        (Statistics::Fermionic, SiteKind::Qubit) => Ok(()),
        (Statistics::Bosonic, SiteKind::Oscillator(dim)) => {
            for t in [params.t_left, params.t_right] {
                super::hilbert::check_truncation(dim, params.omega, t)?;
            }
            Ok(())
        }
        _ => Err(Error::InvalidParameter {
            field: "site_kind",
            reason: "qubit sites need eps_sub = -1, oscillator sites eps_sub = +1".into(),
        }),
    }
}

/// Local generator for `spec.n_sites` sites in a line: resonant hopping
/// between neighbours (open ends), left bath on the first site and right
/// bath on the last.
fn local_line(params: &ModelParams, spec: &HilbertSpec) -> Result<Liouvillian> {
    params.validate()?;
    spec.validate()?;
    let n = spec.n_sites;
    let w = c(params.omega);
    let g = c(params.g);
    let lowering: Vec<CMatrix> = (0..n).map(|k| spec.lowering(k)).collect();
    let d = spec.dim();
    let mut h_sites = CMatrix::zeros(d, d);
    for s in &lowering {
        h_sites += s.adjoint() * s * w;
    }
    let mut hamiltonian = h_sites.clone();
    for k in 0..n.saturating_sub(1) {
        let hop = lowering[k].adjoint() * &lowering[k + 1];
        hamiltonian += (&hop + hop.adjoint()) * g;
    }
    let r = rates(params)?;
    let first = &lowering[0];
    let last = &lowering[n - 1];
    let left = vec![
        Channel::new(first.clone(), r.gamma_minus_left),
        Channel::new(first.adjoint(), r.gamma_plus_left),
    ];
    let right = vec![
        Channel::new(last.clone(), r.gamma_minus_right),
        Channel::new(last.adjoint(), r.gamma_plus_right),
    ];
    Liouvillian::new(
        Approach::Local,
        hamiltonian,
        h_sites,
        left,
        right,
        Some(spec.charges()),
    )
}

/// Local master equation of two sites, each attached to its own bath.
pub fn build_local_liouvillian(params: &ModelParams, spec: &HilbertSpec) -> Result<Liouvillian> {
    if spec.n_sites != 2 {
        return Err(Error::InvalidParameter {
            field: "n_sites",
            reason: format!("expected 2, got {}", spec.n_sites),
        });
    }
    kind_for(params, spec)?;
    local_line(params, spec)
}

pub const MAX_CHAIN_SITES: usize = 10;

/// Local master equation of an N-qubit chain between bosonic baths.
pub fn build_chain_liouvillian(params: &ModelParams, n_sites: usize) -> Result<Liouvillian> {
    params.require_bosonic_qubit("chain")?;
    if !(2..=MAX_CHAIN_SITES).contains(&n_sites) {
        return Err(Error::InvalidParameter {
            field: "n_sites",
            reason: format!("chain needs 2..={MAX_CHAIN_SITES} sites, got {n_sites}"),
        });
    }
    local_line(params, &HilbertSpec::qubits(n_sites))
}

/// Dressed-basis jump operators `𝕃_j(ω±)` of two coupled qubits, returned
/// as `(site, frequency, operator)`.
pub fn eigenoperators(params: &ModelParams) -> Result<Vec<(usize, f64, CMatrix)>> {
    let modes = EigenmodePair::from_params(params)?;
    let spec = HilbertSpec::qubits(2);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket =
        |entries: [f64; 4]| nalgebra::DVector::from_iterator(4, entries.iter().map(|&x| c(x)));
    let ground = ket([1.0, 0.0, 0.0, 0.0]);
    let plus = ket([0.0, s, s, 0.0]);
    let minus = ket([0.0, s, -s, 0.0]);
    let top = ket([0.0, 0.0, 0.0, 1.0]);
    let proj = |v: &nalgebra::DVector<Complex64>| v * v.adjoint();
    let (p0, pp, pm, p2) = (proj(&ground), proj(&plus), proj(&minus), proj(&top));

    let mut out = Vec::new();
    for site in 0..2 {
        let sm = spec.lowering(site);
        let l_plus = &p0 * &sm * &pp + &pm * &sm * &p2;
        let l_minus = &p0 * &sm * &pm + &pp * &sm * &p2;
        out.push((site, modes.omega_plus, l_plus));
        out.push((site, modes.omega_minus, l_minus));
    }
    Ok(out)
}

/// Global master equation of two resonant qubits between bosonic baths.
/// Heat flows are measured with the full Hamiltonian `H_S + H_int`.
pub fn build_global_liouvillian(params: &ModelParams) -> Result<Liouvillian> {
    params.validate()?;
    params.require_bosonic_qubit("global master equation")?;
    let spec = HilbertSpec::qubits(2);
    let s1 = spec.lowering(0);
    let s2 = spec.lowering(1);
    let hamiltonian = (spec.number(0) + spec.number(1)) * c(params.omega)
        + (s1.adjoint() * &s2 + s2.adjoint() * &s1) * c(params.g);

    let mut left = Vec::new();
    let mut right = Vec::new();
    for (site, freq, op) in eigenoperators(params)? {
        let side = if site == 0 { Side::Left } else { Side::Right };
        let (gp, gm) = bath_rates(
            Statistics::Bosonic,
            params.gamma(side),
            freq,
            params.temperature(side),
        )?;
        let bucket = if site == 0 { &mut left } else { &mut right };
        bucket.push(Channel::new(op.clone(), gm));
        bucket.push(Channel::new(op.adjoint(), gp));
    }
    Liouvillian::new(
        Approach::Global,
        hamiltonian.clone(),
        hamiltonian,
        left,
        right,
        Some(spec.charges()),
    )
}

/// Largest `‖[H, 𝕃] + ω𝕃‖` over the dressed jump operators.
pub fn eigenoperator_residual(params: &ModelParams) -> Result<f64> {
    let l = build_global_liouvillian(params)?;
    let h = l.hamiltonian();
    Ok(eigenoperators(params)?
        .into_iter()
        .map(|(_, w, op)| (h * &op - &op * h + &op * c(w)).camax())
        .fold(0.0, f64::max))
}
