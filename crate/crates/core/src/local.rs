//! Closed-form weak-coupling (local master equation) observables.
//!
//! Currents are positive when net heat flows from the left bath to the right
//! bath. Every function takes the full [`ModelParams`]; the `direction`
//! argument decides whether the temperatures are used as given or exchanged.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{coth, coth_half, csch, occupation, ModelParams, Side, Statistics};

/// Relative size below which the single-site current denominator is
/// treated as vanishing.
const DENOMINATOR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurrentDirection {
    Forward,
    Swapped,
}

impl CurrentDirection {
    pub fn apply(self, params: &ModelParams) -> ModelParams {
        match self {
            CurrentDirection::Forward => *params,
            CurrentDirection::Swapped => params.swapped(),
        }
    }
}

/// Which bridge carries the current: one site, two sites, or an N-site chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bridge {
    Single,
    Two,
    Chain(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContrastResult {
    pub contrast: f64,
    pub j_forward: f64,
    pub j_swapped: f64,
    /// Scaling-factor denominators of the swapped (`a`) and forward (`b`)
    /// configurations; both are 1 for a single-site bridge.
    pub a_coeff: f64,
    pub b_coeff: f64,
}

fn occupations(p: &ModelParams) -> Result<(f64, f64)> {
    Ok((
        occupation(p.eps_left, p.omega, p.t_left)?,
        occupation(p.eps_right, p.omega, p.t_right)?,
    ))
}

/// `1 + (ε_λ − ε_a) n`: the factor each bath contributes to the relaxation
/// of its site.
fn bath_factor(eps_bath: Statistics, eps_sub: Statistics, n: f64) -> f64 {
    1.0 + (eps_bath.epsilon() - eps_sub.epsilon()) * n
}

/// Heat current through a single central site.
pub fn current_single(params: &ModelParams, direction: CurrentDirection) -> Result<f64> {
    params.validate()?;
    let p = direction.apply(params);
    let (nl, nr) = occupations(&p)?;
    let (gl, gr) = (p.gamma_left, p.gamma_right);
    let denom =
        gl * bath_factor(p.eps_left, p.eps_sub, nl) + gr * bath_factor(p.eps_right, p.eps_sub, nr);
    if denom.abs() < DENOMINATOR_TOL * (gl + gr) {
        return Err(Error::DivergentDenominator { denominator: denom });
    }
    let eps_diff = p.eps_right.epsilon() - p.eps_left.epsilon();
    Ok(2.0 * p.omega * gl * gr * ((nl - nr) + eps_diff * nl * nr) / denom)
}

/// `1 + (γ_Lγ_R/4g²)[1 + (ε_L−ε_a) n_L][1 + (ε_R−ε_a) n_R]` with the given
/// occupations.
fn alpha_denominator(p: &ModelParams, nl: f64, nr: f64) -> Result<f64> {
    let ratio = p.coupling_ratio()?;
    // grouped so that exchanging the sides is exact in floating point
    let product = bath_factor(p.eps_left, p.eps_sub, nl) * bath_factor(p.eps_right, p.eps_sub, nr);
    Ok(1.0 + ratio * product)
}

/// Scaling factor α ∈ (0, 1] relating the two-site current to the
/// single-site one. Fails with [`Error::ZeroCoupling`] at g = 0, where α → 0.
pub fn scaling_alpha(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    let (nl, nr) = occupations(params)?;
    Ok(1.0 / alpha_denominator(params, nl, nr)?)
}

/// Heat current through two coupled sites, `α · J^(1)`.
pub fn current_two(params: &ModelParams, direction: CurrentDirection) -> Result<f64> {
    let p = direction.apply(params);
    let alpha = scaling_alpha(&p)?;
    Ok(alpha * current_single(&p, CurrentDirection::Forward)?)
}

/// Heat current through an N-site qubit chain between bosonic baths.
///
/// Written in the chain form `4g²/(4g² + γ_1γ_N coth coth) · J^(1)`, which
/// coincides with [`current_two`] for every N ≥ 2.
pub fn current_chain(
    params: &ModelParams,
    n_sites: usize,
    direction: CurrentDirection,
) -> Result<f64> {
    params.require_bosonic_qubit("chain current")?;
    if n_sites == 0 {
        return Err(Error::Domain("chain needs at least one site".into()));
    }
    let j1 = current_single(params, direction)?;
    if n_sites == 1 {
        return Ok(j1);
    }
    let p = direction.apply(params);
    let g2 = 4.0 * p.g * p.g;
    let cl = coth_half(p.omega, p.t_left);
    let cr = coth_half(p.omega, p.t_right);
    Ok(g2 / (g2 + p.gamma_left * p.gamma_right * cl * cr) * j1)
}

pub fn current(params: &ModelParams, bridge: Bridge, direction: CurrentDirection) -> Result<f64> {
    match bridge {
        Bridge::Single => current_single(params, direction),
        Bridge::Two => current_two(params, direction),
        Bridge::Chain(n) => current_chain(params, n, direction),
    }
}

/// Rectification contrast `|(J→ + J←)/(J→ − J←)|` of the chosen bridge.
///
/// The two-site and chain contrasts are assembled from the single-site
/// currents and the A, B coefficients; `j_forward`/`j_swapped` report the
/// bridge's own currents.
pub fn contrast(params: &ModelParams, bridge: Bridge) -> Result<ContrastResult> {
    params.validate()?;
    if params.t_left == params.t_right {
        return Err(Error::UndefinedContrast(0.0));
    }
    let j1f = current_single(params, CurrentDirection::Forward)?;
    let j1s = current_single(params, CurrentDirection::Swapped)?;

    let (a, b) = match bridge {
        Bridge::Single | Bridge::Chain(1) => (1.0, 1.0),
        Bridge::Chain(0) => return Err(Error::Domain("chain needs at least one site".into())),
        Bridge::Two | Bridge::Chain(_) => {
            if let Bridge::Chain(_) = bridge {
                params.require_bosonic_qubit("chain contrast")?;
            }
            let w = params.omega;
            // n_λ(T_x): bath λ's statistics at temperature T_x
            let nl_tl = occupation(params.eps_left, w, params.t_left)?;
            let nl_tr = occupation(params.eps_left, w, params.t_right)?;
            let nr_tl = occupation(params.eps_right, w, params.t_left)?;
            let nr_tr = occupation(params.eps_right, w, params.t_right)?;
            (
                alpha_denominator(params, nl_tr, nr_tl)?,
                alpha_denominator(params, nl_tl, nr_tr)?,
            )
        }
    };
    let num = a * j1f + b * j1s;
    let den = a * j1f - b * j1s;
    if den == 0.0 {
        return Err(Error::UndefinedContrast(j1f));
    }
    Ok(ContrastResult {
        contrast: (num / den).abs(),
        j_forward: j1f / b,
        j_swapped: j1s / a,
        a_coeff: a,
        b_coeff: b,
    })
}

/// Contrast of qubit sites between bosonic baths:
/// `|γ_L−γ_R|/(γ_L+γ_R) · |coth_R − coth_L|/(coth_R + coth_L)`.
pub fn contrast_bosonic_qubits(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    params.require_bosonic_qubit("closed-form contrast")?;
    let (gl, gr) = (params.gamma_left, params.gamma_right);
    let cl = coth_half(params.omega, params.t_left);
    let cr = coth_half(params.omega, params.t_right);
    Ok(((gl - gr) / (gl + gr)).abs() * ((cr - cl) / (cr + cl)).abs())
}

fn check_temperature(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("conductance needs T > 0, got {t}")))
    }
}

/// Linear thermal conductance `dJ^(1)/dΔT` of a single site at mean
/// temperature `t`.
pub fn conductance_single(params: &ModelParams, t: f64) -> Result<f64> {
    params.validate()?;
    check_temperature(t)?;
    let w = params.omega;
    let nl = occupation(params.eps_left, w, t)?;
    let nr = occupation(params.eps_right, w, t)?;
    if nl == 0.0 || nr == 0.0 {
        return Ok(0.0);
    }
    let x = w / t;
    // n_a e^{x}
    let na_ex = match params.eps_sub {
        Statistics::Fermionic => 1.0 / (1.0 + (-x).exp()),
        Statistics::Bosonic => -1.0 / (-x).exp_m1(),
    };
    let (gl, gr) = (params.gamma_left, params.gamma_right);
    Ok(2.0 * w * w * gl * gr * na_ex / ((gl / nr + gr / nl) * t * t))
}

/// Linear conductance of the two-site bridge, `α(T) κ^(1)(T)`.
pub fn conductance_two(params: &ModelParams, t: f64) -> Result<f64> {
    let k1 = conductance_single(params, t)?;
    let alpha = scaling_alpha(&params.with_temperatures(t, t))?;
    Ok(alpha * k1)
}

/// Peak-height estimates `(κ^(1)_max, κ^(2)_max)` for qubits between bosonic
/// baths, both evaluated at T = ω/2.
pub fn conductance_peak_estimate(params: &ModelParams) -> Result<(f64, f64)> {
    params.require_bosonic_qubit("peak estimate")?;
    let (gl, gr) = (params.gamma_left, params.gamma_right);
    let k1 = 4.0 * csch(2.0) * gl * gr / (gl + gr);
    let c = coth(1.0);
    Ok((k1, k1 / (1.0 + params.coupling_ratio()? * c * c)))
}

/// Hot-bath temperature above which the two-qubit current decreases with
/// increasing bias when the cold bath sits at T = 0.
pub fn ndtc_threshold(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    params.require_bosonic_qubit("NDTC threshold")?;
    let (gl, gr) = (params.gamma_left, params.gamma_right);
    let ratio = params.coupling_ratio()?;
    let g2 = 4.0 * params.g * params.g;
    let arg = 2.0 * gl * (gr / g2).sqrt() / ((gr + gl) * (1.0 + ratio)).sqrt();
    Ok(params.omega / arg.ln_1p())
}

/// What stays fixed while the bias ΔT = T_L − T_R changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasMode {
    /// `T_R` stays at `params.t_right`, `T_L = T_R + ΔT`.
    #[default]
    FixedCold,
    /// The mean `(T_L + T_R)/2` from `params` stays fixed.
    FixedMean,
}

fn biased(params: &ModelParams, delta_t: f64, mode: BiasMode) -> ModelParams {
    match mode {
        BiasMode::FixedCold => params.with_temperatures(params.t_right + delta_t, params.t_right),
        BiasMode::FixedMean => {
            let mean = 0.5 * (params.t_left + params.t_right);
            params.with_temperatures(mean + 0.5 * delta_t, mean - 0.5 * delta_t)
        }
    }
}

/// Central finite difference `∂J^(2)/∂ΔT` at bias `delta_t`.
pub fn differential_current(
    params: &ModelParams,
    delta_t: f64,
    step: f64,
    mode: BiasMode,
) -> Result<f64> {
    if !(step > 0.0) {
        return Err(Error::Domain(format!(
            "finite-difference step must be > 0, got {step}"
        )));
    }
    let up = biased(params, delta_t + step, mode);
    let down = biased(params, delta_t - step, mode);
    up.validate()?;
    down.validate()?;
    let jp = current_two(&up, CurrentDirection::Forward)?;
    let jm = current_two(&down, CurrentDirection::Forward)?;
    Ok((jp - jm) / (2.0 * step))
}

/// The three cold-bath (T_R → 0) limits of the scaling factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaLimits {
    /// ε_L = ε_a
    pub alpha_0: f64,
    /// ε_L − ε_a = 2
    pub alpha_1: f64,
    /// ε_L − ε_a = −2
    pub alpha_2: f64,
}

/// Evaluates all three limits at `params.t_left`; `t_right` and the
/// statistics flags are ignored.
pub fn alpha_limits(params: &ModelParams) -> Result<AlphaLimits> {
    params.validate()?;
    let x = params.coupling_ratio()?;
    let c = coth_half(params.omega, params.t_left);
    Ok(AlphaLimits {
        alpha_0: 1.0 / (1.0 + x),
        alpha_1: 1.0 / (1.0 + x * c),
        alpha_2: 1.0 / (1.0 + x / c),
    })
}

/// Steady-state coherence `i J / (4 g ω)` implied by a two-site current.
pub fn coherence_from_current(j: f64, params: &ModelParams) -> Result<Complex64> {
    if params.g == 0.0 {
        return Err(Error::ZeroCoupling { alpha_limit: 0.0 });
    }
    Ok(Complex64::new(0.0, j / (4.0 * params.g * params.omega)))
}

/// Heat flowing from bath `side` into its site in the two-site local steady
/// state; the closed-form counterpart of the numeric heat flow.
pub fn heat_flow_two(params: &ModelParams, side: Side) -> Result<f64> {
    let j = current_two(params, CurrentDirection::Forward)?;
    Ok(match side {
        Side::Left => 0.5 * j,
        Side::Right => -0.5 * j,
    })
}
