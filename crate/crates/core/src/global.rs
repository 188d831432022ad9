//! Closed forms of the strong-coupling (global master equation) description
//! of two resonant qubits between bosonic baths.
//!
//! In this regime the baths see the dressed modes `ω± = ω ± g` instead of the
//! bare sites, and every observable splits into one contribution per mode.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::CurrentDirection;
use crate::model::{coth, coth_half, csch, occupation, ModelParams, Statistics};
use crate::roots::{bisect, golden_max, log_grid};

/// Dressed frequencies `ω± = ω ± g` of the coupled pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenmodePair {
    pub omega_plus: f64,
    pub omega_minus: f64,
}

impl EigenmodePair {
    pub fn new(omega: f64, g: f64) -> Result<Self> {
        let omega_minus = omega - g;
        if !(omega_minus > 0.0) {
            return Err(Error::ModeInversion(omega_minus));
        }
        Ok(EigenmodePair {
            omega_plus: omega + g,
            omega_minus,
        })
    }

    pub fn from_params(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        Self::new(params.omega, params.g)
    }

    pub fn as_array(&self) -> [f64; 2] {
        [self.omega_minus, self.omega_plus]
    }
}

/// Current carried by the dressed mode at `mode_freq`.
pub fn current_mode(
    params: &ModelParams,
    mode_freq: f64,
    direction: CurrentDirection,
) -> Result<f64> {
    params.validate()?;
    params.require_bosonic_qubit("global current")?;
    if !(mode_freq > 0.0) || !mode_freq.is_finite() {
        return Err(Error::Domain(format!(
            "mode frequency must be > 0, got {mode_freq}"
        )));
    }
    let p = direction.apply(params);
    let nl = occupation(Statistics::Bosonic, mode_freq, p.t_left)?;
    let nr = occupation(Statistics::Bosonic, mode_freq, p.t_right)?;
    let (gl, gr) = (p.gamma_left, p.gamma_right);
    let denom = gl * coth_half(mode_freq, p.t_left) + gr * coth_half(mode_freq, p.t_right);
    Ok(gl * gr * mode_freq * (nl - nr) / denom)
}

/// Total strong-coupling current, the sum over both dressed modes.
pub fn current_global(params: &ModelParams, direction: CurrentDirection) -> Result<f64> {
    let modes = EigenmodePair::from_params(params)?;
    Ok(current_mode(params, modes.omega_plus, direction)?
        + current_mode(params, modes.omega_minus, direction)?)
}

/// Contrast of the strong-coupling machine with the cold bath at T = 0.
///
/// Uses the per-mode weights
/// `A± = ω± n_L(ω±) / [(γ_R/γ_L + c±)(γ_L/γ_R + c±)]`, `c± = coth(ω±/2T_L)`.
pub fn contrast_global(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    params.require_bosonic_qubit("global contrast")?;
    if params.t_right != 0.0 {
        return Err(Error::Domain(format!(
            "closed-form global contrast needs t_right = 0, got {}; use contrast_global_swap",
            params.t_right
        )));
    }
    if params.t_left == 0.0 {
        return Err(Error::UndefinedContrast(0.0));
    }
    let modes = EigenmodePair::from_params(params)?;
    let (gl, gr) = (params.gamma_left, params.gamma_right);
    let (mut sum_a, mut sum_an) = (0.0, 0.0);
    for w in modes.as_array() {
        let n = occupation(Statistics::Bosonic, w, params.t_left)?;
        let c = coth_half(w, params.t_left);
        let a = w * n / ((gr / gl + c) * (gl / gr + c));
        sum_a += a;
        sum_an += a * n;
    }
    if sum_an == 0.0 {
        // both occupations underflowed: the forward current vanishes
        return Err(Error::UndefinedContrast(0.0));
    }
    Ok(((gl - gr) / (gl + gr)).abs() / (1.0 + sum_a / sum_an))
}

/// Contrast `|(J→ + J←)/(J→ − J←)|` of the strong-coupling current at any
/// pair of temperatures.
pub fn contrast_global_swap(params: &ModelParams) -> Result<f64> {
    params.validate()?;
    if params.t_left == params.t_right {
        return Err(Error::UndefinedContrast(0.0));
    }
    let jf = current_global(params, CurrentDirection::Forward)?;
    let js = current_global(params, CurrentDirection::Swapped)?;
    if jf == js {
        return Err(Error::UndefinedContrast(jf));
    }
    Ok(((jf + js) / (jf - js)).abs())
}

/// `ω² csch(ω/T) / 2T²`: the conductance shape of one mode, without the
/// coupling prefactor.
fn mode_conductance(w: f64, t: f64) -> f64 {
    w * w * csch(w / t) / (2.0 * t * t)
}

/// Linear conductance of the strong-coupling machine at mean temperature `t`.
pub fn conductance_global(params: &ModelParams, t: f64) -> Result<f64> {
    params.validate()?;
    params.require_bosonic_qubit("global conductance")?;
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("conductance needs T > 0, got {t}")));
    }
    let modes = EigenmodePair::from_params(params)?;
    let (gl, gr) = (params.gamma_left, params.gamma_right);
    let shape = mode_conductance(modes.omega_minus, t) + mode_conductance(modes.omega_plus, t);
    Ok(gl * gr / (gl + gr) * shape)
}

/// The two sides `(1/x, coth(x)/2)` of the peak condition for a single mode;
/// they cross at `x = ω±/T` of the peak.
pub fn split_curves(x: f64) -> (f64, f64) {
    (1.0 / x, 0.5 * coth(x))
}

/// Root `x*` of `2/x = coth x`, about 1.915.
pub fn split_root() -> f64 {
    bisect(|x| 2.0 / x - coth(x), 1.0, 3.0, 1e-15).expect("2/x - coth x changes sign on [1, 3]")
}

/// Peak structure of the strong-coupling conductance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConductancePeaks {
    /// Located maxima of the full conductance curve.
    pub t_minus: f64,
    pub t_plus: f64,
    /// Single-mode estimates `ω±/x*`.
    pub approx_minus: f64,
    pub approx_plus: f64,
    pub split_root: f64,
    /// Full widths at half maximum of each mode's own conductance term.
    pub fwhm_minus: f64,
    pub fwhm_plus: f64,
    /// Widths read off the full curve; `None` when the valley between the
    /// peaks stays above half of the smaller peak.
    pub fwhm_full: Option<(f64, f64)>,
}

const PEAK_GRID: usize = 256;

/// Locates the two maxima of [`conductance_global`] by a log-spaced scan
/// over `[10⁻² ω−, 10² ω+]` refined with golden-section search.
pub fn conductance_peaks(params: &ModelParams) -> Result<ConductancePeaks> {
    let modes = EigenmodePair::from_params(params)?;
    let kappa = |t: f64| conductance_global(params, t);
    let grid = log_grid(1e-2 * modes.omega_minus, 1e2 * modes.omega_plus, PEAK_GRID);
    let values = grid.iter().map(|&t| kappa(t)).collect::<Result<Vec<_>>>()?;

    let mut maxima = Vec::new();
    for i in 1..grid.len() - 1 {
        if values[i] > values[i - 1] && values[i] >= values[i + 1] {
            let t = golden_max(
                |t| kappa(t).unwrap_or(f64::NEG_INFINITY),
                grid[i - 1],
                grid[i + 1],
                1e-13,
            );
            maxima.push(t);
        }
    }
    if maxima.len() < 2 {
        return Err(Error::NoSplit);
    }
    let (t_minus, t_plus) = (maxima[0], maxima[maxima.len() - 1]);

    let x_star = split_root();
    let width = mode_fwhm_unit();
    let fwhm_full = full_curve_fwhm(&kappa, t_minus, t_plus, &grid)?;
    Ok(ConductancePeaks {
        t_minus,
        t_plus,
        approx_minus: modes.omega_minus / x_star,
        approx_plus: modes.omega_plus / x_star,
        split_root: x_star,
        fwhm_minus: width * modes.omega_minus,
        fwhm_plus: width * modes.omega_plus,
        fwhm_full,
    })
}

/// FWHM of `T ↦ ω² csch(ω/T)/T²` in units of ω. The shape depends on T/ω
/// only, so one number serves both modes.
pub fn mode_fwhm_unit() -> f64 {
    let shape = |u: f64| mode_conductance(1.0, u);
    let peak_u = 1.0 / split_root();
    let half = 0.5 * shape(peak_u);
    let lo =
        bisect(|u| shape(u) - half, 1e-3, peak_u, 1e-15).expect("rising flank brackets half max");
    let hi =
        bisect(|u| shape(u) - half, peak_u, 1e3, 1e-15).expect("falling flank brackets half max");
    hi - lo
}

fn full_curve_fwhm(
    kappa: &impl Fn(f64) -> Result<f64>,
    t_minus: f64,
    t_plus: f64,
    grid: &[f64],
) -> Result<Option<(f64, f64)>> {
    let valley = golden_max(
        |t| -kappa(t).unwrap_or(f64::INFINITY),
        t_minus,
        t_plus,
        1e-13,
    );
    let k_valley = kappa(valley)?;
    let (k_minus, k_plus) = (kappa(t_minus)?, kappa(t_plus)?);
    if k_valley > 0.5 * k_minus.min(k_plus) {
        return Ok(None);
    }
    let (lo, hi) = (grid[0], grid[grid.len() - 1]);
    let crossing = |target: f64, a: f64, b: f64| {
        bisect(|t| kappa(t).unwrap_or(f64::NAN) - target, a, b, 1e-14 * b)
    };
    let w_minus = crossing(0.5 * k_minus, valley, t_minus)? - crossing(0.5 * k_minus, lo, t_minus)?;
    let w_plus = crossing(0.5 * k_plus, t_plus, hi)? - crossing(0.5 * k_plus, t_plus, valley)?;
    Ok(Some((w_minus, w_plus)))
}
