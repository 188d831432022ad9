//! Physical parameters, exchange statistics, thermal occupations and the
//! dissipation rates shared by both engines.
//!
//! Natural units throughout: ħ = k_B = 1, energies and temperatures in the
//! same units as the site frequency `omega`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exchange statistics of a bath or of the subsystems.
///
/// `Bosonic` is ε = +1 (harmonic oscillators), `Fermionic` is ε = −1
/// (two-level systems). Serialized as the integer ε.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Statistics {
    Bosonic,
    Fermionic,
}

impl Statistics {
    pub fn epsilon(self) -> f64 {
        match self {
            Statistics::Bosonic => 1.0,
            Statistics::Fermionic => -1.0,
        }
    }

    pub fn from_epsilon(eps: i64) -> Result<Self> {
        match eps {
            1 => Ok(Statistics::Bosonic),
            -1 => Ok(Statistics::Fermionic),
            other => Err(Error::Parse(format!(
                "statistics must be +1 or -1, got {other}"
            ))),
        }
    }
}

impl TryFrom<i64> for Statistics {
    type Error = String;

    fn try_from(v: i64) -> std::result::Result<Self, String> {
        Statistics::from_epsilon(v).map_err(|e| e.to_string())
    }
}

impl From<Statistics> for i64 {
    fn from(s: Statistics) -> i64 {
        match s {
            Statistics::Bosonic => 1,
            Statistics::Fermionic => -1,
        }
    }
}

/// Which side of the machine a bath or heat flow belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// All physical parameters of the machine.
///
/// A single `omega` serves both sites and both baths (resonant machine).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct ModelParams {
    pub omega: f64,
    pub g: f64,
    pub gamma_left: f64,
    pub gamma_right: f64,
    pub t_left: f64,
    pub t_right: f64,
    pub eps_left: Statistics,
    pub eps_right: Statistics,
    pub eps_sub: Statistics,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    omega: f64,
    g: f64,
    gamma_left: f64,
    gamma_right: f64,
    t_left: f64,
    t_right: f64,
    eps_left: Statistics,
    eps_right: Statistics,
    eps_sub: Statistics,
}

impl TryFrom<RawParams> for ModelParams {
    type Error = String;

    fn try_from(r: RawParams) -> std::result::Result<Self, String> {
        let p = ModelParams {
            omega: r.omega,
            g: r.g,
            gamma_left: r.gamma_left,
            gamma_right: r.gamma_right,
            t_left: r.t_left,
            t_right: r.t_right,
            eps_left: r.eps_left,
            eps_right: r.eps_right,
            eps_sub: r.eps_sub,
        };
        p.validate().map_err(|e| e.to_string())?;
        Ok(p)
    }
}

impl Default for ModelParams {
    /// Two qubits between bosonic baths with the conductance-figure couplings.
    fn default() -> Self {
        ModelParams {
            omega: 1.0,
            g: 0.01,
            gamma_left: 0.01,
            gamma_right: 0.02,
            t_left: 1.0,
            t_right: 0.5,
            eps_left: Statistics::Bosonic,
            eps_right: Statistics::Bosonic,
            eps_sub: Statistics::Fermionic,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, field: &'static str, reason: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    field,
                    reason: reason.to_string(),
                })
            }
        }
        check(
            self.omega.is_finite() && self.omega > 0.0,
            "omega",
            "must be finite and > 0",
        )?;
        check(
            self.g.is_finite() && self.g >= 0.0,
            "g",
            "must be finite and >= 0",
        )?;
        check(
            self.gamma_left.is_finite() && self.gamma_left > 0.0,
            "gamma_left",
            "must be finite and > 0",
        )?;
        check(
            self.gamma_right.is_finite() && self.gamma_right > 0.0,
            "gamma_right",
            "must be finite and > 0",
        )?;
        check(
            self.t_left.is_finite() && self.t_left >= 0.0,
            "t_left",
            "must be finite and >= 0",
        )?;
        check(
            self.t_right.is_finite() && self.t_right >= 0.0,
            "t_right",
            "must be finite and >= 0",
        )?;
        Ok(())
    }

    /// Same machine with the two bath temperatures exchanged. Couplings and
    /// statistics stay attached to their sides.
    pub fn swapped(&self) -> Self {
        ModelParams {
            t_left: self.t_right,
            t_right: self.t_left,
            ..*self
        }
    }

    pub fn with_temperatures(&self, t_left: f64, t_right: f64) -> Self {
        ModelParams {
            t_left,
            t_right,
            ..*self
        }
    }

    pub fn temperature(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.t_left,
            Side::Right => self.t_right,
        }
    }

    pub fn gamma(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.gamma_left,
            Side::Right => self.gamma_right,
        }
    }

    pub fn bath_statistics(&self, side: Side) -> Statistics {
        match side {
            Side::Left => self.eps_left,
            Side::Right => self.eps_right,
        }
    }

    /// Qubit sites coupled to two bosonic baths, the setting of the chain,
    /// conductance and strong-coupling results.
    pub fn is_bosonic_qubit(&self) -> bool {
        self.eps_left == Statistics::Bosonic
            && self.eps_right == Statistics::Bosonic
            && self.eps_sub == Statistics::Fermionic
    }

    pub(crate) fn require_bosonic_qubit(&self, what: &str) -> Result<()> {
        if self.is_bosonic_qubit() {
            Ok(())
        } else {
            Err(Error::UnsupportedStatistics(format!(
                "{what} requires bosonic baths (eps = +1) and qubit sites (eps_sub = -1)"
            )))
        }
    }

    /// `γ_Lγ_R/4g²`, the combination controlling the scaling factor.
    pub(crate) fn coupling_ratio(&self) -> Result<f64> {
        if self.g == 0.0 {
            return Err(Error::ZeroCoupling { alpha_limit: 0.0 });
        }
        Ok(self.gamma_left * self.gamma_right / (4.0 * self.g * self.g))
    }
}

/// Beyond this ω/T the Bose occupation underflows and is returned as 0.
const LARGE_RATIO: f64 = 700.0;

/// Mean excitation number `1/(exp(ω/T) − ε)` of a thermal mode.
///
/// `T = 0` is exact and returns 0.
pub fn occupation(eps: Statistics, omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!(
            "occupation needs omega > 0, got {omega}"
        )));
    }
    if !(temperature >= 0.0) || temperature.is_nan() {
        return Err(Error::Domain(format!(
            "occupation needs T >= 0, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = omega / temperature;
    Ok(match eps {
        Statistics::Bosonic if x > LARGE_RATIO => 0.0,
        Statistics::Bosonic => 1.0 / x.exp_m1(),
        Statistics::Fermionic if x > LARGE_RATIO => (-x).exp(),
        Statistics::Fermionic => 1.0 / (x.exp() + 1.0),
    })
}

/// `coth(ω/2T)`, equal to 1 at T = 0 and to `1 + 2 n_B` otherwise.
pub fn coth_half(omega: f64, temperature: f64) -> f64 {
    if temperature == 0.0 {
        return 1.0;
    }
    let x = omega / temperature;
    if x > LARGE_RATIO {
        1.0
    } else {
        1.0 + 2.0 / x.exp_m1()
    }
}

/// `tanh(ω/2T)`.
pub fn tanh_half(omega: f64, temperature: f64) -> f64 {
    1.0 / coth_half(omega, temperature)
}

/// Hyperbolic cosecant for x > 0, free of overflow at large x.
pub fn csch(x: f64) -> f64 {
    let e = (-x).exp();
    2.0 * e / (-(-2.0 * x).exp_m1())
}

/// `coth(x)` for x > 0.
pub fn coth(x: f64) -> f64 {
    if x > 20.0 {
        1.0 + 2.0 * (-2.0 * x).exp()
    } else {
        1.0 + 2.0 / (2.0 * x).exp_m1()
    }
}

/// Dissipation rates γ_λ^± of both baths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateSet {
    pub gamma_plus_left: f64,
    pub gamma_minus_left: f64,
    pub gamma_plus_right: f64,
    pub gamma_minus_right: f64,
    pub big_gamma_left: f64,
    pub big_gamma_right: f64,
    pub big_gamma: f64,
}

impl RateSet {
    /// `(γ^+, γ^−)` of one bath.
    pub fn side(&self, side: Side) -> (f64, f64) {
        match side {
            Side::Left => (self.gamma_plus_left, self.gamma_minus_left),
            Side::Right => (self.gamma_plus_right, self.gamma_minus_right),
        }
    }
}

/// Rates at frequency `omega` of a bath with the given coupling, temperature
/// and statistics: `γ^+ = γ n`, `γ^− = γ (1 + ε n)`.
pub fn bath_rates(eps: Statistics, gamma: f64, omega: f64, temperature: f64) -> Result<(f64, f64)> {
    let n = occupation(eps, omega, temperature)?;
    Ok((gamma * n, gamma * (1.0 + eps.epsilon() * n)))
}

/// Detailed-balance rates of both baths at the site frequency.
pub fn rates(params: &ModelParams) -> Result<RateSet> {
    params.validate()?;
    let (gpl, gml) = bath_rates(
        params.eps_left,
        params.gamma_left,
        params.omega,
        params.t_left,
    )?;
    let (gpr, gmr) = bath_rates(
        params.eps_right,
        params.gamma_right,
        params.omega,
        params.t_right,
    )?;
    Ok(RateSet {
        gamma_plus_left: gpl,
        gamma_minus_left: gml,
        gamma_plus_right: gpr,
        gamma_minus_right: gmr,
        big_gamma_left: gml + gpl,
        big_gamma_right: gmr + gpr,
        big_gamma: gpl + gpr + gml + gmr,
    })
}
