//! Closed equations of motion for `⟨s₁†s₁⟩`, `⟨s₂†s₂⟩` and `⟨s₁s₂†⟩` under
//! the local master equation, solved in closed form and by integration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{occupation, rates, ModelParams, RateSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    /// `⟨s₁†s₁⟩`
    pub n1: f64,
    /// `⟨s₂†s₂⟩`
    pub n2: f64,
    /// `⟨s₁s₂†⟩`
    pub z: Complex64,
}

impl Moments {
    pub const ZERO: Moments = Moments {
        n1: 0.0,
        n2: 0.0,
        z: Complex64::new(0.0, 0.0),
    };

    fn axpy(&self, h: f64, d: &Moments) -> Moments {
        Moments {
            n1: self.n1 + h * d.n1,
            n2: self.n2 + h * d.n2,
            z: self.z + d.z * h,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.n1.abs().max(self.n2.abs()).max(self.z.norm())
    }

    pub fn max_diff(&self, other: &Moments) -> f64 {
        (self.n1 - other.n1)
            .abs()
            .max((self.n2 - other.n2).abs())
            .max((self.z - other.z).norm())
    }
}

struct Coefficients {
    r: RateSet,
    eps_a: f64,
    g: f64,
}

impl Coefficients {
    fn new(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        Ok(Coefficients {
            r: rates(params)?,
            eps_a: params.eps_sub.epsilon(),
            g: params.g,
        })
    }

    /// `γ^− − ε_a γ^+` of each bath, the relaxation rate of its site.
    fn relax(&self) -> (f64, f64) {
        let r = &self.r;
        (
            r.gamma_minus_left - self.eps_a * r.gamma_plus_left,
            r.gamma_minus_right - self.eps_a * r.gamma_plus_right,
        )
    }

    fn derivative(&self, m: &Moments) -> Moments {
        let r = &self.r;
        let (kl, kr) = self.relax();
        let i = Complex64::new(0.0, 1.0);
        let flow = (i * self.g * (m.z - m.z.conj())).re;
        Moments {
            n1: -kl * m.n1 + r.gamma_plus_left + flow,
            n2: -kr * m.n2 + r.gamma_plus_right - flow,
            z: i * self.g * (m.n1 - m.n2) - m.z * (0.5 * (kl + kr)),
        }
    }
}

/// Stationary moments from the closed-form solution of the linear system.
pub fn moments_closed_form(params: &ModelParams) -> Result<Moments> {
    let k = Coefficients::new(params)?;
    let r = &k.r;
    let (kl, kr) = k.relax();
    let g2 = 4.0 * k.g * k.g;
    let sum_plus = r.gamma_plus_left + r.gamma_plus_right;
    let total = kl + kr;
    let den = (g2 + kl * kr) * total;
    if !(den.abs() > 0.0) {
        return Err(Error::DivergentDenominator { denominator: den });
    }
    Ok(Moments {
        n1: (g2 * sum_plus + r.gamma_plus_left * kr * total) / den,
        n2: (g2 * sum_plus + r.gamma_plus_right * kl * total) / den,
        z: Complex64::new(
            0.0,
            2.0 * k.g
                * (r.gamma_plus_left * r.gamma_minus_right
                    - r.gamma_minus_left * r.gamma_plus_right)
                / den,
        ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeOptions {
    /// Stop once every component of the time derivative is below this.
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            tol: 1e-12,
            max_steps: 10_000_000,
        }
    }
}

/// Result of integrating the moment equations from zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeSolution {
    pub moments: Moments,
    pub time: f64,
    pub steps: usize,
}

/// Integrates the moment equations with classical RK4 from all moments zero
/// until the largest derivative drops below `opts.tol`.
pub fn moments_integrated(params: &ModelParams, opts: &OdeOptions) -> Result<OdeSolution> {
    let k = Coefficients::new(params)?;
    let (kl, kr) = k.relax();
    if kl <= 0.0 || kr <= 0.0 {
        return Err(Error::NonConvergence(format!(
            "moment equations do not relax (rates {kl:e}, {kr:e})"
        )));
    }
    let fastest = kl.max(kr) + 2.0 * k.g;
    let dt = 0.5 / fastest;
    let mut m = Moments::ZERO;
    for step in 0..opts.max_steps {
        let k1 = k.derivative(&m);
        if k1.max_abs() < opts.tol {
            return Ok(OdeSolution {
                moments: m,
                time: step as f64 * dt,
                steps: step,
            });
        }
        let k2 = k.derivative(&m.axpy(0.5 * dt, &k1));
        let k3 = k.derivative(&m.axpy(0.5 * dt, &k2));
        let k4 = k.derivative(&m.axpy(dt, &k3));
        m = Moments {
            n1: m.n1 + dt / 6.0 * (k1.n1 + 2.0 * k2.n1 + 2.0 * k3.n1 + k4.n1),
            n2: m.n2 + dt / 6.0 * (k1.n2 + 2.0 * k2.n2 + 2.0 * k3.n2 + k4.n2),
            z: m.z + (k1.z + k2.z * 2.0 + k3.z * 2.0 + k4.z) * (dt / 6.0),
        };
    }
    Err(Error::NonConvergence(format!(
        "moment integration did not settle within {} steps",
        opts.max_steps
    )))
}

/// Heat current `2ωγ_L(n_L − [1 + (ε_L − ε_a) n_L] ⟨s₁†s₁⟩)` implied by the
/// left-site occupation.
pub fn current_from_moments(params: &ModelParams, m: &Moments) -> Result<f64> {
    let nl = occupation(params.eps_left, params.omega, params.t_left)?;
    let factor = 1.0 + (params.eps_left.epsilon() - params.eps_sub.epsilon()) * nl;
    Ok(2.0 * params.omega * params.gamma_left * (nl - factor * m.n1))
}
