//! Everything known about a single parameter point, from both engines.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::global::{contrast_global_swap, current_global};
use crate::local::{
    contrast, current_single, current_two, scaling_alpha, Bridge, CurrentDirection,
};
use crate::model::ModelParams;
use crate::numerics::build_global_liouvillian;
use crate::numerics::observables::{solve_current, TransportReport};

/// Closed-form values of the local machine. Entries that are undefined at
/// this point are left out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticReport {
    pub current_single: f64,
    pub current_two: f64,
    pub alpha: Option<f64>,
    pub contrast: Option<f64>,
    pub contrast_single: Option<f64>,
}

/// Strong-coupling values, present for qubits between bosonic baths with
/// `g < ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalReport {
    pub current_analytic: f64,
    pub current_numeric: f64,
    pub contrast: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub params: ModelParams,
    pub local: TransportReport,
    pub analytic: AnalyticReport,
    pub global: Option<GlobalReport>,
}

impl PointReport {
    pub fn compute(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        let analytic = AnalyticReport {
            current_single: current_single(params, CurrentDirection::Forward)?,
            current_two: current_two(params, CurrentDirection::Forward)?,
            alpha: scaling_alpha(params).ok(),
            contrast: contrast(params, Bridge::Two).ok().map(|c| c.contrast),
            contrast_single: contrast(params, Bridge::Single).ok().map(|c| c.contrast),
        };
        let global = if params.is_bosonic_qubit() && params.g < params.omega {
            let (_, numeric) = solve_current(&build_global_liouvillian(params)?)?;
            Some(GlobalReport {
                current_analytic: current_global(params, CurrentDirection::Forward)?,
                current_numeric: numeric,
                contrast: contrast_global_swap(params).ok(),
            })
        } else {
            None
        };
        Ok(PointReport {
            params: *params,
            local: TransportReport::local(params)?,
            analytic,
            global,
        })
    }
}
