//! One-dimensional parameter sweeps evaluated in parallel and written as
//! canonical CSV.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::global::{conductance_global, contrast_global, current_global, split_curves};
use crate::local::{
    alpha_limits, conductance_single, conductance_two, contrast, current, current_two,
    differential_current, scaling_alpha, BiasMode, Bridge, CurrentDirection,
};
use crate::model::ModelParams;
use crate::numerics::observables::{
    concurrence, critical_current, entropy_production, solve_current,
};
use crate::numerics::{build_local_liouvillian, steady_state, HilbertSpec};
use crate::roots::{linear_grid, log_grid};
use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl Grid {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| {
            Err(Error::InvalidParameter {
                field: "grid",
                reason: reason.into(),
            })
        };
        if self.points < 2 {
            return bad("points must be >= 2");
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min >= self.max {
            return bad("need finite min < max");
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return bad("log spacing needs min > 0");
        }
        Ok(())
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        Ok(match self.spacing {
            Spacing::Linear => linear_grid(self.min, self.max, self.points),
            Spacing::Log => log_grid(self.min, self.max, self.points),
        })
    }
}

/// The swept variable. Overrides are applied in declaration order, so a
/// ratio sees the `gamma_right` set alongside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Omega,
    G,
    GammaLeft,
    GammaRight,
    TLeft,
    TRight,
    /// Both bath temperatures together; conductances are evaluated here.
    Temperature,
    /// `γ_L/γ_R` at fixed `γ_R`.
    GammaRatio,
    /// Bare abscissa for the peak-location curves; parameters stay fixed.
    X,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Omega => "omega",
            Axis::G => "g",
            Axis::GammaLeft => "gamma_left",
            Axis::GammaRight => "gamma_right",
            Axis::TLeft => "t_left",
            Axis::TRight => "t_right",
            Axis::Temperature => "temperature",
            Axis::GammaRatio => "gamma_ratio",
            Axis::X => "x",
        }
    }

    pub fn apply(self, params: &ModelParams, v: f64) -> ModelParams {
        let mut p = *params;
        match self {
            Axis::Omega => p.omega = v,
            Axis::G => p.g = v,
            Axis::GammaLeft => p.gamma_left = v,
            Axis::GammaRight => p.gamma_right = v,
            Axis::TLeft => p.t_left = v,
            Axis::TRight => p.t_right = v,
            Axis::Temperature => {
                p.t_left = v;
                p.t_right = v;
            }
            Axis::GammaRatio => p.gamma_left = v * p.gamma_right,
            Axis::X => {}
        }
        p
    }
}

/// A column of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// Two-site local current, closed form.
    CurrentLocal,
    /// Two-site local current from the master-equation steady state.
    CurrentNumeric,
    CurrentGlobal,
    /// Two-site local contrast.
    ContrastLocal,
    /// Single-site contrast.
    ContrastLocal1,
    ContrastGlobal,
    ConductanceLocal1,
    ConductanceLocal2,
    ConductanceGlobal,
    Alpha,
    Alpha0,
    Alpha1,
    Alpha2,
    Concurrence,
    EntropyRate,
    CriticalCurrent,
    /// `∂J/∂T_L` at fixed `T_R`.
    NdtcDerivative,
    ChainCurrent(usize),
    /// `1/x`
    SplitInverse,
    /// `coth(x)/2`
    SplitCoth,
}

const NAMES: [(&str, Quantity); 19] = [
    ("current_local", Quantity::CurrentLocal),
    ("current_numeric", Quantity::CurrentNumeric),
    ("current_global", Quantity::CurrentGlobal),
    ("contrast_local", Quantity::ContrastLocal),
    ("contrast_local_1", Quantity::ContrastLocal1),
    ("contrast_global", Quantity::ContrastGlobal),
    ("conductance_local_1", Quantity::ConductanceLocal1),
    ("conductance_local_2", Quantity::ConductanceLocal2),
    ("conductance_global", Quantity::ConductanceGlobal),
    ("alpha", Quantity::Alpha),
    ("alpha_0", Quantity::Alpha0),
    ("alpha_1", Quantity::Alpha1),
    ("alpha_2", Quantity::Alpha2),
    ("concurrence", Quantity::Concurrence),
    ("entropy_rate", Quantity::EntropyRate),
    ("critical_current", Quantity::CriticalCurrent),
    ("ndtc_derivative", Quantity::NdtcDerivative),
    ("split_inverse", Quantity::SplitInverse),
    ("split_coth", Quantity::SplitCoth),
];

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::ChainCurrent(n) => write!(f, "chain_current({n})"),
            q => {
                let name = NAMES
                    .iter()
                    .find(|(_, x)| x == q)
                    .map(|(n, _)| *n)
                    .expect("every quantity is named");
                f.write_str(name)
            }
        }
    }
}

impl FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s
            .strip_prefix("chain_current(")
            .and_then(|r| r.strip_suffix(')'))
        {
            let n = inner.trim().parse().map_err(|_| {
                Error::Parse(format!(
                    "chain_current needs an integer site count, got `{inner}`"
                ))
            })?;
            return Ok(Quantity::ChainCurrent(n));
        }
        NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, q)| *q)
            .ok_or_else(|| Error::Parse(format!("unknown quantity `{s}`")))
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quantity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Relative finite-difference step of [`Quantity::NdtcDerivative`].
const NDTC_STEP: f64 = 1e-4;

impl Quantity {
    /// Value at one parameter point; `x` is the raw axis value.
    pub fn evaluate(self, p: &ModelParams, x: f64) -> Result<f64> {
        let mean_t = 0.5 * (p.t_left + p.t_right);
        match self {
            Quantity::CurrentLocal => current_two(p, CurrentDirection::Forward),
            Quantity::CurrentNumeric => {
                let l = build_local_liouvillian(p, &HilbertSpec::for_params(p))?;
                Ok(solve_current(&l)?.1)
            }
            Quantity::CurrentGlobal => current_global(p, CurrentDirection::Forward),
            Quantity::ContrastLocal => Ok(contrast(p, Bridge::Two)?.contrast),
            Quantity::ContrastLocal1 => Ok(contrast(p, Bridge::Single)?.contrast),
            Quantity::ContrastGlobal => contrast_global(p),
            Quantity::ConductanceLocal1 => conductance_single(p, mean_t),
            Quantity::ConductanceLocal2 => conductance_two(p, mean_t),
            Quantity::ConductanceGlobal => conductance_global(p, mean_t),
            Quantity::Alpha => scaling_alpha(p),
            Quantity::Alpha0 => Ok(alpha_limits(p)?.alpha_0),
            Quantity::Alpha1 => Ok(alpha_limits(p)?.alpha_1),
            Quantity::Alpha2 => Ok(alpha_limits(p)?.alpha_2),
            Quantity::Concurrence => {
                let l = build_local_liouvillian(p, &HilbertSpec::for_params(p))?;
                concurrence(&steady_state(&l)?)
            }
            Quantity::EntropyRate => {
                entropy_production(p, current_two(p, CurrentDirection::Forward)?)
            }
            Quantity::CriticalCurrent => critical_current(p),
            Quantity::NdtcDerivative => {
                let bias = p.t_left - p.t_right;
                differential_current(
                    p,
                    bias,
                    NDTC_STEP * bias.abs().max(p.omega * 1e-3),
                    BiasMode::FixedCold,
                )
            }
            Quantity::ChainCurrent(n) => current(p, Bridge::Chain(n), CurrentDirection::Forward),
            Quantity::SplitInverse => Ok(split_curves(x).0),
            Quantity::SplitCoth => Ok(split_curves(x).1),
        }
    }
}

/// One family member: a label and parameter overrides applied on top of
/// `fixed` before the axis value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Series {
    pub label: String,
    #[serde(default)]
    pub set: BTreeMap<Axis, f64>,
    /// Replaces the spec-wide quantity list for this member.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantities: Option<Vec<Quantity>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: Axis,
    pub grid: Grid,
    pub fixed: ModelParams,
    pub quantities: Vec<Quantity>,
    /// Without series every quantity is one column.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub series: Vec<Series>,
}

/// A failed cell of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CellError {
    pub row: usize,
    pub axis: Axis,
    pub axis_value: f64,
    pub column: String,
    pub error: Error,
}

impl fmt::Display for CellError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} ({} = {:e}), column {}: {}",
            self.row,
            self.axis.name(),
            self.axis_value,
            self.column,
            self.error
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub table: Table,
    pub errors: Vec<CellError>,
}

impl SweepSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: SweepSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.quantities.is_empty() {
            return Err(Error::InvalidParameter {
                field: "quantities",
                reason: "at least one is required".into(),
            });
        }
        for s in &self.series {
            if s.quantities.as_ref().is_some_and(Vec::is_empty) {
                return Err(Error::InvalidParameter {
                    field: "series",
                    reason: format!("series `{}` lists no quantities", s.label),
                });
            }
            if s.label.is_empty() || s.label.contains(',') {
                return Err(Error::InvalidParameter {
                    field: "series",
                    reason: format!("label `{}` must be non-empty and free of commas", s.label),
                });
            }
        }
        Ok(())
    }

    /// `(column name, parameters, quantity)` per column, axis excluded.
    fn columns(&self) -> Vec<(String, ModelParams, Quantity)> {
        if self.series.is_empty() {
            return self
                .quantities
                .iter()
                .map(|q| (q.to_string(), self.fixed, *q))
                .collect();
        }
        let mut cols = Vec::new();
        for s in &self.series {
            let p = s
                .set
                .iter()
                .fold(self.fixed, |p, (axis, v)| axis.apply(&p, *v));
            for q in s.quantities.as_ref().unwrap_or(&self.quantities) {
                cols.push((format!("{q}[{}]", s.label), p, *q));
            }
        }
        cols
    }

    /// Evaluates every cell in parallel. Results do not depend on the
    /// evaluation order or on the number of worker threads.
    pub fn run(&self) -> Result<SweepOutput> {
        self.validate()?;
        let xs = self.grid.values()?;
        let cols = self.columns();
        let cells: Vec<(usize, usize)> = (0..xs.len())
            .flat_map(|i| (0..cols.len()).map(move |k| (i, k)))
            .collect();
        let values: Vec<Result<f64>> = cells
            .par_iter()
            .map(|&(i, k)| {
                let (_, base, q) = &cols[k];
                let p = self.axis.apply(base, xs[i]);
                p.validate()
                    .and_then(|_| q.evaluate(&p, xs[i]))
                    .and_then(|v| {
                        if v.is_finite() {
                            Ok(v)
                        } else {
                            Err(Error::Domain(format!("non-finite value {v}")))
                        }
                    })
            })
            .collect();

        let mut header = vec![self.axis.name().to_string()];
        header.extend(cols.iter().map(|(name, _, _)| name.clone()));
        let mut table = Table::new(header);
        let mut errors = Vec::new();
        let mut it = values.into_iter();
        for (i, &x) in xs.iter().enumerate() {
            let mut row = vec![Some(x)];
            for (name, _, _) in &cols {
                match it.next().expect("one value per cell") {
                    Ok(v) => row.push(Some(v)),
                    Err(error) => {
                        errors.push(CellError {
                            row: i,
                            axis: self.axis,
                            axis_value: x,
                            column: name.clone(),
                            error,
                        });
                        row.push(None);
                    }
                }
            }
            table.rows.push(row);
        }
        Ok(SweepOutput { table, errors })
    }
}
