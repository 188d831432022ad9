//! Seeded cross-checks of the closed forms against the master-equation
//! solver.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::global::current_global;
use crate::local::{current_single, current_two, CurrentDirection};
use crate::model::{ModelParams, Statistics};
use crate::numerics::observables::solve_current;
use crate::numerics::{
    build_chain_liouvillian, build_global_liouvillian, build_local_liouvillian, HilbertSpec,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-7;
/// Floor of the relative-error denominator.
pub const CURRENT_FLOOR: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub seed: u64,
    pub cases: usize,
    pub tolerance: f64,
    /// Append the N = 2..6 chain block.
    pub chain: bool,
    /// Replace the first case's coupling by g = 0.
    pub inject_zero_coupling: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 1,
            cases: 50,
            tolerance: DEFAULT_TOLERANCE,
            chain: false,
            inject_zero_coupling: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// Both engines produced a value.
    Compared,
    /// g = 0: the closed form is taken at its α → 0 limit and the error is
    /// measured against the scale `ω(γ_L + γ_R)`.
    ZeroCoupling,
    /// The solver found more than one stationary state.
    Degenerate,
    /// Either engine failed.
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case: usize,
    pub params: ModelParams,
    pub quantity: String,
    pub analytic_value: Option<f64>,
    pub numeric_value: Option<f64>,
    pub relative_error: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    pub category: Category,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub zero_coupling: usize,
    pub degenerate: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub options: VerifyOptions,
    pub cases: Vec<CaseRecord>,
    pub summary: Summary,
}

/// A drawn check: which quantity at which point.
#[derive(Debug, Clone, Copy)]
enum Check {
    Local,
    Global,
    Chain(usize),
}

impl Check {
    fn name(self) -> String {
        match self {
            Check::Local => "current_local".into(),
            Check::Global => "current_global".into(),
            Check::Chain(n) => format!("chain_current({n})"),
        }
    }

    fn analytic(self, p: &ModelParams) -> Result<f64> {
        match self {
            Check::Local | Check::Chain(_) => current_two(p, CurrentDirection::Forward),
            Check::Global => current_global(p, CurrentDirection::Forward),
        }
    }

    fn numeric(self, p: &ModelParams) -> Result<f64> {
        let l = match self {
            Check::Local => build_local_liouvillian(p, &HilbertSpec::for_params(p))?,
            Check::Global => build_global_liouvillian(p)?,
            Check::Chain(n) => build_chain_liouvillian(p, n)?,
        };
        Ok(solve_current(&l)?.1)
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo.ln()..hi.ln()).exp()
}

fn statistics(rng: &mut ChaCha8Rng) -> Statistics {
    if rng.gen_bool(0.5) {
        Statistics::Bosonic
    } else {
        Statistics::Fermionic
    }
}

/// Every fifth case has oscillator sites, whose truncation limits the
/// temperatures to `T ≤ 0.3ω`; every other case adds a strong-coupling
/// check with `g ∈ [0.1, 0.9]ω`.
fn draw(rng: &mut ChaCha8Rng, case: usize) -> Vec<(Check, ModelParams)> {
    let oscillator = case % 5 == 4;
    let t_max = if oscillator { 0.3 } else { 1e2 };
    let local = ModelParams {
        omega: 1.0,
        g: log_uniform(rng, 1e-3, 1e-1),
        gamma_left: log_uniform(rng, 1e-3, 1e-1),
        gamma_right: log_uniform(rng, 1e-3, 1e-1),
        t_left: log_uniform(rng, 1e-2, t_max),
        t_right: log_uniform(rng, 1e-2, t_max),
        eps_left: statistics(rng),
        eps_right: statistics(rng),
        eps_sub: if oscillator {
            Statistics::Bosonic
        } else {
            Statistics::Fermionic
        },
    };
    let mut out = vec![(Check::Local, local)];
    if case.is_multiple_of(2) {
        let global = ModelParams {
            g: rng.gen_range(0.1..0.9),
            eps_left: Statistics::Bosonic,
            eps_right: Statistics::Bosonic,
            eps_sub: Statistics::Fermionic,
            ..local
        };
        out.push((Check::Global, global));
    }
    out
}

/// Parameter point of the chain block.
pub fn chain_params() -> ModelParams {
    ModelParams {
        g: 0.02,
        t_left: 1.2,
        t_right: 0.3,
        ..ModelParams::default()
    }
}

fn evaluate(case: usize, check: Check, p: &ModelParams, tol: f64) -> CaseRecord {
    let mut rec = CaseRecord {
        case,
        params: *p,
        quantity: check.name(),
        analytic_value: None,
        numeric_value: None,
        relative_error: None,
        tolerance: tol,
        pass: false,
        category: Category::Compared,
        note: None,
    };
    let (analytic, scale) = match check.analytic(p) {
        Ok(a) => (a, a.abs().max(CURRENT_FLOOR)),
        Err(Error::ZeroCoupling { alpha_limit }) => {
            rec.category = Category::ZeroCoupling;
            rec.note = Some(format!(
                "g = 0: scaling factor replaced by its limit {alpha_limit}"
            ));
            let j1 = current_single(p, CurrentDirection::Forward);
            match j1 {
                Ok(j1) => (alpha_limit * j1, p.omega * (p.gamma_left + p.gamma_right)),
                Err(e) => return failed(rec, e),
            }
        }
        Err(e) => return failed(rec, e),
    };
    rec.analytic_value = Some(analytic);
    let numeric = match check.numeric(p) {
        Ok(n) => n,
        Err(e) => return failed(rec, e),
    };
    rec.numeric_value = Some(numeric);
    let err = (numeric - analytic).abs() / scale;
    rec.relative_error = Some(err);
    rec.pass = err <= tol;
    rec
}

fn failed(mut rec: CaseRecord, e: Error) -> CaseRecord {
    if matches!(e, Error::DegenerateSteadyState(_)) {
        rec.category = Category::Degenerate;
    } else if rec.category != Category::ZeroCoupling {
        rec.category = Category::Error;
    }
    rec.note = Some(e.to_string());
    rec.pass = false;
    rec
}

pub fn run(opts: &VerifyOptions) -> Result<VerificationReport> {
    if opts.cases == 0 {
        return Err(Error::InvalidParameter {
            field: "cases",
            reason: "must be >= 1".into(),
        });
    }
    if !(opts.tolerance > 0.0) {
        return Err(Error::InvalidParameter {
            field: "tolerance",
            reason: "must be > 0".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut jobs: Vec<(usize, Check, ModelParams)> = Vec::new();
    for case in 0..opts.cases {
        for (check, mut p) in draw(&mut rng, case) {
            if opts.inject_zero_coupling && case == 0 && matches!(check, Check::Local) {
                p.g = 0.0;
            }
            jobs.push((case, check, p));
        }
    }
    if opts.chain {
        let p = chain_params();
        jobs.extend((2..=6).map(|n| (opts.cases, Check::Chain(n), p)));
    }
    let cases: Vec<CaseRecord> = jobs
        .par_iter()
        .map(|(case, check, p)| evaluate(*case, *check, p, opts.tolerance))
        .collect();

    let mut summary = Summary {
        total: cases.len(),
        ..Summary::default()
    };
    for c in &cases {
        if c.pass {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        match c.category {
            Category::ZeroCoupling => summary.zero_coupling += 1,
            Category::Degenerate => summary.degenerate += 1,
            Category::Error => summary.errors += 1,
            Category::Compared => {}
        }
    }
    Ok(VerificationReport {
        options: *opts,
        cases,
        summary,
    })
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Fixed-width table, one line per check, then the summary.
    pub fn to_table(&self) -> String {
        let cell = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.6e}"));
        let mut s = String::new();
        let ok = "writing to a String cannot fail";
        writeln!(
            s,
            "{:>5}  {:<18} {:>14} {:>14} {:>12}  {:<6} category",
            "case", "quantity", "analytic", "numeric", "rel.err", "result"
        )
        .expect(ok);
        for c in &self.cases {
            writeln!(
                s,
                "{:>5}  {:<18} {:>14} {:>14} {:>12}  {:<6} {}{}",
                c.case,
                c.quantity,
                cell(c.analytic_value),
                cell(c.numeric_value),
                c.relative_error
                    .map_or_else(|| "-".to_string(), |x| format!("{x:.2e}")),
                if c.pass { "PASS" } else { "FAIL" },
                serde_json::to_value(c.category)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default(),
                c.note
                    .as_deref()
                    .map(|n| format!(" ({n})"))
                    .unwrap_or_default(),
            )
            .expect(ok);
        }
        let m = &self.summary;
        writeln!(
            s,
            "{} checks: {} passed, {} failed ({} zero-coupling, {} degenerate, {} errors)",
            m.total, m.passed, m.failed, m.zero_coupling, m.degenerate, m.errors
        )
        .expect(ok);
        s
    }
}
