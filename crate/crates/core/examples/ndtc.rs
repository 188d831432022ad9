//! Negative differential thermal conductance: with the cold bath at zero
//! temperature, the two-site current eventually falls as the hot bath heats.
//!
//!     cargo run --release --example ndtc

use qtm::local::{current_two, differential_current, ndtc_threshold, BiasMode, CurrentDirection};
use qtm::roots::{bisect, log_grid};
use qtm::{ModelParams, Result};

fn main() -> Result<()> {
    let p = ModelParams {
        t_right: 1e-9,
        ..ModelParams::default()
    };
    let slope =
        |t_left: f64| differential_current(&p, t_left - p.t_right, 1e-5, BiasMode::FixedCold);
    for t in log_grid(0.25, 16.0, 7) {
        let q = p.with_temperatures(t, p.t_right);
        println!(
            "T_L = {t:>7.3}   J = {:.6e}   dJ/dT_L = {:+.4e}",
            current_two(&q, CurrentDirection::Forward)?,
            slope(t)?
        );
    }
    let t_star = bisect(|t| slope(t).unwrap_or(f64::NAN), 0.5, 10.0, 1e-10)?;
    println!(
        "\nslope changes sign at T_L = {t_star:.6}; closed-form threshold {:.6}",
        ndtc_threshold(&p)?
    );
    Ok(())
}
