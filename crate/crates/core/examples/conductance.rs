//! Linear thermal conductance: the single Schottky-type peak of weakly
//! coupled sites and the two split peaks of strongly coupled ones.
//!
//!     cargo run --release --example conductance

use qtm::global::{conductance_peaks, split_root, EigenmodePair};
use qtm::local::{conductance_peak_estimate, conductance_single, conductance_two};
use qtm::roots::golden_max;
use qtm::{ModelParams, Result};

fn main() -> Result<()> {
    let weak = ModelParams::default();
    let kappa2 = |t: f64| conductance_two(&weak, t).unwrap_or(f64::NAN);
    let t_peak = golden_max(kappa2, 0.05, 5.0, 1e-12);
    let (k1_est, k2_est) = conductance_peak_estimate(&weak)?;
    println!("weak coupling (g = {})", weak.g);
    println!(
        "  kappa(1) at T = 0.5: {:.6e}   estimate {k1_est:.6e}",
        conductance_single(&weak, 0.5)?
    );
    println!(
        "  kappa(2) peaks at T = {t_peak:.5} with {:.6e}   estimate {k2_est:.6e}",
        kappa2(t_peak)
    );

    println!("\nstrong coupling, x* = {:.6}", split_root());
    for g in [0.7, 0.8, 0.9] {
        let p = ModelParams { g, ..weak };
        let modes = EigenmodePair::from_params(&p)?;
        let peaks = conductance_peaks(&p)?;
        println!(
            "  g = {g}: peaks at T = {:.5}, {:.5}   omega/x* = {:.5}, {:.5}   mode FWHM {:.4}, {:.4}",
            peaks.t_minus, peaks.t_plus, peaks.approx_minus, peaks.approx_plus, peaks.fwhm_minus, peaks.fwhm_plus
        );
        println!(
            "          splitting {:.5} (2g = {:.2})",
            peaks.t_plus - peaks.t_minus,
            modes.omega_plus - modes.omega_minus
        );
    }
    Ok(())
}
