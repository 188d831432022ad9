//! Steady-state entanglement appears once the current exceeds a critical
//! value, even when the machine does not rectify at all.
//!
//!     cargo run --release --example entanglement

use qtm::local::{contrast, Bridge};
use qtm::numerics::{build_local_liouvillian, observables, steady_state, HilbertSpec};
use qtm::{ModelParams, Result, Statistics};

fn main() -> Result<()> {
    let base = ModelParams {
        gamma_left: 0.05,
        gamma_right: 0.05,
        t_right: 0.0,
        eps_left: Statistics::Fermionic,
        eps_right: Statistics::Fermionic,
        ..ModelParams::default()
    };
    println!(
        "{:>6} {:>7} {:>12} {:>12} {:>11} {:>9}",
        "g", "T_L", "J", "J_c", "concurrence", "contrast"
    );
    for g in [0.002, 0.01, 0.05] {
        for t in [0.5, 2.0, 20.0] {
            let p = ModelParams {
                g,
                t_left: t,
                ..base
            };
            let l = build_local_liouvillian(&p, &HilbertSpec::qubits(2))?;
            let rho = steady_state(&l)?;
            let j = observables::current(&rho, &l)?;
            println!(
                "{g:>6} {t:>7} {j:>12.4e} {:>12.4e} {:>11.4e} {:>9.1e}",
                observables::critical_current(&p)?,
                observables::concurrence(&rho)?,
                contrast(&p, Bridge::Two)?.contrast
            );
        }
    }
    Ok(())
}
