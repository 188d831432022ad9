//! Local versus global master equations for two qubits between bosonic
//! baths: currents, equilibrium behaviour and rectification.
//!
//!     cargo run --release --example strong_coupling

use qtm::global::{contrast_global, current_global};
use qtm::local::{contrast_bosonic_qubits, current_two, CurrentDirection};
use qtm::numerics::{
    build_global_liouvillian, build_local_liouvillian, observables, steady_state, DensityMatrix,
    HilbertSpec,
};
use qtm::{ModelParams, Result};

fn main() -> Result<()> {
    for g in [0.01, 0.1, 0.5, 0.8] {
        let p = ModelParams {
            g,
            ..ModelParams::default()
        };
        let (_, jg) = observables::solve_current(&build_global_liouvillian(&p)?)?;
        println!(
            "g = {g:<4}  local {:.6e}   global {:.6e} (closed form {:.6e})",
            current_two(&p, CurrentDirection::Forward)?,
            jg,
            current_global(&p, CurrentDirection::Forward)?
        );
    }

    let eq = ModelParams {
        g: 0.5,
        t_left: 0.7,
        t_right: 0.7,
        ..ModelParams::default()
    };
    let global = build_global_liouvillian(&eq)?;
    let gibbs = DensityMatrix::gibbs(global.hamiltonian(), eq.t_left)?;
    let local = steady_state(&build_local_liouvillian(&eq, &HilbertSpec::qubits(2))?)?;
    println!("\nequal temperatures, g = 0.5: distance to Gibbs state");
    println!(
        "  global {:.2e}   local {:.2e}",
        steady_state(&global)?.trace_distance(&gibbs),
        local.trace_distance(&gibbs)
    );

    println!("\ncontrast with T_R = 0, g = 0.8, gamma_L/gamma_R = 0.5");
    for t in [0.1, 0.5, 1.0, 5.0, 50.0] {
        let p = ModelParams {
            g: 0.8,
            t_left: t,
            t_right: 0.0,
            ..ModelParams::default()
        };
        println!(
            "  T_L = {t:<4}  global {:.6}  single site {:.6}",
            contrast_global(&p)?,
            contrast_bosonic_qubits(&p)?
        );
    }
    Ok(())
}
