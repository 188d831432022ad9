//! Steady-state heat current through one and two resonant sites, from the
//! closed forms and from the master-equation steady state.
//!
//!     cargo run --release --example heat_current

use qtm::local::{current_single, current_two, scaling_alpha, CurrentDirection};
use qtm::numerics::{build_local_liouvillian, observables, HilbertSpec};
use qtm::{ModelParams, Result, Statistics};

fn main() -> Result<()> {
    let cases = [
        ("qubits, bosonic baths", ModelParams::default()),
        (
            "qubits, fermionic hot bath",
            ModelParams {
                eps_left: Statistics::Fermionic,
                ..ModelParams::default()
            },
        ),
        (
            "oscillators, bosonic baths",
            ModelParams {
                eps_sub: Statistics::Bosonic,
                t_left: 0.3,
                t_right: 0.15,
                ..ModelParams::default()
            },
        ),
    ];
    println!(
        "{:<28} {:>13} {:>13} {:>8} {:>13} {:>9}",
        "machine", "J(1)", "J(2)", "alpha", "J numeric", "rel.err"
    );
    for (name, p) in cases {
        let j1 = current_single(&p, CurrentDirection::Forward)?;
        let j2 = current_two(&p, CurrentDirection::Forward)?;
        let spec = HilbertSpec::for_params(&p);
        let (rho, jn) = observables::solve_current(&build_local_liouvillian(&p, &spec)?)?;
        println!(
            "{name:<28} {j1:>13.6e} {j2:>13.6e} {:>8.5} {jn:>13.6e} {:>9.1e}",
            scaling_alpha(&p)?,
            ((jn - j2) / j2).abs()
        );
        let coh = observables::coherence(&rho)?;
        println!(
            "{:<28} coherence = {:.6e} i (dim {})",
            "",
            coh.im,
            rho.dim()
        );
    }
    Ok(())
}
