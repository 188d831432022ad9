//! Closed moment equations: stationary values in closed form, by direct
//! integration, and from the full density matrix.
//!
//!     cargo run --release --example moments

use qtm::numerics::moments::{
    current_from_moments, moments_closed_form, moments_integrated, OdeOptions,
};
use qtm::numerics::{build_local_liouvillian, observables, steady_state, HilbertSpec};
use qtm::{ModelParams, Result, Statistics};

fn main() -> Result<()> {
    let p = ModelParams {
        eps_right: Statistics::Fermionic,
        g: 0.02,
        ..ModelParams::default()
    };
    let closed = moments_closed_form(&p)?;
    let ode = moments_integrated(&p, &OdeOptions::default())?;
    let spec = HilbertSpec::qubits(2);
    let rho = steady_state(&build_local_liouvillian(&p, &spec)?)?;
    println!(
        "closed form  n1 = {:.12}  n2 = {:.12}  z = {:.12}i",
        closed.n1, closed.n2, closed.z.im
    );
    println!(
        "integrated   n1 = {:.12}  n2 = {:.12}  z = {:.12}i  (t = {:.1}, {} steps)",
        ode.moments.n1, ode.moments.n2, ode.moments.z.im, ode.time, ode.steps
    );
    println!(
        "density      n1 = {:.12}  n2 = {:.12}  z = {:.12}i",
        rho.expect(&spec.number(0)).re,
        rho.expect(&spec.number(1)).re,
        observables::hopping_expectation(&rho)?.im
    );
    println!(
        "current from moments {:.12e}",
        current_from_moments(&p, &closed)?
    );
    Ok(())
}
