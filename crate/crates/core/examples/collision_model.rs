//! Repeated collisions with fresh thermal ancillas converge to the local
//! master equation as the collision time shrinks.
//!
//!     cargo run --release --example collision_model

use qtm::numerics::{
    build_local_liouvillian, collision_simulate, observables, CollisionModel, HilbertSpec,
};
use qtm::{ModelParams, Result};

fn main() -> Result<()> {
    let p = ModelParams::default();
    let (_, j_lme) =
        observables::solve_current(&build_local_liouvillian(&p, &HilbertSpec::qubits(2))?)?;
    println!("master equation: J = {j_lme:.10e}");
    let mut previous: Option<f64> = None;
    for tau in [0.4, 0.2, 0.1, 0.05] {
        let model = CollisionModel::new(&p, tau)?;
        let err = (model.steady_current()? - j_lme).abs();
        let ratio = previous
            .map(|e| format!("{:.3}", e / err))
            .unwrap_or_default();
        println!("tau = {tau:<5} |J - J_lme| = {err:.4e}  {ratio}");
        previous = Some(err);
    }

    let traj = collision_simulate(&p, 0.1, 20_000, &HilbertSpec::qubits(2))?;
    let model = CollisionModel::new(&p, 0.1)?;
    let last = traj.last().expect("trajectory is never empty");
    println!(
        "\nafter {} collisions: J = {:.10e}",
        traj.len() - 1,
        model.current(last)?
    );
    Ok(())
}
