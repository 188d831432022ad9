//! Boundary-driven qubit chains carry the same current at every length.
//!
//!     cargo run --release --example chain

use std::time::Instant;

use qtm::local::{current, Bridge, CurrentDirection};
use qtm::numerics::{build_chain_liouvillian, observables};
use qtm::{ModelParams, Result};

fn main() -> Result<()> {
    let p = ModelParams {
        g: 0.02,
        t_left: 1.2,
        t_right: 0.3,
        ..ModelParams::default()
    };
    let closed = current(&p, Bridge::Chain(2), CurrentDirection::Forward)?;
    println!("closed form: {closed:.12e}");
    for n in 2..=6 {
        let start = Instant::now();
        let (_, j) = observables::solve_current(&build_chain_liouvillian(&p, n)?)?;
        println!(
            "N = {n}: J = {j:.12e}  rel. dev {:.1e}  ({:.2?})",
            (j - closed).abs() / closed,
            start.elapsed()
        );
    }
    Ok(())
}
