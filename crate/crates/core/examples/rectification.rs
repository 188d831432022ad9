//! Contrast of the single- and two-site bridges, and the rectification
//! coefficient read off the entropy production.
//!
//!     cargo run --release --example rectification

use qtm::local::{contrast, Bridge};
use qtm::local::{current_two, CurrentDirection};
use qtm::numerics::observables::{entropy_production, ratio_from_contrast, rectification};
use qtm::{ModelParams, Result, Statistics};

fn main() -> Result<()> {
    let same = ModelParams {
        gamma_left: 0.005,
        gamma_right: 0.05,
        t_left: 1.0,
        t_right: 0.2,
        ..ModelParams::default()
    };
    let hybrid = ModelParams {
        eps_right: Statistics::Fermionic,
        ..same
    };
    for (name, p) in [("bosonic baths", same), ("bosonic / fermionic", hybrid)] {
        let c1 = contrast(&p, Bridge::Single)?.contrast;
        let c2 = contrast(&p, Bridge::Two)?.contrast;
        println!(
            "{name:<22} C(1) = {c1:.10}  C(2) = {c2:.10}  |C(2) - C(1)| = {:.3e}",
            (c2 - c1).abs()
        );
    }

    let jf = current_two(&same, CurrentDirection::Forward)?;
    let js = current_two(&same, CurrentDirection::Swapped)?;
    let r = rectification(&same, jf, js)?;
    println!("\nJ-> = {jf:.6e}, J<- = {js:.6e}");
    println!(
        "entropy production: {:.6e} forward, {:.6e} swapped",
        r.pi_forward, r.pi_swapped
    );
    println!(
        "R from currents {:.12}, from entropy {:.12}, from contrast {:.12}",
        r.ratio,
        r.entropy_ratio,
        ratio_from_contrast(&same)?
    );
    println!(
        "second law: Pi = {:.3e} >= 0",
        entropy_production(&same, jf)?
    );
    Ok(())
}
