//! Runs a sweep spec from `figures/`, writes the CSV and an SVG next to it.
//!
//!     cargo run --release --example figure_sweep -- figures/fig5.json /tmp/fig5

use std::path::PathBuf;

use qtm::plot::{render, PlotOptions};
use qtm::sweep::SweepSpec;
use qtm::Result;

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let spec_path = args.next().map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../figures/fig2.json")
    });
    let stem = args
        .next()
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("qtm-sweep"));

    let spec = SweepSpec::from_json(&std::fs::read_to_string(&spec_path)?)?;
    let out = spec.run()?;
    for e in &out.errors {
        eprintln!("{e}");
    }
    let csv = stem.with_extension("csv");
    let svg = stem.with_extension("svg");
    out.table.write(&csv)?;
    std::fs::write(&svg, render(&out.table, &PlotOptions::default())?)?;
    println!(
        "{} rows x {} columns -> {} and {}",
        out.table.rows.len(),
        out.table.columns(),
        csv.display(),
        svg.display()
    );
    Ok(())
}
