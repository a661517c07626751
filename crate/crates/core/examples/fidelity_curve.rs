//! Run one search, print the report and write the fidelity curve as CSV and SVG.

use tailwalk::experiments::{search_run, Placement};
use tailwalk::svg::{render_svg, Plot};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 256;
    let run = search_run(n, n as f64, Placement::CliqueVertex)?;
    println!("{}", run.report.to_json());

    let dir = std::env::temp_dir();
    std::fs::write(dir.join("tailwalk_fidelity.csv"), run.curve.to_csv())?;
    let svg = render_svg(Plot::Curve { curve: &run.curve, predicted: Some(run.report.predicted_t) });
    std::fs::write(dir.join("tailwalk_fidelity.svg"), svg)?;
    println!("curve written to {}", dir.join("tailwalk_fidelity.{csv,svg}").display());
    Ok(())
}
