//! Sweep the clique order and print the trend table as CSV.
//!
//! Set TAILWALK_THREADS to cap the worker count.

use tailwalk::experiments::{sweep, GammaRule, Placement};

fn main() -> tailwalk::Result<()> {
    let table = sweep(&[16, 64, 256, 1024], GammaRule::OrderPlus(0.0), Placement::CliqueVertex)?;
    print!("{}", table.to_csv());
    Ok(())
}
