//! Reduce the lollipop with the oracle on a clique vertex to an eventually-free Jacobi matrix.

use tailwalk::graph::{lollipop, OracleSpec};
use tailwalk::reduction::reduce;

fn main() -> tailwalk::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let sys = lollipop(n)?;
    let dec = reduce(&sys, Some(&OracleSpec::new(1, n as f64)?))?;
    let j = dec.jacobi();
    println!("horizon K = {}", j.horizon());
    for k in 1..=j.horizon() {
        println!("b{k} = {:<22} a{k} = {}", j.b(k), j.a(k));
    }
    let c = dec.complement_values();
    println!("complement: {} eigenvalues in [{}, {}]", c.len(), c.iter().copied().fold(f64::INFINITY, f64::min), c.iter().copied().fold(f64::NEG_INFINITY, f64::max));

    let block = dec.block_form(32);
    let split = c.len();
    let mut off = 0.0f64;
    for i in 0..split {
        for k in split..block.nrows() {
            off = off.max(block[(i, k)].abs());
        }
    }
    println!("largest off-block entry at L = 32: {off:e}");
    Ok(())
}
