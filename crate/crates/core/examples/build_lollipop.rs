//! Build the lollipop graph, print its file form and a corner of the truncated Hamiltonian.

use tailwalk::graph::{lollipop, serialize_graph, OracleSpec};
use tailwalk::operator::assemble;

fn main() -> tailwalk::Result<()> {
    let n = 5;
    let sys = lollipop(n)?;
    print!("{}", serialize_graph(sys.rooted()));

    let oracle = OracleSpec::new(1, n as f64)?;
    let h = assemble(&sys, Some(&oracle), 4)?;
    println!("\nH ({} sites, tail of {}):", h.size(), h.tail_len());
    for u in 1..=h.size() {
        let row: Vec<String> = (1..=h.size()).map(|v| format!("{:>3}", h.entry(u, v))).collect();
        println!("{}", row.join(" "));
    }
    Ok(())
}
