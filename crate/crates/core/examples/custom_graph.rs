//! Parse a graph file, attach a tail at its root and search for a marked vertex.

use tailwalk::graph::{attach_tail, parse_graph, OracleSpec};
use tailwalk::propagate::{fidelity_curve, peak, uniform_grid};

// The 3-cube, tail on vertex 8.
const CUBE: &str = "\
# vertices 1..8, edges of Q3
8 12
1 2
1 3
1 5
2 4
2 6
3 4
3 7
4 8
5 6
5 7
6 8
7 8
root 8
";

fn main() -> tailwalk::Result<()> {
    let sys = attach_tail(parse_graph(CUBE)?);
    let w = 1;
    let oracle = OracleSpec::new(w, 1.0)?;
    let (curve, evolution) = fidelity_curve(&sys, Some(&oracle), w, &uniform_grid(6.0, 600))?;
    let best = peak(&curve, |t| evolution.fidelity(t))?;
    println!("tail length used: {}", curve.tail_len);
    println!("peak fidelity {:.6} at t = {:.6}", best.f_star, best.t_star);
    Ok(())
}
