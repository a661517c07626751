//! Lower-bound diagnostics on the cone of a complete graph.

use tailwalk::experiments::run_lower_bound;
use tailwalk::graph::make_complete;

fn main() -> tailwalk::Result<()> {
    let base = make_complete(255)?;
    let r = run_lower_bound(&base, 256.0, 1)?;
    println!("epsilon1          {:.6}", r.epsilon1);
    println!("|beta1 - z1|      {:.6}", r.beta_z_distance);
    println!("t0                {:.8}  (fidelity {:.10})", r.t0, r.fidelity_t0);
    println!("M(t0)             {:.6}  floor 2(1 - eps) = {:.6}", r.m_t0, r.m_floor);
    println!("max dM/dt         {:.6}  bound 2 gamma eps = {:.6}", r.max_derivative, r.bound_rhs);
    println!("gamma t0 eps      {:.6}", r.product);
    if let Some(w) = &r.warning {
        println!("warning: {w}");
    }
    Ok(())
}
