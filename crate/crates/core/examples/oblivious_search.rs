//! The same search with the oracle on a clique vertex, on the attachment vertex, and without a tail.

use tailwalk::experiments::run_oblivious;

fn main() -> tailwalk::Result<()> {
    let n = 256;
    let cmp = run_oblivious(n, n as f64)?;
    println!("{:<14} {:>12} {:>14} {:>10}", "placement", "t_star", "F_star", "t/t_pred");
    for r in &cmp.reports {
        println!("{:<14} {:>12.8} {:>14.10} {:>10.6}", r.placement.as_str(), r.t_star, r.f_star, r.t_ratio);
    }
    println!("max pairwise relative t_star difference: {:.3e}", cmp.max_pairwise_t_rel);
    println!("max pairwise F_star difference:          {:.3e}", cmp.max_pairwise_f_diff);
    Ok(())
}
