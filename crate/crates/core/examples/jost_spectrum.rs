//! Bound states of the reduced lollipop from the roots of the Jost polynomial.

use tailwalk::graph::{lollipop, OracleSpec};
use tailwalk::jost::{jost_polynomials, lollipop_probes, point_spectrum, sign_profile};
use tailwalk::reduction::reduce;

fn main() -> tailwalk::Result<()> {
    for n in [16usize, 64, 256, 1024] {
        let dec = reduce(&lollipop(n)?, Some(&OracleSpec::new(1, n as f64)?))?;
        let j = dec.jacobi();
        let y0 = &jost_polynomials(j)?[0];
        let spectrum = point_spectrum(j)?;
        let nf = n as f64;
        println!("n = {n}: y0 has degree {}, signs at (-1, 1/n, 1) = {:?}", y0.degree(), sign_profile(j, &lollipop_probes(n))?);
        for s in &spectrum.states {
            println!(
                "  x = {:.10}  (x - 1/n) n^1.5 = {:+.4}  lambda = {:.6}  (n +- sqrt n: {:.3} / {:.3})",
                s.x,
                (s.x - 1.0 / nf) * nf.powf(1.5),
                s.lambda,
                nf + nf.sqrt(),
                nf - nf.sqrt()
            );
        }
    }
    Ok(())
}
