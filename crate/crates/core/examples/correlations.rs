//! Logarithmic negativity and Gaussian discord of the coupled pair in
//! equilibrium, with the temperature below which entanglement appears.

use qchain::correlations::{correlation_report, entanglement_threshold, equilibrium_covariance};
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let g0 = 2.0;
    let beta_star = entanglement_threshold(1.0, g0)?;
    println!("g0 = {g0}: entangled for beta > {beta_star:.6}");
    println!("{:>8} {:>10} {:>10} {:>8} {:>8}", "beta", "E_N", "D", "s*", "phi*");
    for k in 0..10 {
        let beta = 0.1 * 2f64.powi(k);
        let spec = ChainSpec::new(2, 1.0, g0, beta)?;
        let r = correlation_report(&equilibrium_covariance(&spec)?)?;
        println!(
            "{beta:>8.2} {:>10.6} {:>10.6} {:>8.3} {:>8.3}",
            r.log_negativity, r.discord, r.sigma0_s, r.sigma0_phi
        );
    }
    let cold = ChainSpec::new(2, 1.0, g0, f64::INFINITY)?;
    let r = correlation_report(&equilibrium_covariance(&cold)?)?;
    println!("ground state: E_N = {:.6}", r.log_negativity);
    Ok(())
}
