//! Average work, free-energy change and nonequilibrium lag over a range of
//! temperatures, with the classical and quantum parts of the lag.

use qchain::work::nonequilibrium_lag;
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let base = ChainSpec::new(2, 1.0, 1.0, 1.0)?;
    println!("{:>8} {:>10} {:>10} {:>10} {:>10} {:>10}", "beta", "<W>", "dF", "L", "L_c", "L_q");
    for k in 0..13 {
        let beta = 0.05 * 2f64.powi(k);
        let r = nonequilibrium_lag(&base.with_beta(beta))?;
        println!(
            "{beta:>8.3} {:>10.5} {:>10.5} {:>10.5} {:>10.5} {:>10.5}",
            r.avg_work, r.delta_f, r.lag, r.lag_c, r.lag_q
        );
    }
    Ok(())
}
