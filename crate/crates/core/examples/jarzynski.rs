//! `<e^{−βW}> = e^{−βΔF}`, evaluated as the characteristic function at
//! `u = iβ` over a grid of chain lengths, couplings and temperatures.

use qchain::work::jarzynski_check;
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let mut worst: f64 = 0.0;
    for n in [2, 4, 8, 16, 32] {
        for g0 in [0.1, 1.0, 10.0] {
            for beta in [0.2, 1.0, 5.0] {
                let r = jarzynski_check(&ChainSpec::new(n, 1.0, g0, beta)?)?;
                worst = worst.max(r);
                println!("N={n:>2} g0={g0:>5} beta={beta:>4}  |chi(i beta) e^(beta dF) - 1| = {r:.2e}");
            }
        }
    }
    println!("largest residual {worst:.2e}");
    Ok(())
}
