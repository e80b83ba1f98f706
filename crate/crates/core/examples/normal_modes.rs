//! Normal modes of a spring-coupled chain: eigenvalues, frequencies,
//! squeezing degrees and the mode matrix.
//!
//! ```text
//! cargo run --example normal_modes -- 6 0.8
//! ```

use qchain::chain::{dense_spectrum, normal_modes};
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n: usize = args.first().and_then(|s| s.parse().ok()).unwrap_or(4);
    let g0: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1.0);
    let spec = ChainSpec::new(n, 1.0, g0, 1.0)?;
    let nm = normal_modes(&spec)?;
    let dense = dense_spectrum(&spec);

    println!("N = {n}, omega = 1, g0 = {g0}");
    println!("{:>3} {:>12} {:>12} {:>12} {:>12}", "j", "lambda", "dense", "mu", "r");
    for j in 0..n {
        println!(
            "{:>3} {:>12.8} {:>12.8} {:>12.8} {:>12.8}",
            j + 1,
            nm.lambdas[j],
            dense[j],
            nm.mus[j],
            nm.squeeze_params[j]
        );
    }
    println!("\nmode matrix (columns are normal modes):");
    for r in 0..n {
        let row: Vec<String> = (0..n).map(|c| format!("{:>9.5}", nm.p_matrix[(r, c)])).collect();
        println!("{}", row.join(" "));
    }
    Ok(())
}
