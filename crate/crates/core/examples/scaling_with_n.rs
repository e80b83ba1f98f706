//! How work and lag grow with the chain length: `<W>` is exactly linear in
//! `N − 1`, the lag only approximately.

use qchain::work::{average_work, lag_closed_form};
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let mut prev = None;
    println!("{:>4} {:>12} {:>12} {:>12}", "N", "<W>", "L", "L(N)-L(N-1)");
    for n in 2..=64 {
        let spec = ChainSpec::new(n, 1.0, 1.0, 1.0)?;
        let l = lag_closed_form(&spec)?;
        let step = prev.map(|p: f64| l - p).unwrap_or(f64::NAN);
        if n <= 8 || n % 8 == 0 {
            println!("{n:>4} {:>12.6} {l:>12.6} {step:>12.8}", average_work(&spec));
        }
        prev = Some(l);
    }
    Ok(())
}
