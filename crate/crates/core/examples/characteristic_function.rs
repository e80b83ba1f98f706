//! Characteristic function of work after the quench, from the closed-form
//! Gaussian trace and from the thermal convolution of coherent echoes.

use qchain::work::{characteristic_function, chi_convolution, uniform_grid};
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let spec = ChainSpec::new(3, 1.0, 0.7, 1.0)?;
    let grid = uniform_grid(0.0, 12.0, 25);
    let wc = characteristic_function(&spec, &grid)?;
    println!("{:>6} {:>12} {:>12} {:>10} {:>10}", "u", "Re chi", "Im chi", "|chi|", "route gap");
    for (u, z) in grid.iter().zip(&wc.chi) {
        let conv = chi_convolution(&spec, *u)?;
        println!("{u:>6.2} {:>12.8} {:>12.8} {:>10.6} {:>10.1e}", z.re, z.im, z.norm(), (conv - z).norm());
    }
    Ok(())
}
