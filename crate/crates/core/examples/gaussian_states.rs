//! Gaussian-state toolkit: a thermal state pushed through the propagator,
//! displaced squeezed overlaps, and a coherent-state echo.

use qchain::symplectic::{coherent_echo, overlap_dss, propagator_network, DisplacedSqueezedState, GaussianState};
use qchain::{ChainSpec, C64};

fn main() -> qchain::Result<()> {
    let spec = ChainSpec::new(2, 1.0, 0.75, 1.0)?;
    let thermal = GaussianState::thermal(&spec);
    for t in [0.0, 0.5, 1.0, 2.0] {
        let s = propagator_network(&spec, t)?.symplectic();
        let state = thermal.apply(&s);
        println!(
            "t = {t:.1}: symplectic defect {:.1e}, <x1 x1> = {:.6}, uncertainty margin {:.4}",
            s.symplectic_defect(),
            state.cov[(0, 0)] / 4.0,
            state.uncertainty_margin()
        );
    }

    let a = DisplacedSqueezedState::new(C64::new(0.3, 0.1), C64::from_polar(0.4, 0.7));
    let b = DisplacedSqueezedState::new(C64::new(-0.2, 0.5), C64::from_polar(0.2, -1.0));
    println!("\n<a|b> = {:.8}", overlap_dss(&a, &b));

    for u in [0.5, 1.0, 2.0] {
        let e = coherent_echo(&spec, C64::new(0.3, 0.0), C64::new(0.0, -0.2), C64::from(u))?;
        println!("echo(u = {u}) = {e:.8}  |.|^2 = {:.8}", e.norm_sqr());
    }
    Ok(())
}
