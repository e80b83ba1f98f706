//! Beam-splitter mesh for the normal-mode mixer and the optical network of
//! the full post-quench propagator.

use qchain::chain::normal_modes;
use qchain::interferometer::{reck_decompose, reconstruct};
use qchain::linalg::max_abs;
use qchain::symplectic::{propagator_network, NetworkElement};
use qchain::ChainSpec;

fn main() -> qchain::Result<()> {
    let spec = ChainSpec::new(4, 1.0, 1.0, 1.0)?;
    let p = normal_modes(&spec)?.p_matrix;
    let plan = reck_decompose(&p.transpose())?;
    println!("mixer for N = 4 ({} beam splitters)", plan.mixer_count());
    for e in &plan.network.elements {
        match e {
            NetworkElement::BeamSplitter { mode_i, mode_j, theta, .. } => {
                println!("  BS({mode_i},{mode_j})  theta = {theta:>9.6}  tan = {:>9.6}", theta.tan())
            }
            other => println!("  {other:?}"),
        }
    }
    let err = max_abs(&(reconstruct(&plan)? - p.transpose()));
    println!("reconstruction error {err:.1e}\n");

    let net = propagator_network(&spec, 0.5)?;
    println!("propagator at t = 0.5: {} elements", net.elements.len());
    println!("{}", net.to_json()?);
    Ok(())
}
