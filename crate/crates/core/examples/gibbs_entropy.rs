//! Change of the Gibbs-entropy operator `Σ_k ln k |k⟩⟨k|` under the sudden
//! quench, compared with the eigenbasis-following map where it vanishes.

use qchain::fock::FockSystem;
use qchain::{ChainSpec, Model};

fn main() -> qchain::Result<()> {
    println!("{:>6} {:>6} {:>12} {:>12}", "g0", "beta", "dE sudden", "dE adiabatic");
    for g0 in [0.0, 0.25, 0.5, 1.0, 2.0] {
        for beta in [0.5, 2.0] {
            let sys = FockSystem::build(&ChainSpec::new(2, 1.0, g0, beta)?, 20, Model::H1)?;
            let sudden = sys.gibbs_entropy_change(1.0)?;
            let adiabatic = sys.gibbs_entropy_change_adiabatic()?;
            println!("{g0:>6} {beta:>6} {:>12.6} {:>12.1e}", sudden.delta, adiabatic.delta);
        }
    }
    Ok(())
}
