//! The energy-preserving exchange coupling: zero average work, second
//! moment `g0²(V²−1)/8`, checked against the Fock oracle.

use qchain::fock::FockSystem;
use qchain::work::rwa_statistics;
use qchain::{ChainSpec, Model};

fn main() -> qchain::Result<()> {
    for g0 in [0.25, 0.5, 1.0, 1.5] {
        let spec = ChainSpec::new(2, 1.0, g0, 1.0)?;
        let r = rwa_statistics(&spec)?;
        let d = FockSystem::build(&spec, 40, Model::H2)?.tpm_distribution()?;
        println!(
            "g0 = {g0:<5} <W> = {:>9.2e} (oracle {:>9.2e})  <W^2> = {:.8} (oracle {:.8})",
            r.avg_work,
            d.moment(1),
            r.second_moment,
            d.moment(2)
        );
    }
    Ok(())
}
