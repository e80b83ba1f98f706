//! Truncated-Fock oracle against the analytic results at N = 2: the work
//! distribution, its moments and the characteristic function.

use qchain::fock::FockSystem;
use qchain::work::{average_work, chi, lag_closed_form};
use qchain::{ChainSpec, Model, C64};

fn main() -> qchain::Result<()> {
    let n_max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let spec = ChainSpec::new(2, 1.0, 1.0, 1.0)?;
    let sys = FockSystem::build(&spec, n_max, Model::H1)?;
    let dist = sys.tpm_distribution()?;
    println!("n_max = {n_max}, {} work atoms, pruned mass {:.1e}", dist.atoms.len(), dist.pruned_mass);
    println!("<W>: analytic {:.10}, oracle {:.10}", average_work(&spec), dist.moment(1));
    println!("L:   analytic {:.10}, oracle {:.10}", lag_closed_form(&spec)?, sys.relative_entropy_lag(0.0)?);
    for u in [1.0, 4.0, 9.0] {
        let a = chi(&spec, C64::from(u))?;
        let o = sys.chi(C64::from(u))?;
        println!("chi({u}): analytic {a:.10}, oracle {o:.10}, gap {:.1e}", (a - o).norm());
    }

    let mut atoms = dist.atoms.clone();
    atoms.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("\nmost likely work values:");
    for (w, p) in atoms.iter().take(8) {
        println!("  W = {w:>9.5}  p = {p:.6}");
    }
    Ok(())
}
