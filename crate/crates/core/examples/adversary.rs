//! Seeded Metropolis chains hunting for a class member that beats the
//! construction.

use std::error::Error;

use spectral_extremal::families::{b_lambda, ExtremalParams};
use spectral_extremal::spectral::SpectralConfig;
use spectral_extremal::verify::{random_adversary, verify_edge_extremal, AdversaryConfig, ClassFilter, Mode, VerifyOptions};

fn main() -> Result<(), Box<dyn Error>> {
    let p = ExtremalParams::edge(8, 2, 1, 1, 1)?;
    let filter = ClassFilter::for_params(&p);
    let b = b_lambda(&p)?.graph;
    let run = random_adversary(&filter, &b, &AdversaryConfig::new(20_000, 7), &SpectralConfig::default())?;
    println!(
        "seed 7: {} of {} proposals in class, {} restarts, best {:.9} vs start {:.9}, improvements {}",
        run.in_class, run.steps, run.restarts, run.best_rho, run.start_rho, run.improvements
    );

    let opts = VerifyOptions::new(Mode::Randomized { iterations: 100_000, seed: 1, chains: 4 });
    let report = verify_edge_extremal(&p, &opts)?;
    println!("{}", report.deterministic_json());
    Ok(())
}
