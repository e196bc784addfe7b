//! Exhaustive extremality checks over every labelled graph of a class.
//! Pass `--long-running` to also sweep the order-8 edge class.

use std::error::Error;

use spectral_extremal::families::ExtremalParams;
use spectral_extremal::verify::{verify_edge_extremal, verify_vertex_extremal, Mode, VerifyOptions};

fn main() -> Result<(), Box<dyn Error>> {
    let long = std::env::args().any(|a| a == "--long-running");
    let mut opts = VerifyOptions::new(Mode::Exhaustive);
    opts.long_running = long;
    for (n, delta) in [(6, 1), (7, 2)] {
        let p = ExtremalParams::vertex(n, 2, 1, delta, 1)?;
        let r = verify_vertex_extremal(&p, &opts)?;
        println!(
            "n={n} delta={delta}: {} members of {} masks, maximizer {:?}, gap {:?}, passed {} in {:.2}s",
            r.examined, r.search_space_size, r.maximizers, r.runner_up_gap, r.passed, r.wall_clock_seconds
        );
    }
    if long {
        let p = ExtremalParams::edge(8, 2, 1, 1, 1)?;
        println!("{}", verify_edge_extremal(&p, &opts)?.deterministic_json());
    }

    let p = ExtremalParams::vertex(8, 2, 2, 2, 1)?;
    let r = verify_vertex_extremal(&p, &VerifyOptions::new(Mode::Neighborhood { radius: 2 }))?;
    println!("n=8 within two edits of the construction: {} members, passed {}", r.examined, r.passed);
    Ok(())
}
