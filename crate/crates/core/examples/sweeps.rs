//! Degree-bound sweep over all small connected graphs and the component
//! bracket over class members.

use std::error::Error;

use spectral_extremal::families::ExtremalParams;
use spectral_extremal::spectral::SpectralConfig;
use spectral_extremal::verify::{bracket_sweep, hsf_sweep};

fn main() -> Result<(), Box<dyn Error>> {
    let cfg = SpectralConfig::default();
    let s = hsf_sweep(6, &cfg)?;
    println!(
        "{} connected graphs up to order {}, {} equality cases, {} violations",
        s.connected_graphs,
        s.max_order,
        s.equality_cases,
        s.violations.len()
    );

    let params = [
        ExtremalParams::edge(8, 2, 1, 1, 1)?,
        ExtremalParams::edge(12, 2, 1, 1, 2)?,
        ExtremalParams::edge(18, 3, 1, 1, 2)?,
        ExtremalParams::edge(27, 2, 2, 2, 2)?,
    ];
    for row in bracket_sweep(&params, &cfg)? {
        println!(
            "n={} r={} h={}: {} members, rho in [{:.6}, {:.6}] inside ({}, {}): {}",
            row.params.n, row.params.r, row.params.h, row.members, row.min_rho, row.max_rho, row.lower, row.upper,
            row.violations.is_empty()
        );
    }
    Ok(())
}
