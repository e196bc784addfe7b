//! The extremal constructions and their block labellings.

use std::error::Error;

use spectral_extremal::families::{b_lambda, f_lambda, g_kappa, k_family, k_family_attachments, ExtremalParams};
use spectral_extremal::graph::encode_graph6;
use spectral_extremal::spectral::{spectral_radius, SpectralConfig};

fn main() -> Result<(), Box<dyn Error>> {
    let cfg = SpectralConfig::default();
    for (n, r, h, delta, kappa) in [(6, 2, 1, 1, 1), (8, 2, 2, 2, 1), (7, 2, 1, 2, 1)] {
        let p = ExtremalParams::vertex(n, r, h, delta, kappa)?;
        let f = g_kappa(&p)?;
        let check = f.check(&p, &cfg)?;
        println!(
            "g_kappa {n},{r},{h},{delta},{kappa} [{:?}]: {} rho {:.9} (quotient {:?}), blocks {}",
            f.regime,
            encode_graph6(&f.graph),
            check.rho,
            check.quotient_rho,
            serde_json::to_string(&f.sidecar())?
        );
    }

    let p = ExtremalParams::edge(12, 2, 1, 1, 2)?;
    let b = b_lambda(&p)?;
    println!("b_lambda: {} rho {:.9}", encode_graph6(&b.graph), spectral_radius(&b.graph, &cfg)?);
    for (t, att) in k_family_attachments(&p)? {
        match k_family(&p, t, &att) {
            Ok(m) => println!("  member t={t} {att:?}: rho {:.9}", spectral_radius(&m.graph, &cfg)?),
            Err(e) => println!("  t={t} {att:?} skipped: {e}"),
        }
    }

    let f = f_lambda(8, 2, 3)?;
    println!("f_lambda(8, 2, 3): {} with {} edges", encode_graph6(&f), f.size());
    Ok(())
}
