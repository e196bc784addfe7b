//! Maximum spectral radius over every structured class member.

use std::error::Error;

use spectral_extremal::families::ExtremalParams;
use spectral_extremal::verify::{verify_class_maximum, Mode, VerifyOptions};

fn main() -> Result<(), Box<dyn Error>> {
    for (n, r, h, delta, lambda) in [(12, 2, 1, 1, 2), (18, 3, 1, 1, 3), (27, 2, 2, 2, 2)] {
        let p = ExtremalParams::edge(n, r, h, delta, lambda)?;
        let report = verify_class_maximum(&p, &VerifyOptions::new(Mode::FamilyRestricted))?;
        println!(
            "({n},{r},{h},{delta},{lambda}): {} members, rho_max {:?}, construction {:.9}, unique {}, passed {}",
            report.examined, report.rho_max, report.construction_rho, report.unique_up_to_iso, report.passed
        );
    }
    Ok(())
}
