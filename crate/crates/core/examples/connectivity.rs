//! Conditional connectivity values and the cuts that witness them.

use std::error::Error;

use spectral_extremal::conn::{classical_kappa, classical_lambda, kappa_h_r, lambda_h_r, Connectivity};
use spectral_extremal::graph::{EdgeSet, Graph};

fn main() -> Result<(), Box<dyn Error>> {
    let c6 = Graph::cycle(6)?;
    if let Connectivity::Defined(cert) = kappa_h_r(&c6, 2, 1)? {
        println!("kappa^1_2(C_6) = {} via {}", cert.value, serde_json::to_string(&cert)?);
        assert!(cert.verify(&c6, 2, 1));
    }
    if let Connectivity::Defined(cert) = lambda_h_r(&c6, 2, 1)? {
        println!("lambda^1_2(C_6) = {} via {}", cert.value, serde_json::to_string(&cert)?);
    }

    // K_4 with a pendant path of two vertices.
    let mut g = Graph::complete(4)?.disjoint_union(&Graph::path(2)?)?;
    g = g.add_edges(&EdgeSet::from_pairs([(3, 4)], 6)?)?;
    println!("bridge cut: {:?}", lambda_h_r(&g, 2, 1)?.certificate().map(|c| c.cut.to_vec()));

    let k5 = Graph::complete(5)?;
    println!("kappa^0_2(K_5) defined: {}", kappa_h_r(&k5, 2, 0)?.is_defined());
    let ck = classical_kappa(&k5)?;
    println!("classical kappa(K_5): {:?} (conventional {:?})", ck.value, ck.conventional);
    println!("classical lambda(C_6): {:?}", classical_lambda(&c6)?.value);

    match kappa_h_r(&Graph::star(5)?, 2, 1)? {
        Connectivity::Defined(c) => println!("star: {}", c.value),
        Connectivity::Undefined => println!("star K_1,5 has no cut leaving two components of order >= 2"),
    }
    Ok(())
}
