//! Perron data by power iteration and by equitable quotients, plus the
//! scalar bounds.

use std::error::Error;

use spectral_extremal::graph::{Graph, VertexSet};
use spectral_extremal::spectral::{
    coarsest_equitable_refinement, component_bracket, equitable_quotient, hong_shu_fang_bound, is_hsf_extremal, perron,
    quotient_spectral_radius, SpectralConfig,
};

fn main() -> Result<(), Box<dyn Error>> {
    let cfg = SpectralConfig::default();
    for n in [3, 8, 20] {
        let k = perron(&Graph::complete(n)?, &cfg)?;
        println!("rho(K_{n}) = {:.12} after {} iterations", k.rho, k.iterations);
    }

    let star = Graph::star(6)?;
    let data = perron(&star, &cfg)?;
    println!("rho(K_1,6) = {:.12}, Perron vector {:?}", data.rho, data.vector);

    // Centre and leaves form an equitable partition.
    let seed = [VertexSet::from_vertices([0], 7)?, VertexSet::from_vertices(1..7, 7)?];
    let parts = coarsest_equitable_refinement(&star, &seed)?;
    let q = equitable_quotient(&star, &parts)?;
    println!("quotient {:?} has rho {:.12}", q.cells, quotient_spectral_radius(&q, &cfg)?);

    let g = Graph::complete(5)?.join(&Graph::empty(3)?)?;
    let bound = hong_shu_fang_bound(g.order(), g.size(), g.min_degree())?;
    println!(
        "K_5 v 3K_1: rho {:.9}, degree bound {:.9}, equality expected: {}",
        perron(&g, &cfg)?.rho,
        bound,
        is_hsf_extremal(&g)
    );

    let b = component_bracket(12, 2, 1)?;
    println!("bracket for n = 12, r = 2, h = 1: ({}, {})", b.lower, b.upper);
    Ok(())
}
