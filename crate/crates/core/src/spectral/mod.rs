//! Spectral radius and Perron vector of connected graphs.
//!
//! Power iteration runs on `A + I`, which is primitive for every connected
//! graph (bipartite ones included), starting from the all-ones vector.
//! Iteration stops once the max-norm residual `|Ax - rho x|` is within
//! tolerance, so a returned [`PerronData`] certifies itself.

mod bounds;
mod quotient;
mod shifts;

pub use bounds::{
    binomial_transfer_inequality, component_bracket, hong_shu_fang_bound, is_hsf_extremal,
    product_shift_gap, product_shift_inequality, Bracket,
};
pub use quotient::{
    coarsest_equitable_refinement, equitable_quotient, quotient_spectral_radius, QuotientMatrix,
    MAX_QUOTIENT_CELLS,
};
pub use shifts::{are_closed_twins, kelmans_shift, strictly_dominates};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Graph, GraphError, MAX_ORDER};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("partition is not a partition of the vertex set: {0}")]
    NotAPartition(String),
    #[error("partition not equitable: vertex {vertex} has {found} neighbours in part {part}, expected {expected}")]
    NotEquitable { vertex: usize, part: usize, found: usize, expected: usize },
    #[error("quotient has {0} cells, at most {MAX_QUOTIENT_CELLS} supported")]
    TooManyCells(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Numerical knobs shared by every spectral computation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralConfig {
    /// Residual bound for power iteration.
    pub tolerance: f64,
    /// Margin used when asserting strict inequalities between spectral radii.
    pub comparison_epsilon: f64,
    pub max_iterations: usize,
}

impl Default for SpectralConfig {
    fn default() -> Self {
        SpectralConfig { tolerance: 1e-12, comparison_epsilon: 1e-9, max_iterations: 1_000_000 }
    }
}

impl SpectralConfig {
    pub fn new(
        tolerance: f64,
        comparison_epsilon: f64,
        max_iterations: usize,
    ) -> Result<Self, SpectralError> {
        let cfg = SpectralConfig { tolerance, comparison_epsilon, max_iterations };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        if !(0.0 < self.tolerance && self.tolerance < self.comparison_epsilon && self.comparison_epsilon < 1.0) {
            return Err(SpectralError::InvalidConfig(format!(
                "need 0 < tolerance ({}) < comparison_epsilon ({}) < 1",
                self.tolerance, self.comparison_epsilon
            )));
        }
        if self.max_iterations == 0 {
            return Err(SpectralError::InvalidConfig("max_iterations must be positive".into()));
        }
        Ok(())
    }
}

/// Spectral radius with its Perron vector (max entry normalised to 1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronData {
    pub rho: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

struct Iterate {
    rho: f64,
    residual: f64,
    iterations: usize,
}

fn iterate(g: &Graph, cfg: &SpectralConfig, x: &mut [f64; MAX_ORDER]) -> Result<Iterate, SpectralError> {
    let n = g.order();
    if !g.is_connected() {
        return Err(SpectralError::Disconnected);
    }
    let rows = g.rows();
    x[..n].fill(1.0);
    let mut y = [0f64; MAX_ORDER];
    let mut residual = f64::INFINITY;
    for it in 0..cfg.max_iterations {
        let (mut num, mut den, mut top) = (0.0, 0.0, 0.0f64);
        for v in 0..n {
            let s = Bits(rows[v]).fold(x[v], |acc, w| acc + x[w]);
            y[v] = s;
            num += x[v] * s;
            den += x[v] * x[v];
            top = top.max(s);
        }
        // Rayleigh quotient of A + I at x.
        let mu = num / den;
        residual = (0..n).map(|v| (y[v] - mu * x[v]).abs()).fold(0.0, f64::max);
        if residual <= cfg.tolerance {
            return Ok(Iterate { rho: mu - 1.0, residual, iterations: it + 1 });
        }
        for v in 0..n {
            x[v] = y[v] / top;
        }
    }
    Err(SpectralError::NoConvergence { iterations: cfg.max_iterations, residual })
}

pub fn perron(g: &Graph, cfg: &SpectralConfig) -> Result<PerronData, SpectralError> {
    let mut x = [0f64; MAX_ORDER];
    let it = iterate(g, cfg, &mut x)?;
    Ok(PerronData {
        rho: it.rho,
        vector: x[..g.order()].to_vec(),
        residual: it.residual,
        iterations: it.iterations,
    })
}

/// Just the spectral radius; allocation free.
pub fn spectral_radius(g: &Graph, cfg: &SpectralConfig) -> Result<f64, SpectralError> {
    let mut x = [0f64; MAX_ORDER];
    iterate(g, cfg, &mut x).map(|it| it.rho)
}
