use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::families::{b_lambda, k_family, k_family_attachments, ExtremalParams, FamilyError};
use crate::graph::{encode_graph6, Graph};
use crate::spectral::{component_bracket, hong_shu_fang_bound, is_hsf_extremal, spectral_radius, SpectralConfig};

/// `|rho - bound|` below this counts as equality.
pub const HSF_EQUALITY_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HsfViolation {
    pub graph: String,
    pub rho: f64,
    pub bound: f64,
    pub equality_class: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct HsfSweep {
    pub max_order: usize,
    pub connected_graphs: u64,
    pub equality_cases: u64,
    pub violations: Vec<HsfViolation>,
}

/// Checks `rho <= bound + epsilon` on every connected labelled graph with
/// `2 <= n <= max_order`, and that equality holds exactly on graphs whose
/// degrees all lie in `{delta, n - 1}`.
pub fn hsf_sweep(max_order: usize, cfg: &SpectralConfig) -> Result<HsfSweep, VerifyError> {
    if max_order > 7 {
        return Err(VerifyError::Unsupported(format!("sweep order {max_order} exceeds 7")));
    }
    let mut out = HsfSweep { max_order, ..HsfSweep::default() };
    for n in 2..=max_order {
        let pairs = n * (n - 1) / 2;
        let chunks: Vec<(u64, u64)> = (0..64u64).map(|i| (i << pairs >> 6, (i + 1) << pairs >> 6)).collect();
        let parts: Vec<HsfSweep> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut part = HsfSweep::default();
                for mask in lo..hi {
                    let g = Graph::from_pair_mask(n, mask)?;
                    if !g.is_connected() {
                        continue;
                    }
                    part.connected_graphs += 1;
                    let rho = spectral_radius(&g, cfg)?;
                    let bound = hong_shu_fang_bound(n, g.size(), g.min_degree())?;
                    let extremal = is_hsf_extremal(&g);
                    let tight = (rho - bound).abs() <= HSF_EQUALITY_TOLERANCE;
                    if extremal {
                        part.equality_cases += 1;
                    }
                    if rho > bound + cfg.comparison_epsilon || tight != extremal {
                        part.violations.push(HsfViolation { graph: encode_graph6(&g), rho, bound, equality_class: extremal });
                    }
                }
                Ok(part)
            })
            .collect::<Result<_, VerifyError>>()?;
        for p in parts {
            out.connected_graphs += p.connected_graphs;
            out.equality_cases += p.equality_cases;
            out.violations.extend(p.violations);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketRow {
    pub params: ExtremalParams,
    pub lower: f64,
    pub upper: f64,
    pub members: u64,
    pub min_rho: f64,
    pub max_rho: f64,
    /// Members outside the open bracket (with margin).
    pub violations: Vec<String>,
}

/// Spectral radii of every generated class member (and the extremal graph)
/// against the open bracket `(n - (r-1)(h+1) - 1, n - (r-1)(h+1))`.
pub fn bracket_sweep(params: &[ExtremalParams], cfg: &SpectralConfig) -> Result<Vec<BracketRow>, VerifyError> {
    params
        .iter()
        .map(|p| {
            let bracket = component_bracket(p.n, p.r, p.h)?;
            let mut graphs = vec![b_lambda(p)?.graph];
            for (t, att) in k_family_attachments(p)? {
                match k_family(p, t, &att) {
                    Ok(f) => graphs.push(f.graph),
                    Err(FamilyError::NotAMember(_)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            let mut row = BracketRow {
                params: *p,
                lower: bracket.lower,
                upper: bracket.upper,
                members: graphs.len() as u64,
                min_rho: f64::INFINITY,
                max_rho: f64::NEG_INFINITY,
                violations: Vec::new(),
            };
            for g in &graphs {
                let rho = spectral_radius(g, cfg)?;
                row.min_rho = row.min_rho.min(rho);
                row.max_rho = row.max_rho.max(rho);
                if !bracket.contains(rho, cfg.comparison_epsilon) {
                    row.violations.push(encode_graph6(g));
                }
            }
            Ok(row)
        })
        .collect()
}
