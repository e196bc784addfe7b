//! Extremality checks over graph classes: exhaustive sweeps of labelled
//! edge masks, neighbourhoods of a construction, seeded adversarial
//! search, and enumeration of the structured class members.

mod adversary;
mod exhaustive;
mod space;
mod sweeps;

pub use adversary::{random_adversary, AdversaryConfig, AdversaryRun};
pub use exhaustive::{run_exhaustive, run_shard, ExhaustiveOptions, ShardRecord, Tally, SHARD_COUNT};
pub use space::{enumerate_class, ClassFilter, EnumerationStats, SearchSpace, Verdict, MAX_EXHAUSTIVE_ORDER};
pub use sweeps::{bracket_sweep, hsf_sweep, BracketRow, HsfSweep, HsfViolation, HSF_EQUALITY_TOLERANCE};

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::conn::ConnError;
use crate::families::{
    b_lambda, g_kappa, k_family, k_family_attachments, ConnectivityKind, ExtremalParams, FamilyError, ParamError,
};
use crate::graph::{are_isomorphic, decode_graph6, encode_graph6, Graph, GraphError};
use crate::spectral::{spectral_radius, SpectralConfig, SpectralError};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Conn(#[from] ConnError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unsupported request: {0}")]
    Unsupported(String),
    #[error("exhaustive search at n = {n} is long-running; pass the long-running flag to start it")]
    NeedsLongRunning { n: usize },
    #[error("stopped after {done} of {total} shards; rerun with the same checkpoint to resume")]
    Incomplete { done: usize, total: usize },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl VerifyError {
    /// Caused by the requested parameters rather than by I/O or numerics.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            VerifyError::Params(_)
                | VerifyError::Family(FamilyError::Params(_))
                | VerifyError::Unsupported(_)
                | VerifyError::NeedsLongRunning { .. }
        )
    }
}

/// Which extremal statement a report checks. Serialised with the command
/// line names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Check {
    /// Maximum `rho` under fixed vertex conditional connectivity.
    #[serde(rename = "1.2")]
    VertexExtremal,
    /// Maximum `rho` under fixed edge conditional connectivity.
    #[serde(rename = "1.3")]
    EdgeExtremal,
    /// Maximum `rho` over the structured edge-class members.
    #[serde(rename = "lemma-3.4")]
    ClassMaximum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Mode {
    Exhaustive,
    /// Every graph within `radius` pair toggles of the construction.
    Neighborhood { radius: usize },
    /// `chains` independent adversary chains seeded `seed, seed+1, ...`.
    Randomized { iterations: u64, seed: u64, chains: u64 },
    /// Structured class members only.
    FamilyRestricted,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions<'a> {
    pub mode: Mode,
    pub cfg: SpectralConfig,
    pub long_running: bool,
    pub checkpoint: Option<&'a Path>,
    pub shard_budget: Option<usize>,
}

impl VerifyOptions<'_> {
    pub fn new(mode: Mode) -> Self {
        VerifyOptions { mode, cfg: SpectralConfig::default(), long_running: false, checkpoint: None, shard_budget: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub check: Check,
    pub params: ExtremalParams,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub search_space_size: u64,
    /// Graphs that passed every class filter.
    pub examined: u64,
    pub rejections: BTreeMap<String, u64>,
    pub rho_max: Option<f64>,
    /// One graph6 string per isomorphism class within the tolerance band
    /// of `rho_max`.
    pub maximizers: Vec<String>,
    pub maximizer_labelings: u64,
    pub unique_up_to_iso: bool,
    pub construction: String,
    pub construction_rho: f64,
    pub matches_construction: bool,
    /// `rho_max` minus the best value of a non-isomorphic graph.
    pub runner_up_gap: Option<f64>,
    pub counterexamples: Vec<String>,
    pub flags: Vec<String>,
    pub passed: bool,
    pub wall_clock_seconds: f64,
}

impl VerificationReport {
    /// Pretty JSON with the wall clock zeroed, for byte comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.wall_clock_seconds = 0.0;
        serde_json::to_string_pretty(&r).expect("report serialises")
    }
}

struct Classes {
    /// `(representative, best rho)` in order of first appearance.
    reps: Vec<(Graph, f64)>,
}

fn group_by_isomorphism(items: &[(f64, Graph)]) -> Result<Classes, VerifyError> {
    let mut reps: Vec<(Graph, f64)> = Vec::new();
    for (rho, g) in items {
        let mut placed = false;
        for (rep, best) in reps.iter_mut() {
            if are_isomorphic(rep, g)? {
                *best = best.max(*rho);
                placed = true;
                break;
            }
        }
        if !placed {
            reps.push((g.clone(), *rho));
        }
    }
    Ok(Classes { reps })
}

/// Everything except the search-specific counters.
struct Outcome {
    rho_max: Option<f64>,
    maximizers: Vec<String>,
    labelings: u64,
    unique: bool,
    matches: bool,
    runner_up_gap: Option<f64>,
    counterexamples: Vec<String>,
}

fn judge(
    band: &[(f64, Graph)],
    runner_up: Option<f64>,
    construction: &Graph,
    construction_rho: f64,
    construction_in_class: bool,
    eps: f64,
    track_gap: bool,
) -> Result<Outcome, VerifyError> {
    let rho_max = band.iter().map(|x| x.0).fold(None, |a: Option<f64>, r| Some(a.map_or(r, |a| a.max(r))));
    let classes = group_by_isomorphism(band)?;
    let mut counterexamples = Vec::new();
    let mut all_match = !classes.reps.is_empty();
    for (rep, _) in &classes.reps {
        if !are_isomorphic(rep, construction)? {
            all_match = false;
            counterexamples.push(encode_graph6(rep));
        }
    }
    let matches = all_match
        && construction_in_class
        && rho_max.is_some_and(|top| (top - construction_rho).abs() <= eps);
    let runner_up_gap = match (track_gap, rho_max) {
        (false, _) | (true, None) => None,
        (true, Some(top)) if classes.reps.len() > 1 => {
            let mut bests: Vec<f64> = classes.reps.iter().map(|c| c.1).collect();
            bests.sort_by(|a, b| b.total_cmp(a));
            Some(top - bests[1])
        }
        (true, Some(top)) => runner_up.map(|r| top - r),
    };
    Ok(Outcome {
        rho_max,
        maximizers: classes.reps.iter().map(|(g, _)| encode_graph6(g)).collect(),
        labelings: band.len() as u64,
        unique: classes.reps.len() == 1,
        matches,
        runner_up_gap,
        counterexamples,
    })
}

fn rejections(stats: &EnumerationStats) -> BTreeMap<String, u64> {
    [
        ("edge_count", stats.edge_count),
        ("min_degree", stats.min_degree),
        ("disconnected", stats.disconnected),
        ("connectivity", stats.connectivity),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn base_flags(p: &ExtremalParams) -> Vec<String> {
    let mut flags = Vec::new();
    if p.kind == ConnectivityKind::Edge && p.r <= 3 {
        flags.push("r <= 3: degenerate cross-edge bundles in the edge construction".to_string());
    }
    if p.below_threshold {
        flags.push("n below (lambda+1)(h+1)^2: probe only, result not asserted".to_string());
    }
    flags
}

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Class members within `radius` toggles of `centre`, as a tally keyed by
/// pair mask.
fn neighborhood_tally(
    filter: &ClassFilter,
    centre: &Graph,
    radius: usize,
    cfg: &SpectralConfig,
) -> Result<(Tally, u64), VerifyError> {
    let n = filter.n;
    if centre.pair_mask().is_none() {
        return Err(VerifyError::Unsupported(format!("neighbourhood search needs n <= 11, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let band = cfg.comparison_epsilon;
    let mut tally = Tally::default();
    fn walk(
        g: &Graph,
        from: usize,
        depth: usize,
        pairs: &[(usize, usize)],
        visit: &mut dyn FnMut(&Graph) -> Result<(), VerifyError>,
    ) -> Result<(), VerifyError> {
        visit(g)?;
        if depth == 0 {
            return Ok(());
        }
        for i in from..pairs.len() {
            let (u, v) = pairs[i];
            walk(&g.toggled(u, v)?, i + 1, depth - 1, pairs, visit)?;
        }
        Ok(())
    }
    let mut visit = |g: &Graph| -> Result<(), VerifyError> {
        let verdict = filter.classify(g);
        tally.stats.record(verdict);
        if verdict == Verdict::Member {
            let rho = spectral_radius(g, cfg)?;
            tally.offer(rho, g.pair_mask().expect("checked order"), band);
        }
        Ok(())
    };
    walk(centre, 0, radius, &pairs, &mut visit)?;
    let tally = tally.merge(Tally::default(), band);
    let size = (0..=radius as u64).map(|k| choose(pairs.len() as u64, k)).sum();
    Ok((tally, size))
}

fn verify_class(
    check: Check,
    p: &ExtremalParams,
    construction: &Graph,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let cfg = &opts.cfg;
    cfg.validate()?;
    let eps = cfg.comparison_epsilon;
    let filter = ClassFilter::for_params(p);
    let construction_rho = spectral_radius(construction, cfg)?;
    let in_class = filter.admits(construction);
    let mut flags = base_flags(p);
    let n = p.n;

    let to_graphs = |band: &[(f64, u64)]| -> Result<Vec<(f64, Graph)>, VerifyError> {
        band.iter().map(|&(r, m)| Ok((r, Graph::from_pair_mask(n, m)?))).collect()
    };

    let (outcome, examined, size, rejected, seed) = match opts.mode {
        Mode::Exhaustive => {
            let space = SearchSpace::full(filter)
                .ok_or_else(|| VerifyError::Unsupported(format!("exhaustive search needs n <= {MAX_EXHAUSTIVE_ORDER}")))?;
            if n >= MAX_EXHAUSTIVE_ORDER && !opts.long_running {
                return Err(VerifyError::NeedsLongRunning { n });
            }
            let eo = ExhaustiveOptions { checkpoint: opts.checkpoint, shard_budget: opts.shard_budget };
            let tally = run_exhaustive(&space, cfg, eps, &eo)?;
            let band = to_graphs(&tally.band)?;
            let o = judge(&band, tally.runner_up, construction, construction_rho, in_class, eps, true)?;
            (o, tally.stats.members, space.len(), rejections(&tally.stats), None)
        }
        Mode::Neighborhood { radius } => {
            flags.push(format!("search restricted to edit distance <= {radius} from the construction"));
            let (tally, size) = neighborhood_tally(&filter, construction, radius, cfg)?;
            let band = to_graphs(&tally.band)?;
            let o = judge(&band, tally.runner_up, construction, construction_rho, in_class, eps, true)?;
            (o, tally.stats.members, size, rejections(&tally.stats), None)
        }
        Mode::Randomized { iterations, seed, chains } => {
            flags.push("randomized search: no counterexample found is evidence, not proof".to_string());
            let runs: Vec<AdversaryRun> = (0..chains)
                .into_par_iter()
                .map(|i| random_adversary(&filter, construction, &AdversaryConfig::new(iterations, seed + i), cfg))
                .collect::<Result<_, _>>()?;
            let mut bests: Vec<(f64, Graph)> = vec![(construction_rho, construction.clone())];
            for run in &runs {
                bests.push((run.best_rho, decode_graph6(&run.best)?));
            }
            let top = bests.iter().map(|b| b.0).fold(f64::NEG_INFINITY, f64::max);
            bests.retain(|b| b.0 >= top - eps);
            let mut o = judge(&bests, None, construction, construction_rho, in_class, eps, false)?;
            o.labelings = bests.len() as u64;
            for run in &runs {
                o.counterexamples.extend(run.counterexamples.iter().cloned());
            }
            o.counterexamples.sort();
            o.counterexamples.dedup();
            o.matches = o.matches && o.counterexamples.is_empty();
            let examined = runs.iter().map(|r| r.in_class).sum();
            let mut rej = BTreeMap::new();
            rej.insert("left_class".to_string(), runs.iter().map(|r| r.steps - r.in_class).sum());
            (o, examined, iterations * chains, rej, Some(seed))
        }
        Mode::FamilyRestricted => {
            return Err(VerifyError::Unsupported("family-restricted mode applies to the class-maximum check".into()))
        }
    };
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        check,
        params: *p,
        mode: opts.mode,
        seed,
        search_space_size: size,
        examined,
        rejections: rejected,
        rho_max: outcome.rho_max,
        passed: outcome.matches && outcome.counterexamples.is_empty() && examined > 0,
        maximizers: outcome.maximizers,
        maximizer_labelings: outcome.labelings,
        unique_up_to_iso: outcome.unique,
        construction: encode_graph6(construction),
        construction_rho,
        matches_construction: outcome.matches,
        runner_up_gap: outcome.runner_up_gap,
        counterexamples: outcome.counterexamples,
        flags,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Checks that the vertex-connectivity construction is the unique
/// `rho`-maximiser of its class.
pub fn verify_vertex_extremal(p: &ExtremalParams, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let g = g_kappa(p)?.graph;
    verify_class(Check::VertexExtremal, p, &g, opts)
}

/// Checks that the edge-connectivity construction is the unique
/// `rho`-maximiser of its class. Family-restricted mode delegates to
/// [`verify_class_maximum`].
pub fn verify_edge_extremal(p: &ExtremalParams, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    if opts.mode == Mode::FamilyRestricted {
        return verify_class_maximum(p, opts);
    }
    let g = b_lambda(p)?.graph;
    verify_class(Check::EdgeExtremal, p, &g, opts)
}

/// Enumerates every structured class member (all `t` and attachments) and
/// checks that the maximum `rho` is attained only by the edge construction.
pub fn verify_class_maximum(p: &ExtremalParams, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let cfg = &opts.cfg;
    cfg.validate()?;
    if p.kind != ConnectivityKind::Edge || p.value < p.r {
        return Err(ParamError::Infeasible(format!("lambda >= r violated: lambda = {}, r = {}", p.value, p.r)).into());
    }
    let eps = cfg.comparison_epsilon;
    let construction = b_lambda(p)?.graph;
    let construction_rho = spectral_radius(&construction, cfg)?;
    let attachments = k_family_attachments(p)?;
    let mut members: Vec<(f64, Graph)> = Vec::new();
    let mut not_members = 0u64;
    for (t, att) in &attachments {
        match k_family(p, *t, att) {
            Ok(f) => members.push((spectral_radius(&f.graph, cfg)?, f.graph)),
            Err(FamilyError::NotAMember(_)) => not_members += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let top = members.iter().map(|m| m.0).fold(f64::NEG_INFINITY, f64::max);
    let runner_up = members.iter().map(|m| m.0).filter(|&r| r < top - eps).fold(None, |a: Option<f64>, r| {
        Some(a.map_or(r, |a| a.max(r)))
    });
    let band: Vec<(f64, Graph)> = members.iter().filter(|m| m.0 >= top - eps).cloned().collect();
    let in_class = members.iter().any(|(_, g)| are_isomorphic(g, &construction).unwrap_or(false));
    let o = judge(&band, runner_up, &construction, construction_rho, in_class, eps, true)?;
    let mut rejected = BTreeMap::new();
    rejected.insert("not_a_member".to_string(), not_members);
    let examined = members.len() as u64;
    Ok(VerificationReport {
        schema_version: REPORT_SCHEMA_VERSION,
        check: Check::ClassMaximum,
        params: *p,
        mode: Mode::FamilyRestricted,
        seed: None,
        search_space_size: attachments.len() as u64,
        examined,
        rejections: rejected,
        rho_max: o.rho_max,
        passed: o.matches && o.counterexamples.is_empty() && examined > 0,
        maximizers: o.maximizers,
        maximizer_labelings: o.labelings,
        unique_up_to_iso: o.unique,
        construction: encode_graph6(&construction),
        construction_rho,
        matches_construction: o.matches,
        runner_up_gap: o.runner_up_gap,
        counterexamples: o.counterexamples,
        flags: base_flags(p),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
    })
}
