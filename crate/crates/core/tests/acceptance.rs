//! One line per acceptance criterion. Set `SPEX_LONG_RUNNING=1` to replace
//! the neighbourhood check at order 8 with full exhaustion and to run the
//! full order-8 edge sweep.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use spectral_extremal::conn::{lambda_h_r, lambda_oracle};
use spectral_extremal::families::{b_lambda, g_kappa, k_family, k_family_attachments, ExtremalParams, Regime};
use spectral_extremal::graph::{are_isomorphic, decode_graph6, Graph};
use spectral_extremal::spectral::{perron, SpectralConfig};
use spectral_extremal::verify::{
    bracket_sweep, hsf_sweep, verify_class_maximum, verify_edge_extremal, verify_vertex_extremal, Mode,
    VerificationReport, VerifyOptions,
};

const EPS: f64 = 1e-9;
const GAP: f64 = 1e-6;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn long_running() -> bool {
    std::env::var("SPEX_LONG_RUNNING").is_ok_and(|v| v == "1")
}

fn cfg() -> SpectralConfig {
    SpectralConfig::default()
}

fn vertex(n: usize, r: usize, h: usize, delta: usize, kappa: usize) -> ExtremalParams {
    ExtremalParams::vertex(n, r, h, delta, kappa).expect("feasible vertex parameters")
}

fn edge(n: usize, r: usize, h: usize, delta: usize, lambda: usize) -> ExtremalParams {
    ExtremalParams::edge(n, r, h, delta, lambda).expect("feasible edge parameters")
}

fn exhaustive(long: bool) -> VerifyOptions<'static> {
    let mut o = VerifyOptions::new(Mode::Exhaustive);
    o.long_running = long;
    o
}

fn maximizer_is_construction(r: &VerificationReport, construction: &Graph) -> Result<(), String> {
    ensure(r.unique_up_to_iso, format!("{} maximizer classes", r.maximizers.len()))?;
    let g = decode_graph6(&r.maximizers[0]).map_err(|e| e.to_string())?;
    ensure(are_isomorphic(&g, construction).map_err(|e| e.to_string())?, "maximizer differs from the construction")?;
    ensure(r.matches_construction && r.passed, "report not passed")
}

fn within(budget_secs: u64, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    ensure(spent <= Duration::from_secs(budget_secs), format!("took {spent:.1?}, budget {budget_secs}s"))
}

fn vertex_small_orders() -> Outcome {
    let mut notes = Vec::new();
    for (p, budget) in [(vertex(6, 2, 1, 1, 1), 10), (vertex(7, 2, 1, 2, 1), 300)] {
        let start = Instant::now();
        let r = verify_vertex_extremal(&p, &exhaustive(false)).map_err(|e| e.to_string())?;
        maximizer_is_construction(&r, &g_kappa(&p).unwrap().graph)?;
        let gap = r.runner_up_gap.ok_or("no runner-up")?;
        ensure(gap > GAP, format!("runner-up gap {gap}"))?;
        within(budget, start)?;
        notes.push(format!("n={}: {} members, gap {gap:.4}", p.n, r.examined));
    }
    Ok(notes.join("; "))
}

fn vertex_regimes() -> Outcome {
    let long = long_running();
    let cases = [
        (vertex(6, 2, 1, 1, 1), Regime::DeltaAtMostKappa, Mode::Exhaustive),
        (
            vertex(8, 2, 2, 2, 1),
            Regime::DeltaBelowKappaPlusH,
            if long { Mode::Exhaustive } else { Mode::Neighborhood { radius: 2 } },
        ),
        (vertex(7, 2, 1, 2, 1), Regime::DeltaAtLeastKappaPlusH, Mode::Exhaustive),
    ];
    let mut notes = Vec::new();
    for (p, regime, mode) in cases {
        let f = g_kappa(&p).unwrap();
        ensure(f.regime == regime, format!("{p:?} built as {:?}", f.regime))?;
        let mut opts = VerifyOptions::new(mode);
        opts.long_running = long;
        let r = verify_vertex_extremal(&p, &opts).map_err(|e| e.to_string())?;
        ensure(r.matches_construction && r.passed, format!("{p:?}: {}", r.deterministic_json()))?;
        let how = match mode {
            Mode::Neighborhood { radius } => format!("edit distance {radius}"),
            _ => "exhaustive".into(),
        };
        notes.push(format!("{:?} {how} ({} members)", regime, r.examined));
    }
    Ok(notes.join("; "))
}

fn edge_order_eight() -> Outcome {
    let start = Instant::now();
    let p = edge(8, 2, 1, 1, 1);
    let b = b_lambda(&p).unwrap();
    let g = &b.graph;
    ensure(g.order() == 8 && g.min_degree() == 1, "order or minimum degree")?;
    ensure(lambda_oracle(g, 2, 1).map_err(|e| e.to_string())? == Some(1), "oracle edge value")?;
    ensure(lambda_h_r(g, 2, 1).map_err(|e| e.to_string())?.value() == Some(1), "primary edge value")?;
    let rho = perron(g, &cfg()).unwrap().rho;
    ensure(rho > 5.0, format!("rho {rho} not above 5"))?;
    let opts = VerifyOptions::new(Mode::Randomized { iterations: 100_000, seed: 1, chains: 10 });
    let r = verify_edge_extremal(&p, &opts).map_err(|e| e.to_string())?;
    ensure(r.counterexamples.is_empty() && r.passed, format!("counterexamples {:?}", r.counterexamples))?;
    ensure(r.rho_max.unwrap() <= r.construction_rho + EPS, "sampled rho above construction")?;
    within(300, start)?;
    let mut note = format!("rho(B) = {rho:.6}, {} in-class proposals over seeds 1..=10", r.examined);
    if long_running() {
        let full = verify_edge_extremal(&p, &exhaustive(true)).map_err(|e| e.to_string())?;
        maximizer_is_construction(&full, g)?;
        note.push_str(&format!(", full sweep {} members", full.examined));
    }
    Ok(note)
}

fn class_maximum() -> Outcome {
    let start = Instant::now();
    let p = edge(12, 2, 1, 1, 2);
    let r = verify_class_maximum(&p, &VerifyOptions::new(Mode::FamilyRestricted)).map_err(|e| e.to_string())?;
    let top = r.rho_max.ok_or("no members")?;
    ensure((top - r.construction_rho).abs() <= EPS, format!("max {top} vs construction {}", r.construction_rho))?;
    maximizer_is_construction(&r, &b_lambda(&p).unwrap().graph)?;
    within(60, start)?;
    Ok(format!("{} members, rho_max {top:.9}", r.examined))
}

fn degree_bound_sweep() -> Outcome {
    let start = Instant::now();
    let s = hsf_sweep(6, &cfg()).map_err(|e| e.to_string())?;
    ensure(s.violations.is_empty(), format!("{:?}", s.violations))?;
    within(60, start)?;
    Ok(format!("{} connected graphs, {} equality cases", s.connected_graphs, s.equality_cases))
}

fn perron_entry_properties() -> Outcome {
    let c = cfg();
    let suites = [
        ("shift", common::shift_trials(1, 1000, &c)),
        ("domination", common::domination_trials(2, 1000, &c)),
        ("twins", common::twin_trials(3, 1000, &c)),
        ("edge removal", common::edge_removal_trials(4, 1000, &c)),
    ];
    for (name, t) in &suites {
        ensure(t.run == 1000, format!("{name}: {} trials", t.run))?;
        ensure(t.ok(), format!("{name}: {:?}", t.violations.first()))?;
    }
    Ok(suites.iter().map(|(n, t)| format!("{n} {}", t.checks)).collect::<Vec<_>>().join(", ") + " checks")
}

fn bracket() -> Outcome {
    let start = Instant::now();
    let mut params = Vec::new();
    for (lambda, h, r, n) in [(1, 1, 2, 8), (2, 1, 2, 12), (2, 1, 3, 18), (2, 2, 2, 27)] {
        for delta in 1..=h {
            params.push(edge(n, r, h, delta, lambda));
        }
    }
    let rows = bracket_sweep(&params, &cfg()).map_err(|e| e.to_string())?;
    let mut members = 0;
    for row in &rows {
        ensure(row.violations.is_empty(), format!("{:?}: {:?}", row.params, row.violations))?;
        members += row.members;
    }
    within(60, start)?;
    Ok(format!("{members} members over {} parameter sets", rows.len()))
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let t = common::crossval_trials(2024, 500);
    ensure(t.ok(), format!("{:?}", t.violations.first()))?;
    within(600, start)?;
    Ok(format!("{} graphs, {} comparisons", t.run, t.checks))
}

fn numerical_baseline() -> Outcome {
    let c = cfg();
    for n in 2..=50 {
        let rho = perron(&Graph::complete(n).unwrap(), &c).unwrap().rho;
        ensure((rho - (n - 1) as f64).abs() <= EPS, format!("K_{n}: {rho}"))?;
    }
    for n in 3..=50 {
        let rho = perron(&Graph::cycle(n).unwrap(), &c).unwrap().rho;
        ensure((rho - 2.0).abs() <= EPS, format!("C_{n}: {rho}"))?;
    }
    let mut families = Vec::new();
    for p in [vertex(6, 2, 1, 1, 1), vertex(7, 2, 1, 2, 1), vertex(8, 2, 2, 2, 1), vertex(7, 2, 1, 1, 1)] {
        families.push((p, g_kappa(&p).unwrap()));
    }
    for p in [edge(8, 2, 1, 1, 1), edge(12, 2, 1, 1, 2), edge(18, 3, 1, 1, 2), edge(27, 2, 2, 1, 2), edge(27, 2, 2, 2, 2)] {
        families.push((p, b_lambda(&p).unwrap()));
        for (t, att) in k_family_attachments(&p).unwrap() {
            if let Ok(f) = k_family(&p, t, &att) {
                families.push((p, f));
            }
        }
    }
    for (p, f) in &families {
        let check = f.check(p, &c).map_err(|e| e.to_string())?;
        let q = check.quotient_rho.ok_or(format!("{p:?}: {} orbit cells", check.quotient_cells))?;
        ensure((q - check.rho).abs() <= EPS, format!("{p:?}: quotient {q} vs {}", check.rho))?;
    }
    Ok(format!("{} family members", families.len()))
}

fn cli_report(args: &[&str], threads: &str) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_spex"))
        .args(args)
        .args(["--threads", threads])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), String::from_utf8_lossy(&out.stderr))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok(text.lines().filter(|l| !l.contains("\"wall_clock_seconds\"")).collect::<Vec<_>>().join("\n"))
}

fn thread_determinism() -> Outcome {
    let runs: [&[&str]; 3] = [
        &["verify", "--theorem", "1.2", "--n", "6", "--r", "2", "--h", "1", "--delta", "1", "--kappa", "1"],
        &["verify", "--theorem", "1.2", "--n", "7", "--r", "2", "--h", "1", "--delta", "2", "--kappa", "1"],
        &[
            "verify", "--theorem", "1.3", "--n", "8", "--r", "2", "--h", "1", "--delta", "1", "--lambda", "1", "--mode",
            "randomized", "--iterations", "100000", "--seed", "1", "--chains", "10",
        ],
    ];
    for args in runs {
        let (a, b) = (cli_report(args, "1")?, cli_report(args, "4")?);
        ensure(a == b, format!("reports differ for {}", args.join(" ")))?;
    }
    Ok("3 reports identical at 1 and 4 threads".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("vertex extremal graph, exhaustive at n = 6 and 7", vertex_small_orders),
        ("vertex extremal graph, one check per regime", vertex_regimes),
        ("edge extremal graph at n = 8: self-check, rho > 5, adversary", edge_order_eight),
        ("class maximum at (12, 2, 1, 1, 2)", class_maximum),
        ("degree bound over connected graphs with n <= 6", degree_bound_sweep),
        ("Perron entry property suites, 1000 trials each", perron_entry_properties),
        ("component bracket on class members", bracket),
        ("conditional connectivity vs oracles, 500 graphs", oracle_agreement),
        ("numerical baseline and quotient agreement", numerical_baseline),
        ("thread count leaves reports byte-identical", thread_determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("PASS {:>2}. {name} ({note}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
