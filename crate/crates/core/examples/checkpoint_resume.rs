//! Interrupting an exhaustive sweep and resuming it from its checkpoint.

use std::error::Error;

use spectral_extremal::families::ExtremalParams;
use spectral_extremal::verify::{verify_vertex_extremal, Mode, VerifyError, VerifyOptions};

fn main() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("spex-checkpoint-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("shards.jsonl");
    let p = ExtremalParams::vertex(7, 2, 1, 2, 1)?;

    let mut opts = VerifyOptions::new(Mode::Exhaustive);
    opts.checkpoint = Some(&path);
    opts.shard_budget = Some(100);
    match verify_vertex_extremal(&p, &opts) {
        Err(VerifyError::Incomplete { done, total }) => println!("stopped after {done} of {total} shards"),
        other => println!("unexpected: {other:?}"),
    }
    println!("checkpoint holds {} lines", std::fs::read_to_string(&path)?.lines().count());

    opts.shard_budget = None;
    let resumed = verify_vertex_extremal(&p, &opts)?;
    let fresh = verify_vertex_extremal(&p, &VerifyOptions::new(Mode::Exhaustive))?;
    println!("resumed run matches a fresh one: {}", resumed.deterministic_json() == fresh.deterministic_json());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
