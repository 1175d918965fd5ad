//! Full run from a configuration document into a directory of artifacts.
//!
//! Usage: `cargo run --example pipeline [OUT_DIR]`

use std::path::PathBuf;

use vsqec::pipeline::{run_pipeline, RunConfig};

fn main() -> vsqec::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "vsqec-out".into());
    let config = RunConfig { output_dir: PathBuf::from(&out), ..RunConfig::default() };
    println!("config:\n{}", config.to_json());
    let manifest = run_pipeline(&config)?;
    for (name, digest) in &manifest.artifacts {
        println!("{out}/{name}  sha256 {}", &digest[..16]);
    }
    Ok(())
}
