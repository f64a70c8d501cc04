//! Regenerate the committed enumeration catalog. Every count that an
//! unpruned run can reach is certified by one.
//!
//!     cargo run --release -p hyperlab-core --example regen_golden [out.json]

use hyperlab::enumerate::{default_jobs, golden_generate};
use hyperlab::search::SearchConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/golden.json").into());
    let catalog = golden_generate(&default_jobs(), SearchConfig::default())?;
    for e in &catalog.entries {
        eprintln!(
            "{:<48} raw {:>8} canonical {:>6} {}",
            e.name, e.raw_count, e.canonical_count, e.certified_by
        );
    }
    std::fs::write(&out, serde_json::to_string_pretty(&catalog)? + "\n")?;
    Ok(())
}
