//! Committed model counts and their regression check.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{enumerate, EnumerateError, EnumerationJob, EnumerationSummary};
use crate::search::SearchConfig;

/// The committed catalog, `data/golden.json`.
pub const CATALOG: &str = include_str!("../../data/golden.json");

/// Jobs up to this order are re-checked in oracle mode.
const CHECK_ORACLE_UP_TO: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenEntry {
    pub name: String,
    pub job: EnumerationJob,
    pub raw_count: u64,
    pub canonical_count: u64,
    /// `oracle` when an unpruned run produced the same counts, `pruned`
    /// when only the pruned search is feasible.
    pub certified_by: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenCatalog {
    pub entries: Vec<GoldenEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenResult {
    pub name: String,
    pub mode: String,
    pub expected: (u64, u64),
    pub actual: (u64, u64),
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenReport {
    pub pass: bool,
    pub results: Vec<GoldenResult>,
}

impl GoldenReport {
    pub fn failures(&self) -> impl Iterator<Item = &GoldenResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GoldenError {
    #[error("cannot read catalog {}: {source}", path.display())]
    Missing {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("corrupt catalog: {0}")]
    Corrupt(#[from] serde_json::Error),
    #[error("job `{name}`: {source}")]
    Job {
        name: String,
        source: EnumerateError,
    },
    #[error("job `{name}`: pruned counts {pruned:?} differ from oracle counts {oracle:?}")]
    OracleMismatch {
        name: String,
        pruned: (u64, u64),
        oracle: (u64, u64),
    },
}

fn counts(s: &EnumerationSummary) -> (u64, u64) {
    (s.raw_count, s.canonical_count)
}

fn run(name: &str, job: &EnumerationJob, cfg: SearchConfig) -> Result<(u64, u64), GoldenError> {
    enumerate(job, cfg, None)
        .map(|s| counts(&s))
        .map_err(|source| GoldenError::Job {
            name: name.to_string(),
            source,
        })
}

/// Count every job with the pruned search and, where the raw space is
/// small enough, certify the counts with an oracle run.
pub fn golden_generate(
    jobs: &[(String, EnumerationJob)],
    cfg: SearchConfig,
) -> Result<GoldenCatalog, GoldenError> {
    let mut entries = Vec::with_capacity(jobs.len());
    for (name, job) in jobs {
        let job = job.clone().oracle(false);
        let pruned = run(name, &job, cfg)?;
        let certified_by = match enumerate(&job.clone().oracle(true), cfg, None) {
            Ok(s) if counts(&s) == pruned => "oracle",
            Ok(s) => {
                return Err(GoldenError::OracleMismatch {
                    name: name.clone(),
                    pruned,
                    oracle: counts(&s),
                })
            }
            Err(EnumerateError::OracleCap { .. }) => "pruned",
            Err(source) => {
                return Err(GoldenError::Job {
                    name: name.clone(),
                    source,
                })
            }
        };
        entries.push(GoldenEntry {
            name: name.clone(),
            job,
            raw_count: pruned.0,
            canonical_count: pruned.1,
            certified_by: certified_by.into(),
        });
    }
    Ok(GoldenCatalog { entries })
}

/// Re-run every entry (oracle mode up to order 2) and compare counts.
pub fn check_catalog(
    catalog: &GoldenCatalog,
    cfg: SearchConfig,
) -> Result<GoldenReport, GoldenError> {
    let mut results = Vec::with_capacity(catalog.entries.len());
    for e in &catalog.entries {
        let oracle = e.job.order <= CHECK_ORACLE_UP_TO;
        let actual = run(&e.name, &e.job.clone().oracle(oracle), cfg)?;
        let expected = (e.raw_count, e.canonical_count);
        results.push(GoldenResult {
            name: e.name.clone(),
            mode: if oracle { "oracle" } else { "pruned" }.into(),
            expected,
            actual,
            pass: expected == actual,
        });
    }
    Ok(GoldenReport {
        pass: results.iter().all(|r| r.pass),
        results,
    })
}

pub fn golden_check(path: &Path, cfg: SearchConfig) -> Result<GoldenReport, GoldenError> {
    let text = std::fs::read_to_string(path).map_err(|source| GoldenError::Missing {
        path: path.into(),
        source,
    })?;
    let catalog: GoldenCatalog = serde_json::from_str(&text)?;
    check_catalog(&catalog, cfg)
}

/// The jobs behind the committed catalog.
pub fn default_jobs() -> Vec<(String, EnumerationJob)> {
    let mut jobs = Vec::new();
    let mut add = |job: EnumerationJob| {
        let mut name = format!("n{}:{}", job.order, job.constraints.join("+"));
        if job.constraints.is_empty() {
            name.push_str("unconstrained");
        }
        if let Some(z) = job.zero {
            name.push_str(&format!(":zero={z}"));
        }
        if let Some(o) = job.one {
            name.push_str(&format!(":one={o}"));
        }
        if job.up_to_iso {
            name.push_str(":iso");
        }
        jobs.push((name, job));
    };
    // counts do not depend on `up_to_iso`, so every job asks for classes
    for s in [&[][..], &["hypergroupoid"], &["hv-group"]] {
        add(EnumerationJob::new(2, s).up_to_iso());
    }
    for n in 2..=3 {
        for s in ["semihypergroup", "hypergroup", "la-hypergroup", "group"] {
            add(EnumerationJob::new(n, &[s]).up_to_iso());
        }
        for s in [
            "qmp-hypergroup",
            "canonical-hypergroup",
            "quasicanonical-hypergroup",
            "normal-hypergroup",
        ] {
            add(EnumerationJob::new(n, &[s]).up_to_iso());
            add(EnumerationJob::new(n, &[s]).pins(Some(0), None).up_to_iso());
        }
        for s in ["hyperfield", "hyperfield-def15"] {
            add(EnumerationJob::new(n, &[s])
                .pins(Some(0), Some(1))
                .up_to_iso());
        }
        for s in [
            "krasner-hyperring",
            "m-polysymmetrical-hyperring",
            "multiplicative-hyperring-def7",
        ] {
            add(EnumerationJob::new(n, &[s]).up_to_iso());
        }
    }
    for s in ["canonical-hypergroup", "normal-hypergroup"] {
        add(EnumerationJob::new(4, &[s]).up_to_iso());
        add(EnumerationJob::new(4, &[s]).pins(Some(0), None).up_to_iso());
    }
    add(EnumerationJob::new(4, &["hyperfield"])
        .pins(Some(0), Some(1))
        .up_to_iso());
    jobs
}
