//! Exhaustive verification of the structural theorems at small orders.
//!
//! Each verifier sweeps every model satisfying a premise set, checks the
//! conclusion on each, and on request looks for models showing that no
//! premise can be dropped.

mod catalog;
mod module;
mod props;
mod ring;
mod single;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::axioms::Witness;
use crate::search::SearchConfig;

pub use props::{qmp_properties, PROPERTY_IDS};
pub use single::search_independence;

/// Largest order at which any verifier runs in oracle mode.
pub const ORACLE_CAP: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    T2,
    T3,
    T6,
    T7,
    T9,
    T11,
    T13,
    T24,
    QmpSuite,
    T25,
    T26,
    T27,
    T28,
    T29,
}

impl Theorem {
    pub const ALL: [Theorem; 14] = [
        Theorem::T2,
        Theorem::T3,
        Theorem::T6,
        Theorem::T7,
        Theorem::T9,
        Theorem::T11,
        Theorem::T13,
        Theorem::T24,
        Theorem::QmpSuite,
        Theorem::T25,
        Theorem::T26,
        Theorem::T27,
        Theorem::T28,
        Theorem::T29,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T6 => "T6",
            Theorem::T7 => "T7",
            Theorem::T9 => "T9",
            Theorem::T11 => "T11",
            Theorem::T13 => "T13",
            Theorem::T24 => "T24",
            Theorem::QmpSuite => "P14-P23",
            Theorem::T25 => "T25",
            Theorem::T26 => "T26",
            Theorem::T27 => "T27",
            Theorem::T28 => "T28",
            Theorem::T29 => "T29",
        }
    }

    /// Largest order the verifier accepts.
    pub fn max_order(self) -> usize {
        match self {
            Theorem::T2 | Theorem::T3 | Theorem::T7 | Theorem::T9 | Theorem::T11 => 3,
            _ => 4,
        }
    }

    /// What the sweep establishes, in words.
    pub fn statement(self) -> &'static str {
        match self {
            Theorem::T2 => "associative composition tables: reproductive iff identity and inverses",
            Theorem::T3 => "associative and reproductive implies no empty cell",
            Theorem::T6 => "abelian additive group, non-degenerate associative product, inclusion distributivity and sign rule imply no empty product",
            Theorem::T7 => "weakly associative implies no empty cell",
            Theorem::T9 => "left or right inverted associative and reproductive implies no empty cell",
            Theorem::T11 => "reproductive iff every induced division is non-empty",
            Theorem::T13 => "associative with neutral element and polysymmetry implies reproductive",
            Theorem::T24 => "associative with neutral element and polysymmetry implies reversibility",
            Theorem::QmpSuite => "associative with neutral element and polysymmetry implies the class and symmetric-set properties",
            Theorem::T25 => "canonical additive axioms imply a hypergroup",
            Theorem::T26 => "canonical additive axioms imply x + 0 = {x}",
            Theorem::T27 => "associative, commutative, unique opposites: reversibility iff -(z + w) = -z - w",
            Theorem::T28 => "hyperfield axioms without reversibility imply reversibility",
            Theorem::T29 => "a commutative normal hypermodule over a unitary hyperring has canonical additive part",
        }
    }
}

impl std::str::FromStr for Theorem {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, VerifyError> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| VerifyError::UnknownTheorem(s.to_string()))
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("unknown premise or conclusion `{0}`")]
    UnknownId(String),
    #[error("{theorem} accepts orders 1..={cap}, got {order}")]
    OrderOutOfRange {
        theorem: String,
        order: usize,
        cap: usize,
    },
    #[error("oracle mode is offered up to order {cap}")]
    OracleCap { cap: usize },
    #[error("a reported model failed revalidation: {0}")]
    Revalidation(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Look for a model for each dropped premise.
    pub drop_premises: bool,
    /// Sweep the raw space with no pruning.
    pub oracle: bool,
    /// Add commutativity to the polysymmetrical premise sets.
    pub commutative: bool,
    pub workers: usize,
}

impl VerifyOptions {
    pub(crate) fn search(&self) -> SearchConfig {
        SearchConfig::new(self.workers)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Pruned,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub model: String,
    /// The identity or zero the premises were evaluated against.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<usize>,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Independence {
    pub dropped: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<Counterexample>,
    /// Set when no such model exists at this order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub none_at_order: Option<usize>,
    /// Set when the relaxed space was not swept, with the reason.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub not_searched: Option<String>,
}

impl Independence {
    pub(crate) fn found(dropped: &str, model: Counterexample) -> Self {
        Independence {
            dropped: dropped.into(),
            model: Some(model),
            none_at_order: None,
            not_searched: None,
        }
    }

    pub(crate) fn none(dropped: &str, order: usize) -> Self {
        Independence {
            dropped: dropped.into(),
            model: None,
            none_at_order: Some(order),
            not_searched: None,
        }
    }

    pub(crate) fn skipped(dropped: &str, reason: impl Into<String>) -> Self {
        Independence {
            dropped: dropped.into(),
            model: None,
            none_at_order: None,
            not_searched: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub statement: String,
    pub order: usize,
    pub mode: Mode,
    pub space_size: u128,
    pub premise_models: u64,
    pub conclusion_holds: bool,
    pub counterexample: Option<Counterexample>,
    pub independence_witnesses: Vec<Independence>,
    pub details: BTreeMap<String, Value>,
    /// Seconds.
    pub wall_time: f64,
}

impl VerificationReport {
    /// JSON with the wall time removed, for comparing runs.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_time");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

/// Partial report produced by a verifier; `verify` fills in the rest.
#[derive(Clone, Debug, Default)]
pub(crate) struct Outcome {
    pub space_size: u128,
    pub premise_models: u64,
    pub counterexample: Option<Counterexample>,
    pub independence: Vec<Independence>,
    pub details: BTreeMap<String, Value>,
}

pub fn verify(
    theorem: Theorem,
    order: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    let cap = theorem.max_order();
    if order == 0 || order > cap {
        return Err(VerifyError::OrderOutOfRange {
            theorem: theorem.id().into(),
            order,
            cap,
        });
    }
    if opts.oracle && order > ORACLE_CAP {
        return Err(VerifyError::OracleCap { cap: ORACLE_CAP });
    }
    let start = Instant::now();
    let out = match theorem {
        Theorem::T6 => ring::verify_t6(order, opts)?,
        Theorem::T28 => ring::verify_t28(order, opts)?,
        Theorem::T29 => module::verify_t29(order, opts)?,
        _ => catalog::verify_single(theorem, order, opts)?,
    };
    debug_assert!(out.premise_models as u128 <= out.space_size);
    Ok(VerificationReport {
        theorem: theorem.id().into(),
        statement: theorem.statement().into(),
        order,
        mode: if opts.oracle {
            Mode::Oracle
        } else {
            Mode::Pruned
        },
        space_size: out.space_size,
        premise_models: out.premise_models,
        conclusion_holds: out.counterexample.is_none(),
        counterexample: out.counterexample,
        independence_witnesses: out.independence,
        details: out.details,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// Verify by string id.
pub fn verify_id(
    id: &str,
    order: usize,
    opts: &VerifyOptions,
) -> Result<VerificationReport, VerifyError> {
    verify(id.parse()?, order, opts)
}
