//! Named structures built from the axiom predicates.

mod hypermodule;
mod ring;
mod single;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::axioms::{AxiomResult, Witness};

pub use hypermodule::{check_hypermodule, HypermoduleError};
pub use ring::{classify_two_op, satisfies_two_op};
pub use single::{classify_single, satisfies_single, satisfies_single_at};

/// Stable structure identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Structure {
    PartialHypergroupoid,
    Hypergroupoid,
    Semihypergroup,
    Quasihypergroup,
    Hypergroup,
    Group,
    HvGroup,
    LaHypergroup,
    RaHypergroup,
    QmpHypergroup,
    MPolysymmetricalHypergroup,
    NormalHypergroup,
    CanonicalHypergroup,
    QuasicanonicalHypergroup,
    KrasnerHyperring,
    UnitaryHyperring,
    Hyperfield,
    HyperfieldDef15,
    MultiplicativeHyperringDef6,
    MultiplicativeHyperringDef7,
    MPolysymmetricalHyperring,
}

impl Structure {
    pub const SINGLE: [Structure; 14] = [
        Structure::PartialHypergroupoid,
        Structure::Hypergroupoid,
        Structure::Semihypergroup,
        Structure::Quasihypergroup,
        Structure::Hypergroup,
        Structure::Group,
        Structure::HvGroup,
        Structure::LaHypergroup,
        Structure::RaHypergroup,
        Structure::QmpHypergroup,
        Structure::MPolysymmetricalHypergroup,
        Structure::NormalHypergroup,
        Structure::CanonicalHypergroup,
        Structure::QuasicanonicalHypergroup,
    ];

    pub const TWO_OP: [Structure; 7] = [
        Structure::KrasnerHyperring,
        Structure::UnitaryHyperring,
        Structure::Hyperfield,
        Structure::HyperfieldDef15,
        Structure::MultiplicativeHyperringDef6,
        Structure::MultiplicativeHyperringDef7,
        Structure::MPolysymmetricalHyperring,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Structure::PartialHypergroupoid => "partial-hypergroupoid",
            Structure::Hypergroupoid => "hypergroupoid",
            Structure::Semihypergroup => "semihypergroup",
            Structure::Quasihypergroup => "quasihypergroup",
            Structure::Hypergroup => "hypergroup",
            Structure::Group => "group",
            Structure::HvGroup => "hv-group",
            Structure::LaHypergroup => "la-hypergroup",
            Structure::RaHypergroup => "ra-hypergroup",
            Structure::QmpHypergroup => "qmp-hypergroup",
            Structure::MPolysymmetricalHypergroup => "m-polysymmetrical-hypergroup",
            Structure::NormalHypergroup => "normal-hypergroup",
            Structure::CanonicalHypergroup => "canonical-hypergroup",
            Structure::QuasicanonicalHypergroup => "quasicanonical-hypergroup",
            Structure::KrasnerHyperring => "krasner-hyperring",
            Structure::UnitaryHyperring => "unitary-hyperring",
            Structure::Hyperfield => "hyperfield",
            Structure::HyperfieldDef15 => "hyperfield-def15",
            Structure::MultiplicativeHyperringDef6 => "multiplicative-hyperring-def6",
            Structure::MultiplicativeHyperringDef7 => "multiplicative-hyperring-def7",
            Structure::MPolysymmetricalHyperring => "m-polysymmetrical-hyperring",
        }
    }

    /// Defined relative to an identity or zero element.
    pub fn is_pointed(self) -> bool {
        use Structure::*;
        matches!(
            self,
            QmpHypergroup
                | MPolysymmetricalHypergroup
                | NormalHypergroup
                | CanonicalHypergroup
                | QuasicanonicalHypergroup
        )
    }

    pub fn is_two_op(self) -> bool {
        Structure::TWO_OP.contains(&self)
    }
}

impl std::str::FromStr for Structure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Structure::SINGLE
            .into_iter()
            .chain(Structure::TWO_OP)
            .find(|x| x.id() == s)
            .ok_or_else(|| format!("unknown structure `{s}`"))
    }
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// One axiom verdict inside a classification. `at` names the constant
/// (identity or zero candidate) the axiom was evaluated against.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<usize>,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomVerdict {
    pub fn new(axiom: impl Into<String>, r: AxiomResult) -> Self {
        AxiomVerdict {
            axiom: axiom.into(),
            at: None,
            holds: r.holds,
            witness: r.witness,
        }
    }

    pub fn at(mut self, c: usize) -> Self {
        self.at = Some(c);
        self
    }

    /// A failed requirement that has no element instance.
    pub fn missing(axiom: impl Into<String>) -> Self {
        AxiomVerdict {
            axiom: axiom.into(),
            at: None,
            holds: false,
            witness: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub labels: BTreeSet<String>,
    pub evidence: BTreeMap<String, Vec<AxiomVerdict>>,
    pub constants: BTreeMap<String, Value>,
}

impl ClassificationReport {
    pub fn has(&self, s: Structure) -> bool {
        self.labels.contains(s.id())
    }

    pub(crate) fn record(&mut self, label: &str, holds: bool, verdicts: Vec<AxiomVerdict>) {
        if holds {
            self.labels.insert(label.to_string());
        }
        self.evidence.insert(label.to_string(), verdicts);
    }
}

/// Implications between labels that every report must respect. The two
/// flags describe the classified table (for two-operation reports, pass
/// the additive table's).
pub fn lattice_violations(
    labels: &BTreeSet<String>,
    single_valued: bool,
    commutative: bool,
) -> Vec<String> {
    let has = |s: Structure| labels.contains(s.id());
    let mut out = Vec::new();
    let mut need = |cond: bool, what: &str| {
        if !cond {
            out.push(what.to_string());
        }
    };
    use Structure::*;
    need(
        has(Group) == (has(Hypergroup) && single_valued),
        "group <=> hypergroup with singleton cells",
    );
    need(!has(Hypergroup) || has(HvGroup), "hypergroup => hv-group");
    need(
        !has(Hypergroup) || (has(Quasihypergroup) && has(Semihypergroup) && has(Hypergroupoid)),
        "hypergroup => quasihypergroup, semihypergroup, hypergroupoid",
    );
    need(
        !(has(PartialHypergroupoid) && has(Hypergroupoid)),
        "hypergroupoid and partial-hypergroupoid exclude each other",
    );
    need(
        !has(CanonicalHypergroup) || has(QuasicanonicalHypergroup),
        "canonical => quasicanonical",
    );
    need(
        !has(CanonicalHypergroup) || has(NormalHypergroup),
        "canonical => normal",
    );
    need(
        has(CanonicalHypergroup) == (has(QuasicanonicalHypergroup) && commutative),
        "canonical <=> quasicanonical and commutative",
    );
    need(
        has(MPolysymmetricalHypergroup) == (has(QmpHypergroup) && commutative),
        "m-polysymmetrical <=> qmp and commutative",
    );
    need(
        !has(QmpHypergroup) || has(Hypergroup),
        "qmp-hypergroup => hypergroup",
    );
    need(
        !has(HyperfieldDef15) || has(Hyperfield),
        "hyperfield-def15 => hyperfield",
    );
    need(
        !has(Hyperfield) || has(HyperfieldDef15),
        "hyperfield => hyperfield-def15",
    );
    need(
        !has(Hyperfield) || has(UnitaryHyperring),
        "hyperfield => unitary-hyperring",
    );
    need(
        !has(UnitaryHyperring) || has(KrasnerHyperring),
        "unitary-hyperring => krasner-hyperring",
    );
    need(
        !has(MultiplicativeHyperringDef6) || has(MultiplicativeHyperringDef7),
        "def6 multiplicative hyperring => def7",
    );
    need(
        !has(MultiplicativeHyperringDef7) || has(MultiplicativeHyperringDef6),
        "def7 multiplicative hyperring => def6",
    );
    out
}
