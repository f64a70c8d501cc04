//! Premise sets and conclusions of the single-table theorems.

use serde_json::{json, Value};

use super::single::{outcome, table_text, Branch, Premise, SingleSpec};
use super::{props, Outcome, Theorem, VerifyError, VerifyOptions};
use crate::axioms::{
    check_neutral, check_opposite_additivity, check_polysymmetry, check_polysymmetry_weak,
    check_reversibility_canonical, check_reversibility_poly, check_reversibility_poly_weak,
    check_zero_scalar, divisions_nonempty, has_identity_and_inverses, holds, law_witness, Law,
    Witness,
};
use crate::model::HyperTable;
use crate::search::{collect, Domain, TableSearch};

fn nonempty(t: &HyperTable, _: usize) -> Option<Witness> {
    law_witness(t, Law::CellwiseNonempty)
}

fn neutral() -> Premise {
    Premise::new(
        "neutral",
        |s, e| s.neutral(e),
        |t, e| check_neutral(t, e).holds,
    )
}

fn polysymmetry(weak: bool) -> Premise {
    if weak {
        Premise::leaf("polysymmetry-weak", |t, e| {
            check_polysymmetry_weak(t, e).holds
        })
    } else {
        Premise::leaf("polysymmetry", |t, e| check_polysymmetry(t, e).holds)
    }
}

fn qmp_premises(commutative: bool, weak: bool) -> Vec<Premise> {
    let mut v = vec![
        Premise::law(Law::Associative),
        neutral(),
        polysymmetry(weak),
    ];
    if commutative {
        v.push(Premise::law(Law::Commutative));
    }
    v
}

fn unique_opposite() -> Premise {
    Premise::new(
        "unique-opposite",
        |s, z| s.unique_opposite(z),
        |t, z| crate::axioms::check_unique_opposite(t, z).holds,
    )
}

fn reversibility() -> Premise {
    Premise::leaf("reversibility-canonical", |t, z| {
        check_reversibility_canonical(t, z).is_ok_and(|r| r.holds)
    })
}

fn zero_scalar() -> Premise {
    Premise::new(
        "zero-scalar",
        |s, z| s.zero_scalar(z),
        |t, z| check_zero_scalar(t, z).holds,
    )
}

/// The additive axioms of a canonical hypergroup, without reversibility.
fn canonical_base() -> Vec<Premise> {
    vec![
        Premise::law(Law::Associative),
        Premise::law(Law::Commutative),
        unique_opposite(),
    ]
}

/// When exactly one side of `a <=> b` holds, the witness of the failing side.
fn iff(a: Option<Witness>, b: Option<Witness>) -> Option<Witness> {
    match (a, b) {
        (None, Some(w)) | (Some(w), None) => Some(w),
        _ => None,
    }
}

pub(crate) fn spec(theorem: Theorem, opts: &VerifyOptions) -> SingleSpec {
    let plain = |branches| SingleSpec {
        domain: Domain::Any,
        pointed: false,
        branches,
        keep_models: false,
    };
    let pointed = |branches| SingleSpec {
        domain: Domain::Any,
        pointed: true,
        branches,
        keep_models: false,
    };
    let comm = opts.commutative;
    match theorem {
        Theorem::T2 => SingleSpec {
            domain: Domain::Singleton,
            ..plain(vec![Branch::new(
                "associative",
                vec![Premise::law(Law::Associative)],
                |t, _| {
                    iff(
                        law_witness(t, Law::Reproductive),
                        has_identity_and_inverses(t).witness,
                    )
                },
            )])
        },
        Theorem::T3 => plain(vec![Branch::new(
            "hypergroup",
            vec![
                Premise::law(Law::Associative),
                Premise::law(Law::Reproductive),
            ],
            nonempty,
        )]),
        Theorem::T7 => plain(vec![Branch::new(
            "weakly-associative",
            vec![Premise::law(Law::WeaklyAssociative)],
            nonempty,
        )]),
        Theorem::T9 => {
            let inverted = |law| {
                Premise::new(
                    "inverted-associative",
                    move |s: TableSearch, _| s.law(law),
                    move |t, _| holds(t, law),
                )
            };
            plain(vec![
                Branch::new(
                    "left-inverted",
                    vec![
                        inverted(Law::LeftInvertedAssociative),
                        Premise::law(Law::Reproductive),
                    ],
                    nonempty,
                ),
                Branch::new(
                    "right-inverted",
                    vec![
                        inverted(Law::RightInvertedAssociative),
                        Premise::law(Law::Reproductive),
                    ],
                    nonempty,
                ),
            ])
        }
        Theorem::T11 => plain(vec![
            Branch::new(
                "reproductive",
                vec![Premise::law(Law::Reproductive)],
                |t, _| divisions_nonempty(t).witness,
            ),
            Branch::new(
                "divisions-nonempty",
                vec![Premise::new(
                    "division-nonempty",
                    |s, _| s.divisions(),
                    |t, _| divisions_nonempty(t).holds,
                )],
                |t, _| law_witness(t, Law::Reproductive),
            ),
        ]),
        Theorem::T13 => pointed(vec![Branch::new(
            "qmp",
            qmp_premises(comm, false),
            |t, _| law_witness(t, Law::Reproductive),
        )]),
        Theorem::T24 => pointed(vec![Branch::new(
            "qmp",
            qmp_premises(comm, false),
            |t, e| check_reversibility_poly(t, e).witness,
        )]),
        Theorem::QmpSuite => SingleSpec {
            keep_models: true,
            ..pointed(vec![Branch::new(
                "qmp",
                qmp_premises(comm, false),
                props::qmp_properties,
            )])
        },
        Theorem::T25 => {
            let mut ps = canonical_base();
            ps.push(reversibility());
            pointed(vec![Branch::new("canonical-additive", ps, |t, _| {
                [Law::Associative, Law::Reproductive, Law::CellwiseNonempty]
                    .into_iter()
                    .find_map(|l| law_witness(t, l))
            })])
        }
        Theorem::T26 => {
            let mut ps = canonical_base();
            ps.push(reversibility());
            pointed(vec![Branch::new("canonical-additive", ps, |t, z| {
                check_zero_scalar(t, z).witness
            })])
        }
        Theorem::T27 => pointed(vec![Branch::new(
            "associative-commutative-opposites",
            canonical_base(),
            reversal_iff,
        )]),
        _ => unreachable!("not a single-table theorem"),
    }
}

fn reversal_iff(t: &HyperTable, z: usize) -> Option<Witness> {
    let rev = check_reversibility_canonical(t, z).ok()?.witness;
    let add = check_opposite_additivity(t, z).ok()?.witness;
    iff(rev, add)
}

/// Premise count, verdict and counterexample of a secondary sweep.
fn summary(o: &Outcome) -> Value {
    json!({
        "premise_models": o.premise_models,
        "conclusion_holds": o.counterexample.is_none(),
        "counterexample": o.counterexample,
    })
}

pub(crate) fn verify_single(
    theorem: Theorem,
    n: usize,
    opts: &VerifyOptions,
) -> Result<Outcome, VerifyError> {
    let cfg = opts.search();
    let s = spec(theorem, opts);
    let (mut out, r) = outcome(&s, n, opts.oracle, opts.drop_premises, cfg)?;
    match theorem {
        Theorem::T24 => {
            let weak = SingleSpec {
                branches: vec![Branch::new(
                    "qmp-weak",
                    qmp_premises(opts.commutative, true),
                    |t, e| check_reversibility_poly_weak(t, e).witness,
                )],
                ..s.clone()
            };
            let (w, _) = outcome(&weak, n, opts.oracle, false, cfg)?;
            out.details.insert("weak_reading".into(), summary(&w));
        }
        Theorem::T27 => {
            let mut with_zero = s.clone();
            with_zero.branches[0].premises.push(zero_scalar());
            with_zero.branches[0].label = "with-zero-scalar";
            let (w, _) = outcome(&with_zero, n, opts.oracle, false, cfg)?;
            out.details.insert("with_zero_scalar".into(), summary(&w));
        }
        Theorem::QmpSuite => {
            out.details
                .insert("properties".into(), json!(props::PROPERTY_IDS));
            // every group table is a model, identity as neutral element
            let groups =
                TableSearch::new(n, Domain::Singleton).laws([Law::Associative, Law::Reproductive]);
            let (tables, _) = collect(&groups, cfg, |t| {
                let t = groups.finish(t);
                (holds(&t, Law::Associative) && holds(&t, Law::Reproductive)).then_some(t)
            });
            let found = tables
                .iter()
                .filter(|g| r.models.binary_search_by(|m| m.cmp_cells(g)).is_ok())
                .count();
            let missing: Vec<String> = tables
                .iter()
                .filter(|g| r.models.binary_search_by(|m| m.cmp_cells(g)).is_err())
                .map(table_text)
                .collect();
            out.details.insert(
                "group_tables".into(),
                json!({ "total": tables.len(), "among_models": found, "missing": missing }),
            );
            let single_valued = r.models.iter().filter(|m| m.is_single_valued()).count();
            out.details
                .insert("single_valued_models".into(), json!(single_valued));
        }
        _ => {}
    }
    Ok(out)
}
