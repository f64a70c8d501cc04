//! Theorems over two-operation models: non-empty products in
//! multiplicative hyperrings, and reversibility in hyperfields.

use std::ops::ControlFlow;

use serde_json::json;

use super::{Counterexample, Independence, Outcome, VerifyError, VerifyOptions};
use crate::axioms::ring::nonzero_identity;
use crate::axioms::{
    check_reversibility_canonical, check_ring_axioms, check_unique_opposite, holds, law_witness,
    Law, RingAxiom, Witness,
};
use crate::classify::{satisfies_two_op, Structure};
use crate::model::{format, CellSet, HyperTable, Kind, Model, TwoOpModel};
use crate::search::{
    abelian_groups, collect, mul_tables, sweep, AddSearch, Domain, MulSearch, MulShape,
    SearchConfig, TableSearch,
};

fn ring_holds(m: &TwoOpModel, a: RingAxiom) -> bool {
    check_ring_axioms(m, a).is_ok_and(|r| r.holds)
}

/// Serialize, parse back, and recheck premises and conclusion.
fn revalidated(
    m: &TwoOpModel,
    premises: impl Fn(&TwoOpModel) -> bool,
    conclusion: impl Fn(&TwoOpModel) -> Option<Witness>,
    w: Witness,
) -> Result<Counterexample, VerifyError> {
    let text = Model::two_op(*m).to_text();
    let parsed = match format::parse(&text) {
        Ok(Model::TwoOp { model, .. }) => model,
        _ => return Err(VerifyError::Revalidation(text)),
    };
    if !premises(&parsed) || conclusion(&parsed).as_ref() != Some(&w) {
        return Err(VerifyError::Revalidation(text));
    }
    Ok(Counterexample {
        model: text,
        constant: None,
        witness: w,
    })
}

fn two_op(add: HyperTable, mul: HyperTable, zero: usize, one: Option<usize>) -> TwoOpModel {
    TwoOpModel::new(add, mul, zero, one).expect("tables of one order")
}

/// Every composition table of order `n`, in table order.
fn composition_tables(n: usize, cfg: SearchConfig) -> Vec<HyperTable> {
    let p = TableSearch::new(n, Domain::Singleton);
    collect(&p, cfg, |t| Some(p.finish(t))).0
}

// ---- non-empty products -------------------------------------------------

const T6_PREMISES: [RingAxiom; 4] = [
    RingAxiom::AdditiveAbelianGroup,
    RingAxiom::MulNondegenerateAssociative,
    RingAxiom::DistributiveInclusion,
    RingAxiom::SignRule,
];

fn mul_search(add: HyperTable, zero: usize, kept: &[RingAxiom]) -> MulSearch {
    let mut s = MulSearch::new(add, zero);
    if kept.contains(&RingAxiom::MulNondegenerateAssociative) {
        s = s.associative();
    }
    if kept.contains(&RingAxiom::DistributiveInclusion) {
        s = s.inclusion();
    }
    if kept.contains(&RingAxiom::SignRule) {
        s = s.sign_rule();
    }
    s
}

fn nonempty_products(m: &TwoOpModel) -> Option<Witness> {
    law_witness(m.mul(), Law::CellwiseNonempty)
}

/// Every axiom except non-degeneracy, the setting of the row lemma.
fn row_lemma_premises(m: &TwoOpModel) -> bool {
    ring_holds(m, RingAxiom::AdditiveAbelianGroup)
        && holds(m.mul(), Law::Associative)
        && ring_holds(m, RingAxiom::DistributiveInclusion)
        && ring_holds(m, RingAxiom::SignRule)
}

/// An empty product `wz` forces the whole row `wS` to be empty.
fn row_lemma(m: &TwoOpModel) -> Option<Witness> {
    let mul = m.mul();
    let n = mul.order();
    for w in 0..n {
        for z in 0..n {
            if mul.get(w, z).is_empty() && !mul.row_union(w).is_empty() {
                return Some(Witness::new(
                    "empty-product-row",
                    &[w, z],
                    mul.row_union(w),
                    CellSet::EMPTY,
                ));
            }
        }
    }
    None
}

#[derive(Default)]
struct T6Acc {
    models: u64,
    lemma_models: u64,
    cex: Option<(TwoOpModel, Witness)>,
    lemma_cex: Option<(TwoOpModel, Witness)>,
}

pub(crate) fn verify_t6(n: usize, opts: &VerifyOptions) -> Result<Outcome, VerifyError> {
    let cfg = opts.search();
    let groups = abelian_groups(n, cfg);
    let mut total = T6Acc::default();
    let (mut nodes, mut pruned) = (0, 0);
    for &(add, zero) in &groups {
        let p = if opts.oracle {
            MulSearch::new(add, zero)
        } else {
            mul_search(add, zero, &T6_PREMISES)
        };
        let sw = sweep(&p, cfg, T6Acc::default, |acc, mul| {
            let m = two_op(add, *mul, zero, None);
            if !row_lemma_premises(&m) {
                return ControlFlow::Continue(());
            }
            acc.lemma_models += 1;
            if acc.lemma_cex.is_none() {
                acc.lemma_cex = row_lemma(&m).map(|w| (m, w));
            }
            if ring_holds(&m, RingAxiom::MulNondegenerateAssociative) {
                acc.models += 1;
                if acc.cex.is_none() {
                    acc.cex = nonempty_products(&m).map(|w| (m, w));
                }
            }
            ControlFlow::Continue(())
        });
        nodes += sw.nodes();
        pruned += sw.pruned();
        for a in sw.into_accs() {
            total.models += a.models;
            total.lemma_models += a.lemma_models;
            if total.cex.is_none() {
                total.cex = a.cex;
            }
            if total.lemma_cex.is_none() {
                total.lemma_cex = a.lemma_cex;
            }
        }
    }
    let premises = |m: &TwoOpModel| T6_PREMISES.iter().all(|&a| ring_holds(m, a));
    let mut out = Outcome {
        space_size: groups.len() as u128 * (1u128 << (n * n * n)),
        premise_models: total.models,
        ..Outcome::default()
    };
    if let Some((m, w)) = total.cex {
        out.counterexample = Some(revalidated(&m, premises, nonempty_products, w)?);
    }
    let lemma_cex = match total.lemma_cex {
        Some((m, w)) => Some(revalidated(&m, row_lemma_premises, row_lemma, w)?),
        None => None,
    };
    if opts.drop_premises {
        out.independence = t6_independence(&groups, cfg)?;
    }
    let ids: Vec<&str> = T6_PREMISES.iter().map(|a| a.id()).collect();
    out.details.insert("premises".into(), json!(ids));
    out.details
        .insert("additive_groups".into(), json!(groups.len()));
    out.details.insert(
        "empty_product_row".into(),
        json!({
            "models": total.lemma_models,
            "holds": lemma_cex.is_none(),
            "counterexample": lemma_cex,
        }),
    );
    out.details.insert(
        "degenerate_models".into(),
        json!(total.lemma_models - total.models),
    );
    out.details.insert("search_nodes".into(), json!(nodes));
    out.details.insert("pruned_nodes".into(), json!(pruned));
    Ok(out)
}

fn t6_independence(
    groups: &[(HyperTable, usize)],
    cfg: SearchConfig,
) -> Result<Vec<Independence>, VerifyError> {
    let n = groups.first().map_or(0, |g| g.0.order());
    let mut out = Vec::new();
    for dropped in T6_PREMISES {
        if dropped == RingAxiom::AdditiveAbelianGroup {
            out.push(Independence::skipped(
                dropped.id(),
                "the additive table ranges over abelian groups only",
            ));
            continue;
        }
        let kept: Vec<RingAxiom> = T6_PREMISES.into_iter().filter(|&a| a != dropped).collect();
        let premises = |m: &TwoOpModel| kept.iter().all(|&a| ring_holds(m, a));
        let found = groups.iter().find_map(|&(add, zero)| {
            let p = mul_search(add, zero, &kept);
            let sw = sweep(
                &p,
                cfg,
                || None,
                |acc: &mut Option<(TwoOpModel, Witness)>, mul| {
                    let m = two_op(add, *mul, zero, None);
                    if premises(&m) {
                        if let Some(w) = nonempty_products(&m) {
                            *acc = Some((m, w));
                            return ControlFlow::Break(());
                        }
                    }
                    ControlFlow::Continue(())
                },
            );
            sw.into_accs().flatten().next()
        });
        out.push(match found {
            Some((m, w)) => Independence::found(
                dropped.id(),
                revalidated(&m, premises, nonempty_products, w)?,
            ),
            None => Independence::none(dropped.id(), n),
        });
    }
    Ok(out)
}

// ---- reversibility in hyperfields ---------------------------------------

const ADD_ASSOCIATIVE: &str = "add-associative";
const ADD_COMMUTATIVE: &str = "add-commutative";
const UNIQUE_OPPOSITE: &str = "unique-opposite";

const T28_PREMISES: [&str; 6] = [
    ADD_ASSOCIATIVE,
    ADD_COMMUTATIVE,
    UNIQUE_OPPOSITE,
    "multiplicative-group-on-H*",
    "absorbing-zero",
    "distributive-equal",
];

fn t28_premise(m: &TwoOpModel, id: &str) -> bool {
    match id {
        ADD_ASSOCIATIVE => holds(m.add(), Law::Associative),
        ADD_COMMUTATIVE => holds(m.add(), Law::Commutative),
        UNIQUE_OPPOSITE => check_unique_opposite(m.add(), m.zero()).holds,
        other => ring_holds(m, other.parse().expect("ring axiom id")),
    }
}

/// Without unique opposites reversibility has no meaning; that counts as a
/// failure.
fn reversibility(m: &TwoOpModel) -> Option<Witness> {
    match check_reversibility_canonical(m.add(), m.zero()) {
        Ok(r) => r.witness,
        Err(_) => Some(
            Witness::new(
                "reversibility-canonical",
                &[],
                CellSet::EMPTY,
                CellSet::EMPTY,
            )
            .with_clause("opposite-undefined"),
        ),
    }
}

fn add_search(mul: HyperTable, zero: usize, kept: &[&str]) -> AddSearch {
    let mut s = AddSearch::new(mul, zero);
    if kept.contains(&ADD_ASSOCIATIVE) {
        s = s.associative();
    }
    if kept.contains(&ADD_COMMUTATIVE) {
        s = s.commutative();
    }
    if kept.contains(&UNIQUE_OPPOSITE) {
        s = s.unique_opposite();
    }
    if kept.contains(&"distributive-equal") {
        // g(x + y) = gx + gy holds for every g, so bijective left
        // multiplications carry cells along their orbits
        s = s.distributive().group_action();
    }
    s
}

/// `(zero, one, mul)` triples in sweep order. With `relaxed`, the
/// multiplication ranges over all composition tables satisfying the
/// multiplicative premises in `kept`.
fn multiplications(
    n: usize,
    kept: &[&str],
    relaxed: bool,
    cfg: SearchConfig,
) -> Vec<(usize, Option<usize>, HyperTable)> {
    let mut out = Vec::new();
    if relaxed {
        let tables = composition_tables(n, cfg);
        let empty = HyperTable::new(n, Kind::Hyper).expect("order within cap");
        for zero in 0..n {
            for &mul in &tables {
                let m = two_op(empty, mul, zero, None);
                let ok = kept
                    .iter()
                    .filter(|id| {
                        ![
                            ADD_ASSOCIATIVE,
                            ADD_COMMUTATIVE,
                            UNIQUE_OPPOSITE,
                            "distributive-equal",
                        ]
                        .contains(id)
                    })
                    .all(|id| t28_premise(&m, id));
                if ok {
                    out.push((zero, nonzero_identity(&m), mul));
                }
            }
        }
    } else {
        for zero in 0..n {
            for one in (0..n).filter(|&o| o != zero) {
                for mul in mul_tables(n, zero, Some(one), MulShape::Group) {
                    out.push((zero, Some(one), mul));
                }
            }
        }
    }
    out
}

#[derive(Default)]
struct T28Acc {
    def15: Vec<TwoOpModel>,
    def14: Vec<TwoOpModel>,
    cex: Option<(TwoOpModel, Witness)>,
}

pub(crate) fn verify_t28(n: usize, opts: &VerifyOptions) -> Result<Outcome, VerifyError> {
    let cfg = opts.search();
    let muls = multiplications(n, &T28_PREMISES, opts.oracle, cfg);
    let mut total = T28Acc::default();
    let (mut nodes, mut pruned) = (0, 0);
    let raw = TableSearch::new(n, Domain::Any);
    for &(zero, one, mul) in &muls {
        let Some(one) = one else { continue };
        let visit = |acc: &mut T28Acc, add: &HyperTable| {
            let m = two_op(*add, mul, zero, Some(one));
            if satisfies_two_op(&m, Structure::HyperfieldDef15) {
                acc.def15.push(m);
                if acc.cex.is_none() {
                    acc.cex = reversibility(&m).map(|w| (m, w));
                }
            }
            if satisfies_two_op(&m, Structure::Hyperfield) {
                acc.def14.push(m);
            }
            ControlFlow::Continue(())
        };
        let sw = if opts.oracle {
            sweep(&raw, cfg, T28Acc::default, visit)
        } else {
            sweep(
                &add_search(mul, zero, &T28_PREMISES),
                cfg,
                T28Acc::default,
                visit,
            )
        };
        nodes += sw.nodes();
        pruned += sw.pruned();
        for a in sw.into_accs() {
            total.def15.extend(a.def15);
            total.def14.extend(a.def14);
            if let Some(c) = a.cex {
                if total.cex.as_ref().is_none_or(|t| c.0 < t.0) {
                    total.cex = Some(c);
                }
            }
        }
    }
    total.def15.sort();
    total.def14.sort();
    let pairs = (n * n.saturating_sub(1)) as u128;
    let mut out = Outcome {
        space_size: pairs * (n as u128).pow((n * n) as u32) * (1u128 << (n * n * n)),
        premise_models: total.def15.len() as u64,
        ..Outcome::default()
    };
    if let Some((m, w)) = total.cex {
        let premises = |m: &TwoOpModel| satisfies_two_op(m, Structure::HyperfieldDef15);
        out.counterexample = Some(revalidated(&m, premises, reversibility, w)?);
    }
    if opts.drop_premises {
        out.independence = t28_independence(n, cfg)?;
    }
    out.details.insert("premises".into(), json!(T28_PREMISES));
    out.details.insert(
        "multiplications".into(),
        json!(muls.iter().filter(|m| m.1.is_some()).count()),
    );
    out.details
        .insert("def15_models".into(), json!(total.def15.len()));
    out.details
        .insert("def14_models".into(), json!(total.def14.len()));
    out.details.insert(
        "model_sets_identical".into(),
        json!(total.def15 == total.def14),
    );
    out.details.insert("search_nodes".into(), json!(nodes));
    out.details.insert("pruned_nodes".into(), json!(pruned));
    Ok(out)
}

fn t28_independence(n: usize, cfg: SearchConfig) -> Result<Vec<Independence>, VerifyError> {
    let mut out = Vec::new();
    for dropped in T28_PREMISES {
        let kept: Vec<&str> = T28_PREMISES.into_iter().filter(|&p| p != dropped).collect();
        let relaxed = matches!(dropped, "multiplicative-group-on-H*" | "absorbing-zero");
        if relaxed && n > 3 {
            out.push(Independence::skipped(
                dropped,
                "the relaxed multiplicative space is swept up to order 3",
            ));
            continue;
        }
        let premises = |m: &TwoOpModel| kept.iter().all(|id| t28_premise(m, id));
        let found = multiplications(n, &kept, relaxed, cfg)
            .into_iter()
            .find_map(|(zero, one, mul)| {
                let p = add_search(mul, zero, &kept);
                let sw = sweep(
                    &p,
                    cfg,
                    || None,
                    |acc: &mut Option<(TwoOpModel, Witness)>, add| {
                        let m = two_op(*add, mul, zero, one);
                        if premises(&m) {
                            if let Some(w) = reversibility(&m) {
                                *acc = Some((m, w));
                                return ControlFlow::Break(());
                            }
                        }
                        ControlFlow::Continue(())
                    },
                );
                sw.into_accs().flatten().next()
            });
        out.push(match found {
            Some((m, w)) => {
                Independence::found(dropped, revalidated(&m, premises, reversibility, w)?)
            }
            None => Independence::none(dropped, n),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(oracle: bool) -> VerifyOptions {
        VerifyOptions {
            oracle,
            workers: 1,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn products_nonempty_matches_oracle_at_order_two() {
        let a = verify_t6(2, &opts(false)).unwrap();
        let b = verify_t6(2, &opts(true)).unwrap();
        assert_eq!(a.premise_models, b.premise_models);
        assert!(a.premise_models > 0);
        assert!(a.counterexample.is_none() && b.counterexample.is_none());
        assert_eq!(
            a.details["empty_product_row"],
            b.details["empty_product_row"]
        );
        assert_eq!(a.details["degenerate_models"], json!(2));
    }

    #[test]
    fn hyperfield_axioms_match_oracle_at_order_two() {
        let a = verify_t28(2, &opts(false)).unwrap();
        let b = verify_t28(2, &opts(true)).unwrap();
        assert_eq!(a.premise_models, b.premise_models);
        // field Z2 and the Krasner hyperfield, for each placement of 0 and 1
        assert_eq!(a.premise_models, 4);
        assert_eq!(a.details["model_sets_identical"], json!(true));
        assert!(a.counterexample.is_none());
    }

    #[test]
    fn degenerate_product_is_the_first_witness_without_nondegeneracy() {
        let o = verify_t6(
            2,
            &VerifyOptions {
                drop_premises: true,
                ..opts(false)
            },
        )
        .unwrap();
        let w = &o.independence[1];
        assert_eq!(w.dropped, "mul-nondegenerate-associative");
        let m = match format::parse(&w.model.as_ref().unwrap().model).unwrap() {
            Model::TwoOp { model, .. } => model,
            _ => unreachable!(),
        };
        assert!(holds(m.mul(), Law::Degenerate));
        assert!(o.independence[0].not_searched.is_some());
    }
}
