//! The sweep shared by all single-table theorems.

use std::ops::ControlFlow;
use std::sync::Arc;

use serde_json::json;

use super::{Counterexample, Independence, Outcome, VerifyError};
use crate::axioms::{divisions_nonempty, holds, law_witness, Law, Witness};
use crate::model::{format, HyperTable, Model};
use crate::search::{sweep, Domain, SearchConfig, TableSearch};

type Prune = Arc<dyn Fn(TableSearch, usize) -> TableSearch + Send + Sync>;
type Pred = Arc<dyn Fn(&HyperTable, usize) -> bool + Send + Sync>;
type Concl = Arc<dyn Fn(&HyperTable, usize) -> Option<Witness> + Send + Sync>;

/// One premise; the `usize` argument is the pointed constant (identity or
/// zero), ignored by unpointed premises.
#[derive(Clone)]
pub(crate) struct Premise {
    pub id: &'static str,
    pub prune: Prune,
    pub holds: Pred,
}

impl Premise {
    pub fn new(
        id: &'static str,
        prune: impl Fn(TableSearch, usize) -> TableSearch + Send + Sync + 'static,
        holds: impl Fn(&HyperTable, usize) -> bool + Send + Sync + 'static,
    ) -> Self {
        Premise {
            id,
            prune: Arc::new(prune),
            holds: Arc::new(holds),
        }
    }

    /// Checked only at the leaves.
    pub fn leaf(
        id: &'static str,
        holds: impl Fn(&HyperTable, usize) -> bool + Send + Sync + 'static,
    ) -> Self {
        Premise::new(id, |s, _| s, holds)
    }

    pub fn law(law: Law) -> Self {
        Premise::new(law.id(), move |s, _| s.law(law), move |t, _| holds(t, law))
    }
}

/// A premise set with its conclusion. A theorem with several branches
/// quantifies over tables satisfying any of them.
#[derive(Clone)]
pub(crate) struct Branch {
    pub label: &'static str,
    pub premises: Vec<Premise>,
    pub conclusion: Concl,
}

impl Branch {
    pub fn new(
        label: &'static str,
        premises: Vec<Premise>,
        conclusion: impl Fn(&HyperTable, usize) -> Option<Witness> + Send + Sync + 'static,
    ) -> Self {
        Branch {
            label,
            premises,
            conclusion: Arc::new(conclusion),
        }
    }

    fn without(&self, id: &str) -> Branch {
        let mut b = self.clone();
        b.premises.retain(|p| p.id != id);
        b
    }
}

#[derive(Clone)]
pub(crate) struct SingleSpec {
    pub domain: Domain,
    /// Premises take a constant ranging over the carrier.
    pub pointed: bool,
    pub branches: Vec<Branch>,
    /// Keep the list of premise tables.
    pub keep_models: bool,
}

struct Variant<'a> {
    branch: usize,
    c: usize,
    spec: &'a Branch,
}

impl Variant<'_> {
    fn holds(&self, t: &HyperTable) -> bool {
        self.spec.premises.iter().all(|p| (p.holds)(t, self.c))
    }
}

fn variants(spec: &SingleSpec, n: usize) -> Vec<Variant<'_>> {
    let constants = if spec.pointed { n } else { 1 };
    spec.branches
        .iter()
        .enumerate()
        .flat_map(|(b, br)| {
            (0..constants).map(move |c| Variant {
                branch: b,
                c,
                spec: br,
            })
        })
        .collect()
}

#[derive(Default)]
struct Acc {
    distinct: u64,
    pointed: u64,
    per_branch: Vec<u64>,
    first: Option<(HyperTable, usize, Witness)>,
    models: Vec<HyperTable>,
}

impl Acc {
    fn merge(&mut self, other: Acc) {
        self.distinct += other.distinct;
        self.pointed += other.pointed;
        for (a, b) in self.per_branch.iter_mut().zip(other.per_branch) {
            *a += b;
        }
        if self.first.is_none() {
            self.first = other.first;
        }
        self.models.extend(other.models);
    }
}

pub(crate) struct SweepResult {
    pub space_size: u128,
    pub premise_models: u64,
    pub pointed_models: u64,
    pub branch_models: Vec<u64>,
    /// Smallest table with a failing conclusion, and which variant failed.
    pub counterexample: Option<(HyperTable, usize, Witness)>,
    pub models: Vec<HyperTable>,
    pub nodes: u64,
    pub pruned: u64,
}

pub(crate) fn space_size(domain: Domain, n: usize) -> u128 {
    let per_cell: u128 = match domain {
        Domain::Any => 1 << n,
        Domain::NonEmpty => (1 << n) - 1,
        Domain::Singleton => n as u128,
    };
    per_cell.pow((n * n) as u32)
}

fn search_for(v: &Variant<'_>, n: usize, domain: Domain) -> TableSearch {
    v.spec
        .premises
        .iter()
        .fold(TableSearch::new(n, domain), |s, p| (p.prune)(s, v.c))
}

/// Visit `t` as a leaf of variant `i`, given that its premises hold.
fn record(acc: &mut Acc, vs: &[Variant<'_>], i: usize, t: &HyperTable, keep: bool) {
    let v = &vs[i];
    acc.pointed += 1;
    if !vs[..i].iter().any(|u| u.holds(t)) {
        acc.distinct += 1;
        if keep {
            acc.models.push(*t);
        }
    }
    if !vs[..i].iter().any(|u| u.branch == v.branch && u.holds(t)) {
        acc.per_branch[v.branch] += 1;
    }
    if acc.first.is_none() {
        if let Some(w) = (v.spec.conclusion)(t, v.c) {
            acc.first = Some((*t, i, w));
        }
    }
}

pub(crate) fn run(spec: &SingleSpec, n: usize, oracle: bool, cfg: SearchConfig) -> SweepResult {
    let vs = variants(spec, n);
    let fresh = || Acc {
        per_branch: vec![0; spec.branches.len()],
        ..Acc::default()
    };
    let mut total = fresh();
    let (mut nodes, mut pruned) = (0, 0);
    let mut firsts = Vec::new();
    let mut absorb = |sw: crate::search::Sweep<Acc>, total: &mut Acc| {
        nodes += sw.nodes();
        pruned += sw.pruned();
        let mut acc = fresh();
        for a in sw.into_accs() {
            acc.merge(a);
        }
        firsts.extend(acc.first.take());
        total.merge(acc);
    };
    if oracle {
        let raw = TableSearch::new(n, spec.domain);
        let sw = sweep(&raw, cfg, fresh, |acc, t| {
            let t = raw.finish(t);
            for i in 0..vs.len() {
                if vs[i].holds(&t) {
                    record(acc, &vs, i, &t, spec.keep_models);
                }
            }
            ControlFlow::Continue(())
        });
        absorb(sw, &mut total);
    } else {
        for i in 0..vs.len() {
            let p = search_for(&vs[i], n, spec.domain);
            let sw = sweep(&p, cfg, fresh, |acc, t| {
                let t = p.finish(t);
                if vs[i].holds(&t) {
                    record(acc, &vs, i, &t, spec.keep_models);
                }
                ControlFlow::Continue(())
            });
            absorb(sw, &mut total);
        }
    }
    total.models.sort();
    let counterexample = firsts
        .into_iter()
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    SweepResult {
        space_size: space_size(spec.domain, n),
        premise_models: total.distinct,
        pointed_models: total.pointed,
        branch_models: total.per_branch,
        counterexample,
        models: total.models,
        nodes,
        pruned,
    }
}

/// First table, in table order, where the branch premises hold and the
/// conclusion fails, over every variant.
fn first_failure(
    spec: &SingleSpec,
    n: usize,
    oracle: bool,
    cfg: SearchConfig,
) -> Option<(HyperTable, usize, Witness)> {
    let vs = variants(spec, n);
    let hit = |t: &HyperTable, i: usize| {
        let v: &Variant<'_> = &vs[i];
        if v.holds(t) {
            (v.spec.conclusion)(t, v.c)
        } else {
            None
        }
    };
    let stop_sweep = |p: &TableSearch, range: std::ops::Range<usize>| {
        let sw = sweep(
            p,
            cfg,
            || None,
            |acc: &mut Option<(HyperTable, usize, Witness)>, t| {
                let t = p.finish(t);
                for i in range.clone() {
                    if let Some(w) = hit(&t, i) {
                        *acc = Some((t, i, w));
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            },
        );
        sw.into_accs().flatten().next()
    };
    if oracle {
        stop_sweep(&TableSearch::new(n, spec.domain), 0..vs.len())
    } else {
        (0..vs.len())
            .filter_map(|i| stop_sweep(&search_for(&vs[i], n, spec.domain), i..i + 1))
            .min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)))
    }
}

pub(crate) fn table_text(t: &HyperTable) -> String {
    Model::table("op", *t).to_text()
}

/// Serialize, parse back, and recheck premises and conclusion through the
/// axiom checks before the model goes into a report.
pub(crate) fn revalidated(
    spec: &SingleSpec,
    found: (HyperTable, usize, Witness),
    n: usize,
) -> Result<Counterexample, VerifyError> {
    let (t, i, w) = found;
    let text = table_text(&t);
    let parsed = match format::parse(&text) {
        Ok(Model::Table { table, .. }) => table,
        _ => return Err(VerifyError::Revalidation(text)),
    };
    let vs = variants(spec, n);
    let v = &vs[i];
    if !v.holds(&parsed) || (v.spec.conclusion)(&parsed, v.c).as_ref() != Some(&w) {
        return Err(VerifyError::Revalidation(text));
    }
    Ok(Counterexample {
        model: text,
        constant: spec.pointed.then_some(v.c),
        witness: w,
    })
}

/// Premise ids in first-appearance order across branches.
fn premise_ids(spec: &SingleSpec) -> Vec<&'static str> {
    let mut ids = Vec::new();
    for b in &spec.branches {
        for p in &b.premises {
            if !ids.contains(&p.id) {
                ids.push(p.id);
            }
        }
    }
    ids
}

pub(crate) fn independence(
    spec: &SingleSpec,
    n: usize,
    oracle: bool,
    cfg: SearchConfig,
) -> Result<Vec<Independence>, VerifyError> {
    let mut out = Vec::new();
    for id in premise_ids(spec) {
        let dropped = SingleSpec {
            branches: spec.branches.iter().map(|b| b.without(id)).collect(),
            keep_models: false,
            ..spec.clone()
        };
        let found = first_failure(&dropped, n, oracle, cfg);
        out.push(match found {
            Some(f) => Independence::found(id, revalidated(&dropped, f, n)?),
            None => Independence::none(id, n),
        });
    }
    Ok(out)
}

/// Sweep, revalidate, and collect the generic details.
pub(crate) fn outcome(
    spec: &SingleSpec,
    n: usize,
    oracle: bool,
    drop: bool,
    cfg: SearchConfig,
) -> Result<(Outcome, SweepResult), VerifyError> {
    let r = run(spec, n, oracle, cfg);
    let mut out = Outcome {
        space_size: r.space_size,
        premise_models: r.premise_models,
        ..Outcome::default()
    };
    if let Some(c) = r.counterexample.clone() {
        out.counterexample = Some(revalidated(spec, c, n)?);
    }
    if drop {
        out.independence = independence(spec, n, oracle, cfg)?;
    }
    out.details
        .insert("premises".into(), json!(premise_ids(spec)));
    if spec.pointed {
        out.details
            .insert("pointed_models".into(), json!(r.pointed_models));
    }
    if spec.branches.len() > 1 {
        let per: serde_json::Map<String, serde_json::Value> = spec
            .branches
            .iter()
            .zip(&r.branch_models)
            .map(|(b, c)| (b.label.to_string(), json!(c)))
            .collect();
        out.details
            .insert("branch_models".into(), serde_json::Value::Object(per));
    }
    out.details.insert("search_nodes".into(), json!(r.nodes));
    out.details.insert("pruned_nodes".into(), json!(r.pruned));
    Ok((out, r))
}

fn premise_by_id(id: &str) -> Result<Premise, VerifyError> {
    if id == "division-nonempty" {
        return Ok(Premise::new(
            "division-nonempty",
            |s, _| s.divisions(),
            |t, _| divisions_nonempty(t).holds,
        ));
    }
    let law: Law = id
        .parse()
        .map_err(|_| VerifyError::UnknownId(id.to_string()))?;
    Ok(Premise::law(law))
}

/// The first table of the given order, in table order, satisfying every
/// premise and violating the conclusion; `none_at_order` when there is
/// none. Ids are law ids or `division-nonempty`.
pub fn search_independence(
    premises: &[&str],
    conclusion: &str,
    order: usize,
    cfg: SearchConfig,
) -> Result<Independence, VerifyError> {
    if order == 0 || order > 4 {
        return Err(VerifyError::OrderOutOfRange {
            theorem: "search-independence".into(),
            order,
            cap: 4,
        });
    }
    let ps = premises
        .iter()
        .map(|p| premise_by_id(p))
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion: Concl = if conclusion == "division-nonempty" {
        Arc::new(|t: &HyperTable, _| divisions_nonempty(t).witness)
    } else {
        let law: Law = conclusion
            .parse()
            .map_err(|_| VerifyError::UnknownId(conclusion.to_string()))?;
        Arc::new(move |t: &HyperTable, _| law_witness(t, law))
    };
    let spec = SingleSpec {
        domain: Domain::Any,
        pointed: false,
        branches: vec![Branch {
            label: "premises",
            premises: ps,
            conclusion,
        }],
        keep_models: false,
    };
    let dropped = premises.join(",");
    Ok(match first_failure(&spec, order, false, cfg) {
        Some(f) => Independence::found(&dropped, revalidated(&spec, f, order)?),
        None => Independence::none(&dropped, order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn search(p: &[&str], c: &str, n: usize) -> Independence {
        search_independence(p, c, n, SearchConfig::default()).unwrap()
    }

    #[test]
    fn associative_alone_allows_empty_cells() {
        let r = search(&["associative"], "cellwise-nonempty", 1);
        let m = r.model.unwrap();
        assert_eq!(m.model, table_text(&HyperTable::degenerate(1)));
    }

    #[test]
    fn hypergroups_have_no_empty_cells() {
        let r = search(&["associative", "reproductive"], "cellwise-nonempty", 2);
        assert_eq!((r.model, r.none_at_order), (None, Some(2)));
    }

    #[test]
    fn reproductive_does_not_force_associative() {
        let r = search(&["reproductive"], "associative", 2);
        let m = r.model.unwrap();
        let t = match format::parse(&m.model).unwrap() {
            Model::Table { table, .. } => table,
            _ => unreachable!(),
        };
        assert!(holds(&t, Law::Reproductive));
        assert!(!holds(&t, Law::Associative));
    }

    #[test]
    fn unknown_ids_are_errors() {
        let e = search_independence(&["associativ"], "associative", 2, SearchConfig::default());
        assert_eq!(e, Err(VerifyError::UnknownId("associativ".into())));
    }
}
