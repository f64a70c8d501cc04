//! Hypermodules over a family of small scalar hyperfields: the additive
//! part of every hypermodule is canonical.

use itertools::Itertools;
use serde_json::json;

use super::{Counterexample, Independence, Outcome, VerifyError, VerifyOptions};
use crate::axioms::{
    check_reversibility_canonical, check_unique_opposite, check_zero_scalar, holds, law_witness,
    Law, Witness,
};
use crate::classify::{check_hypermodule, satisfies_two_op, Structure};
use crate::model::{
    canonical_two_op, format, CellSet, HyperTable, HypermoduleModel, Model, TwoOpModel,
};
use crate::search::{collect, mul_tables, AddSearch, Domain, MulShape, SearchConfig, TableSearch};

const ZERO_M: usize = 0;

/// Hyperfields of order 2 and 3 up to isomorphism, with zero 0 and one 1,
/// in model order. Contains the Krasner and sign hyperfields.
pub fn scalar_family(cfg: SearchConfig) -> Vec<TwoOpModel> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for mul in mul_tables(n, 0, Some(1), MulShape::Group) {
            let p = AddSearch::new(mul, 0)
                .commutative()
                .associative()
                .unique_opposite()
                .distributive()
                .group_action();
            let (found, _) = collect(&p, cfg, |add| {
                let m = TwoOpModel::new(*add, mul, 0, Some(1)).expect("tables of one order");
                (satisfies_two_op(&m, Structure::Hyperfield) && canonical_two_op(&m) == m)
                    .then_some(m)
            });
            out.extend(found);
        }
    }
    out.sort();
    out
}

const MADD_LAWS: [&str; 5] = [
    "madd-associative",
    "madd-reproductive",
    "zero-scalar",
    "unique-opposite",
    "madd-commutative",
];
const ACTION_AXIOMS: [&str; 4] = [
    "hypermodule-i",
    "hypermodule-ii",
    "hypermodule-iii",
    "hypermodule-iv",
];

fn madd_law(t: &HyperTable, id: &str) -> bool {
    match id {
        "madd-associative" => holds(t, Law::Associative),
        "madd-reproductive" => holds(t, Law::Reproductive),
        "zero-scalar" => check_zero_scalar(t, ZERO_M).holds,
        "unique-opposite" => check_unique_opposite(t, ZERO_M).holds,
        "madd-commutative" => holds(t, Law::Commutative),
        _ => unreachable!("not an additive law"),
    }
}

fn madd_search(n: usize, kept: &[&str]) -> TableSearch {
    let mut s = TableSearch::new(n, Domain::Any);
    for &id in kept {
        s = match id {
            "madd-associative" => s.law(Law::Associative),
            "madd-reproductive" => s.law(Law::Reproductive),
            "zero-scalar" => s.zero_scalar(ZERO_M),
            "unique-opposite" => s.unique_opposite(ZERO_M),
            "madd-commutative" => s.law(Law::Commutative),
            _ => s,
        };
    }
    s
}

/// Additive tables of order `n` satisfying the `kept` laws, in table order.
fn madds(n: usize, kept: &[&str], oracle: bool, cfg: SearchConfig) -> Vec<HyperTable> {
    let p = if oracle {
        TableSearch::new(n, Domain::Any)
    } else {
        madd_search(n, kept)
    };
    collect(&p, cfg, |t| {
        kept.iter().all(|id| madd_law(t, id)).then_some(*t)
    })
    .0
}

/// The additive part is canonical with zero 0.
fn canonical(t: &HyperTable) -> Option<Witness> {
    law_witness(t, Law::Associative)
        .or_else(|| law_witness(t, Law::Commutative))
        .or_else(|| check_unique_opposite(t, ZERO_M).witness)
        .or_else(|| match check_reversibility_canonical(t, ZERO_M) {
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
        })
}

/// Scalars, additive table and a row-major action table.
struct Frame<'a> {
    p: &'a TwoOpModel,
    madd: &'a HyperTable,
}

impl Frame<'_> {
    fn n(&self) -> usize {
        self.madd.order()
    }

    fn image(&self, act: &[usize], a: CellSet, m: usize) -> CellSet {
        a.iter().map(|s| act[s * self.n() + m]).collect()
    }

    /// `a(m + n) = am + an` for one row `f = (a -)`.
    fn row_i(&self, f: &[usize]) -> bool {
        let n = self.n();
        (0..n)
            .all(|x| (0..n).all(|y| self.madd.get(x, y).map(|v| f[v]) == self.madd.get(f[x], f[y])))
    }

    fn ii(&self, act: &[usize], weak: bool) -> bool {
        let (np, n) = (self.p.order(), self.n());
        (0..np).all(|a| {
            (0..np).all(|b| {
                (0..n).all(|m| {
                    let lhs = self.image(act, self.p.add().get(a, b), m);
                    let rhs = self.madd.get(act[a * n + m], act[b * n + m]);
                    if weak {
                        lhs.is_subset(rhs)
                    } else {
                        lhs == rhs
                    }
                })
            })
        })
    }

    fn iii(&self, act: &[usize]) -> bool {
        let (np, n) = (self.p.order(), self.n());
        (0..np).all(|a| {
            (0..np).all(|b| {
                (0..n).all(|m| {
                    self.image(act, self.p.mul().get(a, b), m)
                        == CellSet::singleton(act[a * n + act[b * n + m]])
                })
            })
        })
    }

    fn iv(&self, act: &[usize]) -> bool {
        let (n, one, zero) = (self.n(), self.p.one().expect("unitary"), self.p.zero());
        (0..n).all(|m| act[one * n + m] == m && act[zero * n + m] == ZERO_M)
    }

    /// Candidate rows per scalar. With `pin`, the zero and one rows are
    /// fixed as (iv) demands; with `row_i`, rows failing (i) are dropped.
    fn rows(&self, pin: bool, row_i: bool) -> Vec<Vec<Vec<usize>>> {
        let n = self.n();
        let all: Vec<Vec<usize>> = (0..n).map(|_| 0..n).multi_cartesian_product().collect();
        (0..self.p.order())
            .map(|a| {
                let cands: Vec<Vec<usize>> = if pin && a == self.p.zero() {
                    vec![vec![ZERO_M; n]]
                } else if pin && Some(a) == self.p.one() {
                    vec![(0..n).collect()]
                } else {
                    all.clone()
                };
                cands
                    .into_iter()
                    .filter(|f| !row_i || self.row_i(f))
                    .collect()
            })
            .collect()
    }

    /// Every action built from `rows`, in lexicographic order.
    fn actions(rows: &[Vec<Vec<usize>>]) -> impl Iterator<Item = Vec<usize>> + '_ {
        rows.iter()
            .map(|r| r.iter())
            .multi_cartesian_product()
            .map(|rs| rs.into_iter().flatten().copied().collect())
    }

    fn axiom(&self, id: &str, act: &[usize]) -> bool {
        match id {
            "hypermodule-i" => {
                (0..self.p.order()).all(|a| self.row_i(&act[a * self.n()..(a + 1) * self.n()]))
            }
            "hypermodule-ii" => self.ii(act, false),
            "hypermodule-iii" => self.iii(act),
            "hypermodule-iv" => self.iv(act),
            _ => unreachable!("not an action axiom"),
        }
    }
}

struct Found {
    model: HypermoduleModel,
    witness: Witness,
}

fn hypermodule(p: &TwoOpModel, madd: &HyperTable, act: Vec<usize>) -> HypermoduleModel {
    HypermoduleModel::new(*p, *madd, ZERO_M, act).expect("action within range")
}

fn text(hm: &HypermoduleModel) -> String {
    Model::Hypermodule {
        names: ["add".into(), "mul".into(), "madd".into()],
        model: hm.clone(),
    }
    .to_text()
}

/// Serialize, parse back, and recheck through the classifier: the premise
/// label holds and the additive part fails canonicity with the same witness.
fn revalidated(found: &Found, weak: bool) -> Result<Counterexample, VerifyError> {
    let t = text(&found.model);
    let bad = || VerifyError::Revalidation(t.clone());
    let hm = match format::parse(&t) {
        Ok(Model::Hypermodule { model, .. }) => model,
        _ => return Err(bad()),
    };
    let r = check_hypermodule(&hm, weak).map_err(|_| bad())?;
    let label = if weak {
        "weak-hypermodule-def17"
    } else {
        "hypermodule-def17"
    };
    let first = r.evidence["madd-canonical"]
        .iter()
        .find(|v| !v.holds)
        .and_then(|v| v.witness.clone());
    if !r.labels.contains(label) || first.as_ref() != Some(&found.witness) {
        return Err(bad());
    }
    Ok(Counterexample {
        model: t,
        constant: None,
        witness: found.witness.clone(),
    })
}

#[derive(Default)]
struct Tally {
    models: u64,
    first: Option<Found>,
}

impl Tally {
    fn visit(&mut self, p: &TwoOpModel, madd: &HyperTable, act: &[usize]) {
        self.models += 1;
        if self.first.is_none() {
            if let Some(witness) = canonical(madd) {
                self.first = Some(Found {
                    model: hypermodule(p, madd, act.to_vec()),
                    witness,
                });
            }
        }
    }

    fn summary(&self, weak: bool) -> Result<serde_json::Value, VerifyError> {
        let cex = self
            .first
            .as_ref()
            .map(|f| revalidated(f, weak))
            .transpose()?;
        Ok(
            json!({ "premise_models": self.models, "conclusion_holds": cex.is_none(), "counterexample": cex }),
        )
    }
}

pub(crate) fn verify_t29(n: usize, opts: &VerifyOptions) -> Result<Outcome, VerifyError> {
    let cfg = opts.search();
    let family = scalar_family(cfg);
    let normal = &MADD_LAWS[..4];
    let tables = madds(n, normal, opts.oracle, cfg);
    let (mut strong, mut weak) = (Tally::default(), Tally::default());
    let mut noncommutative = 0u64;
    for p in &family {
        for madd in &tables {
            let f = Frame { p, madd };
            let comm = holds(madd, Law::Commutative);
            let rows = f.rows(!opts.oracle, !opts.oracle);
            for act in Frame::actions(&rows) {
                if !(f.axiom("hypermodule-i", &act) && f.iii(&act) && f.iv(&act)) {
                    continue;
                }
                if f.ii(&act, false) {
                    if comm {
                        strong.visit(p, madd, &act);
                    } else {
                        noncommutative += 1;
                    }
                }
                if comm && f.ii(&act, true) {
                    weak.visit(p, madd, &act);
                }
            }
        }
    }
    let space: u128 = family
        .iter()
        .map(|p| (1u128 << (n * n * n)) * (n as u128).pow((n * p.order()) as u32))
        .sum();
    let mut out = Outcome {
        space_size: space,
        premise_models: strong.models,
        ..Outcome::default()
    };
    if let Some(f) = &strong.first {
        out.counterexample = Some(revalidated(f, false)?);
    }
    if opts.drop_premises {
        out.independence = independence(n, &family, cfg)?;
    }
    let premises: Vec<&str> = MADD_LAWS.iter().chain(&ACTION_AXIOMS).copied().collect();
    let names: Vec<String> = family.iter().map(|p| Model::two_op(*p).to_text()).collect();
    out.details.insert("premises".into(), json!(premises));
    out.details.insert("scalar_family".into(), json!(names));
    out.details
        .insert("normal_additive_tables".into(), json!(tables.len()));
    out.details.insert(
        "commutative_additive_tables".into(),
        json!(tables.iter().filter(|t| holds(t, Law::Commutative)).count()),
    );
    out.details
        .insert("noncommutative_models".into(), json!(noncommutative));
    out.details
        .insert("weak_reading".into(), weak.summary(true)?);
    Ok(out)
}

/// For each premise, the first (scalars, additive table, action) where the
/// other premises hold and the additive part is not canonical.
fn independence(
    n: usize,
    family: &[TwoOpModel],
    cfg: SearchConfig,
) -> Result<Vec<Independence>, VerifyError> {
    let mut out = Vec::new();
    for dropped in MADD_LAWS.iter().chain(&ACTION_AXIOMS).copied() {
        let kept_laws: Vec<&str> = MADD_LAWS.into_iter().filter(|&l| l != dropped).collect();
        let kept_axioms: Vec<&str> = ACTION_AXIOMS
            .into_iter()
            .filter(|&a| a != dropped)
            .collect();
        if MADD_LAWS.contains(&dropped) && n > 3 {
            out.push(Independence::skipped(
                dropped,
                "relaxed additive tables are swept up to order 3",
            ));
            continue;
        }
        // the conclusion only reads the additive table
        let candidates: Vec<HyperTable> = madds(n, &kept_laws, false, cfg)
            .into_iter()
            .filter(|t| canonical(t).is_some())
            .collect();
        let mut found = None;
        'search: for p in family {
            for madd in &candidates {
                let f = Frame { p, madd };
                let rows = f.rows(
                    kept_axioms.contains(&"hypermodule-iv"),
                    kept_axioms.contains(&"hypermodule-i"),
                );
                for act in Frame::actions(&rows) {
                    if kept_axioms.iter().all(|a| f.axiom(a, &act)) {
                        let witness = canonical(madd).expect("filtered");
                        found = Some(Found {
                            model: hypermodule(p, madd, act),
                            witness,
                        });
                        break 'search;
                    }
                }
            }
        }
        out.push(match found {
            Some(f) => {
                Independence::found(dropped, relaxed_revalidated(&f, &kept_laws, &kept_axioms)?)
            }
            None => Independence::none(dropped, n),
        });
    }
    Ok(out)
}

/// Revalidation for a relaxed premise set, through the parsed model.
fn relaxed_revalidated(
    found: &Found,
    laws: &[&str],
    axioms: &[&str],
) -> Result<Counterexample, VerifyError> {
    let t = text(&found.model);
    let hm = match format::parse(&t) {
        Ok(Model::Hypermodule { model, .. }) => model,
        _ => return Err(VerifyError::Revalidation(t)),
    };
    let f = Frame {
        p: hm.scalars(),
        madd: hm.madd(),
    };
    let ok = laws.iter().all(|l| madd_law(hm.madd(), l))
        && axioms.iter().all(|a| f.axiom(a, hm.action()))
        && canonical(hm.madd()).as_ref() == Some(&found.witness);
    if !ok {
        return Err(VerifyError::Revalidation(t));
    }
    Ok(Counterexample {
        model: t,
        constant: None,
        witness: found.witness.clone(),
    })
}
