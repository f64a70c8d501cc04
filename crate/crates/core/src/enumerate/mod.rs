//! Exhaustive generation of the models of a constraint set at one order,
//! optionally one per isomorphism class.
//!
//! Single-table jobs backtrack over cells with the constraints' laws as
//! pruning; from order 4 on, isomorphism rejection also prunes prefixes
//! (orderly generation). Two-operation jobs pick a generator from the
//! strongest structure among the constraints. Oracle mode sweeps the raw
//! space and filters every table.

mod golden;

use std::ops::ControlFlow;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::axioms::{check_ring_axioms, holds, Law, RingAxiom};
use crate::classify::{satisfies_single, satisfies_single_at, satisfies_two_op, Structure};
use crate::model::{
    canonical_two_op, canonical_two_op_with, permutations_fixing, HyperTable, Kind, Model,
    TwoOpModel,
};
use crate::search::{
    abelian_groups, collect, mul_tables, sweep, AddSearch, Domain, MulSearch, MulShape,
    SearchConfig, TableSearch,
};

pub use golden::{
    check_catalog, default_jobs, golden_check, golden_generate, GoldenCatalog, GoldenEntry,
    GoldenError, GoldenReport, GoldenResult, CATALOG,
};

pub const SINGLE_OP_CAP: usize = 5;
pub const TWO_OP_CAP: usize = 4;
/// Largest order at which oracle mode is offered: single-table, two-operation.
pub const ORACLE_CAPS: (usize, usize) = (3, 2);
/// Hyperfield jobs get an oracle one order further: the multiplication is
/// filtered from all composition tables and the addition from all tables.
pub const FIELD_ORACLE_CAP: usize = 3;
/// Orderly pruning replaces filtering by canonical form from this order.
const ORDERLY_FROM: usize = 4;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationJob {
    pub order: usize,
    /// Law, structure or ring-axiom ids.
    pub constraints: Vec<String>,
    #[serde(default)]
    pub up_to_iso: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<usize>,
    /// Filter the raw space instead of pruning.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub oracle: bool,
}

impl EnumerationJob {
    pub fn new(order: usize, constraints: &[&str]) -> Self {
        EnumerationJob {
            order,
            constraints: constraints.iter().map(|s| s.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn up_to_iso(mut self) -> Self {
        self.up_to_iso = true;
        self
    }

    pub fn pins(mut self, zero: Option<usize>, one: Option<usize>) -> Self {
        self.zero = zero;
        self.one = one;
        self
    }

    pub fn oracle(mut self, oracle: bool) -> Self {
        self.oracle = oracle;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    /// Labelled models.
    pub raw_count: u64,
    /// Isomorphism classes, relabellings fixing the pinned constants.
    pub canonical_count: u64,
    pub pruned_nodes: u64,
    /// Seconds.
    pub wall_time: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("unknown constraint `{0}`")]
    UnknownConstraint(String),
    #[error("single-table and two-operation constraints cannot be mixed")]
    MixedArity,
    #[error("order {order} is outside 1..={cap} for this job")]
    OrderCap { order: usize, cap: usize },
    #[error("oracle mode is offered up to order {cap}")]
    OracleCap { cap: usize },
    #[error("contradictory constant pins: {0}")]
    ContradictoryPins(String),
    #[error("two-operation jobs need one of the structure ids {0}")]
    NoGenerator(String),
}

#[derive(Clone, Copy, Debug)]
enum Constraint {
    Law(Law),
    Single(Structure),
    Two(Structure),
    Ring(RingAxiom),
}

fn parse_constraint(id: &str) -> Result<Constraint, EnumerateError> {
    if let Ok(l) = id.parse::<Law>() {
        return Ok(Constraint::Law(l));
    }
    if let Ok(s) = id.parse::<Structure>() {
        return Ok(if s.is_two_op() {
            Constraint::Two(s)
        } else {
            Constraint::Single(s)
        });
    }
    id.parse::<RingAxiom>()
        .map(Constraint::Ring)
        .map_err(|_| EnumerateError::UnknownConstraint(id.to_string()))
}

/// Run `job`, passing every emitted model to `emit` in ascending order of
/// its serialized text. With `up_to_iso`, only canonical forms are emitted.
pub fn enumerate(
    job: &EnumerationJob,
    cfg: SearchConfig,
    emit: Option<&mut dyn FnMut(&Model)>,
) -> Result<EnumerationSummary, EnumerateError> {
    let start = Instant::now();
    let cs = job
        .constraints
        .iter()
        .map(|c| parse_constraint(c))
        .collect::<Result<Vec<_>, _>>()?;
    let two_op = cs
        .iter()
        .any(|c| matches!(c, Constraint::Two(_) | Constraint::Ring(_)));
    if two_op
        && cs
            .iter()
            .any(|c| matches!(c, Constraint::Law(_) | Constraint::Single(_)))
    {
        return Err(EnumerateError::MixedArity);
    }
    let cap = if two_op { TWO_OP_CAP } else { SINGLE_OP_CAP };
    if job.order == 0 || job.order > cap {
        return Err(EnumerateError::OrderCap {
            order: job.order,
            cap,
        });
    }
    if !two_op && job.oracle && job.order > ORACLE_CAPS.0 {
        return Err(EnumerateError::OracleCap { cap: ORACLE_CAPS.0 });
    }
    for (name, pin) in [("zero", job.zero), ("one", job.one)] {
        if let Some(p) = pin.filter(|&p| p >= job.order) {
            return Err(EnumerateError::ContradictoryPins(format!(
                "{name} = {p} is outside an order-{} carrier",
                job.order
            )));
        }
    }
    if job.zero.is_some() && job.zero == job.one {
        return Err(EnumerateError::ContradictoryPins(
            "zero and one are pinned to the same element".into(),
        ));
    }
    let keep = emit.is_some();
    let (mut out, raw, canonical, pruned) = if two_op {
        two_op_job(job, &cs, cfg, keep)?
    } else {
        single_job(job, &cs, cfg, keep)?
    };
    if let Some(emit) = emit {
        out.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, m) in &out {
            emit(m);
        }
    }
    Ok(EnumerationSummary {
        raw_count: raw,
        canonical_count: canonical,
        pruned_nodes: pruned,
        wall_time: start.elapsed().as_secs_f64(),
    })
}

type Found = (Vec<(String, Model)>, u64, u64, u64);

struct Acc<T> {
    raw: u64,
    canonical: u64,
    models: Vec<T>,
}

impl<T> Default for Acc<T> {
    fn default() -> Self {
        Acc {
            raw: 0,
            canonical: 0,
            models: Vec::new(),
        }
    }
}

// ---- single table -------------------------------------------------------

/// Laws a structure implies, used for pruning.
fn implied_laws(s: Structure) -> &'static [Law] {
    use Law::*;
    use Structure::*;
    match s {
        Semihypergroup => &[CellwiseNonempty, Associative],
        Quasihypergroup => &[CellwiseNonempty, Reproductive],
        Hypergroup | Group => &[Associative, Reproductive],
        Hypergroupoid => &[CellwiseNonempty],
        HvGroup => &[WeaklyAssociative, Reproductive],
        LaHypergroup => &[LeftInvertedAssociative, Reproductive],
        RaHypergroup => &[RightInvertedAssociative, Reproductive],
        QmpHypergroup | QuasicanonicalHypergroup => &[Associative],
        MPolysymmetricalHypergroup | CanonicalHypergroup => &[Associative, Commutative],
        NormalHypergroup => &[Associative, Reproductive, Commutative],
        _ => &[],
    }
}

fn single_holds(t: &HyperTable, cs: &[Constraint], zero: Option<usize>) -> bool {
    cs.iter().all(|c| match *c {
        Constraint::Law(l) => holds(t, l),
        Constraint::Single(s) => match zero {
            Some(z) if s.is_pointed() => satisfies_single_at(t, s, z) == Some(true),
            _ => satisfies_single(t, s),
        },
        _ => unreachable!("two-operation constraint in a single-table job"),
    })
}

fn single_job(
    job: &EnumerationJob,
    cs: &[Constraint],
    cfg: SearchConfig,
    keep: bool,
) -> Result<Found, EnumerateError> {
    let n = job.order;
    if job.one.is_some() {
        return Err(EnumerateError::ContradictoryPins(
            "single-table structures have no one".into(),
        ));
    }
    let pointed = cs
        .iter()
        .any(|c| matches!(c, Constraint::Single(s) if s.is_pointed()));
    if job.zero.is_some() && !pointed {
        return Err(EnumerateError::ContradictoryPins(
            "zero is pinned but no constraint has an identity or zero".into(),
        ));
    }
    let fixed: Vec<usize> = job.zero.into_iter().collect();
    let perms = permutations_fixing(n, &fixed);
    // Without a pin, a pointed constraint is split by the position of its
    // first identity so that each part can prune as if pinned.
    let split = cs.iter().find_map(|c| match c {
        Constraint::Single(s) if s.is_pointed() && job.zero.is_none() && !job.oracle => Some(*s),
        _ => None,
    });
    let orderly = job.up_to_iso && !job.oracle && n >= ORDERLY_FROM && split.is_none();
    let searches: Vec<(Option<usize>, TableSearch)> = if job.oracle {
        vec![(None, TableSearch::new(n, Domain::Any))]
    } else if let Some(st) = split {
        (0..n)
            .map(|c| {
                (
                    Some(c),
                    single_search(n, cs, Some((c, Some(st))), &fixed, false),
                )
            })
            .collect()
    } else {
        vec![(
            None,
            single_search(n, cs, job.zero.map(|z| (z, None)), &fixed, orderly),
        )]
    };
    let hyper = |t: &HyperTable| {
        t.with_kind(Kind::Hyper)
            .expect("hyper tables accept every cell")
    };
    let mut parts = Vec::new();
    for (at, search) in &searches {
        let sw = sweep(search, cfg, Acc::default, |acc: &mut Acc<HyperTable>, t| {
            let t = hyper(t);
            if !single_holds(&t, cs, job.zero) {
                return ControlFlow::Continue(());
            }
            if let (Some(c), Some(st)) = (*at, split) {
                if (0..n).find(|&d| satisfies_single_at(&t, st, d) == Some(true)) != Some(c) {
                    return ControlFlow::Continue(());
                }
            }
            let canon = crate::model::canonical_form_with(&t, &perms);
            let is_canonical = canon.cmp_cells(&t).is_eq();
            if orderly {
                if is_canonical {
                    let aut = perms
                        .iter()
                        .filter(|p| t.permute(p).cmp_cells(&t).is_eq())
                        .count() as u64;
                    acc.raw += perms.len() as u64 / aut;
                }
            } else {
                acc.raw += 1;
            }
            if is_canonical {
                acc.canonical += 1;
            }
            if keep && (is_canonical || !job.up_to_iso) {
                acc.models.push(t);
            }
            ControlFlow::Continue(())
        });
        parts.push(sw);
    }
    let pruned = parts.iter().map(|sw| sw.pruned()).sum();
    let (mut raw, mut canonical, mut models) = (0, 0, Vec::new());
    for a in parts.into_iter().flat_map(|sw| sw.into_accs()) {
        raw += a.raw;
        canonical += a.canonical;
        models.extend(a.models);
    }
    let out = models
        .into_iter()
        .map(|t| {
            let m = Model::table("op", t);
            (m.to_text(), m)
        })
        .collect();
    Ok((out, raw, canonical, pruned))
}

/// The pruning search for a single-table job. `pin` is an identity
/// position and the one pointed structure it applies to, or `None` for all.
fn single_search(
    n: usize,
    cs: &[Constraint],
    pin: Option<(usize, Option<Structure>)>,
    fixed: &[usize],
    orderly: bool,
) -> TableSearch {
    let mut s = TableSearch::new(n, Domain::Any);
    for c in cs {
        match *c {
            Constraint::Law(l) => s = s.law(l),
            Constraint::Single(st) => {
                s = s.laws(implied_laws(st).iter().copied());
                let at = pin.filter(|&(_, only)| st.is_pointed() && only.is_none_or(|o| o == st));
                if let Some((z, _)) = at {
                    s = match st {
                        Structure::QmpHypergroup | Structure::MPolysymmetricalHypergroup => {
                            s.neutral(z)
                        }
                        Structure::NormalHypergroup | Structure::CanonicalHypergroup => {
                            s.zero_scalar(z).unique_opposite(z)
                        }
                        _ => s.zero_scalar(z),
                    };
                }
            }
            _ => {}
        }
    }
    if orderly {
        s = s.orderly(fixed);
    }
    s
}

// ---- two operations -----------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Generator {
    /// Multiplicative group on `H*`, additive table searched.
    Field,
    /// Multiplicative semigroup on `H*`; `unitary` pins a one.
    Ring { unitary: bool },
    /// As `Ring`, with an identity in place of opposites.
    Polysymmetrical,
    /// Abelian additive group, multiplicative table searched.
    Multiplicative { nonempty: bool },
}

impl Generator {
    fn has_one(self) -> bool {
        matches!(self, Generator::Field | Generator::Ring { unitary: true })
    }
}

fn generator(cs: &[Constraint]) -> Result<Generator, EnumerateError> {
    use Structure::*;
    let has = |s: Structure| {
        cs.iter()
            .any(|c| matches!(c, Constraint::Two(x) if *x == s))
    };
    Ok(if has(Hyperfield) || has(HyperfieldDef15) {
        Generator::Field
    } else if has(UnitaryHyperring) {
        Generator::Ring { unitary: true }
    } else if has(KrasnerHyperring) {
        Generator::Ring { unitary: false }
    } else if has(MPolysymmetricalHyperring) {
        Generator::Polysymmetrical
    } else if has(MultiplicativeHyperringDef6) {
        Generator::Multiplicative { nonempty: true }
    } else if has(MultiplicativeHyperringDef7) {
        Generator::Multiplicative { nonempty: false }
    } else {
        let ids: Vec<&str> = Structure::TWO_OP.iter().map(|s| s.id()).collect();
        return Err(EnumerateError::NoGenerator(ids.join(", ")));
    })
}

fn two_holds(m: &TwoOpModel, cs: &[Constraint]) -> bool {
    cs.iter().all(|c| match *c {
        Constraint::Two(s) => satisfies_two_op(m, s),
        Constraint::Ring(a) => check_ring_axioms(m, a).is_ok_and(|r| r.holds),
        _ => unreachable!("single-table constraint in a two-operation job"),
    })
}

/// Additive tables are kept as hyper tables and multiplicative ones as
/// compositions exactly when single-valued, so that the same model always
/// serializes the same way.
fn normalized(m: &TwoOpModel) -> TwoOpModel {
    let add = m.add().with_kind(Kind::Hyper).expect("hyper");
    let kind = if m.mul().is_single_valued() {
        Kind::Composition
    } else {
        Kind::Hyper
    };
    let mul = m.mul().with_kind(kind).expect("kind matches cells");
    TwoOpModel::new(add, mul, m.zero(), m.one()).expect("same shape")
}

/// One unit of work: the constants and one fixed table.
enum Frame {
    Mul {
        zero: usize,
        one: Option<usize>,
        mul: HyperTable,
    },
    Add {
        zero: usize,
        add: HyperTable,
    },
}

fn frames(job: &EnumerationJob, g: Generator, cfg: SearchConfig) -> Vec<Frame> {
    let n = job.order;
    let zeros: Vec<usize> = job.zero.map_or_else(|| (0..n).collect(), |z| vec![z]);
    let mut out = Vec::new();
    match g {
        Generator::Multiplicative { .. } => {
            for (add, zero) in abelian_groups(n, cfg) {
                if zeros.contains(&zero) {
                    out.push(Frame::Add { zero, add });
                }
            }
        }
        _ => {
            for &zero in &zeros {
                let ones: Vec<Option<usize>> = if g.has_one() {
                    job.one.map_or_else(
                        || (0..n).filter(|&o| o != zero).map(Some).collect(),
                        |o| vec![Some(o)],
                    )
                } else {
                    vec![None]
                };
                let shape = if g == Generator::Field {
                    MulShape::Group
                } else {
                    MulShape::Semigroup
                };
                for one in ones {
                    for mul in mul_tables(n, zero, one, shape) {
                        out.push(Frame::Mul { zero, one, mul });
                    }
                }
            }
        }
    }
    out
}

fn two_op_job(
    job: &EnumerationJob,
    cs: &[Constraint],
    cfg: SearchConfig,
    keep: bool,
) -> Result<Found, EnumerateError> {
    let g = generator(cs)?;
    let oracle_cap = if g == Generator::Field {
        FIELD_ORACLE_CAP
    } else {
        ORACLE_CAPS.1
    };
    if job.oracle && job.order > oracle_cap {
        return Err(EnumerateError::OracleCap { cap: oracle_cap });
    }
    if job.one.is_some() && !g.has_one() {
        return Err(EnumerateError::ContradictoryPins(
            "one is pinned but the structure has no one".into(),
        ));
    }
    // hyperfields are always generated with zero = 0 and one = 1 unless
    // the job pins something else
    let pinned;
    let job = if g == Generator::Field && job.zero.is_none() && job.one.is_none() {
        pinned = job.clone().pins(Some(0), Some(1));
        &pinned
    } else {
        job
    };
    let n = job.order;
    let mut fixed: Vec<usize> = job.zero.into_iter().collect();
    fixed.extend(job.one);
    let perms = permutations_fixing(n, &fixed);
    let canonical_of = |m: &TwoOpModel| {
        if fixed.is_empty() {
            canonical_two_op(m)
        } else {
            canonical_two_op_with(m, &perms)
        }
    };
    let visit = |acc: &mut Acc<TwoOpModel>, m: TwoOpModel| {
        let m = normalized(&m);
        if !two_holds(&m, cs) {
            return;
        }
        acc.raw += 1;
        let is_canonical = canonical_of(&m).cmp_cells(&m).is_eq();
        if is_canonical {
            acc.canonical += 1;
        }
        if keep && (is_canonical || !job.up_to_iso) {
            acc.models.push(m);
        }
    };
    let mut total: Acc<TwoOpModel> = Acc::default();
    let mut pruned = 0;
    let mut absorb = |sw: crate::search::Sweep<Acc<TwoOpModel>>| {
        pruned += sw.pruned();
        for a in sw.into_accs() {
            total.raw += a.raw;
            total.canonical += a.canonical;
            total.models.extend(a.models);
        }
    };
    if job.oracle {
        let raw = TableSearch::new(n, Domain::Any);
        let zeros: Vec<usize> = job.zero.map_or_else(|| (0..n).collect(), |z| vec![z]);
        for &zero in &zeros {
            let ones: Vec<Option<usize>> = if g.has_one() {
                job.one.map_or_else(
                    || (0..n).filter(|&o| o != zero).map(Some).collect(),
                    |o| vec![Some(o)],
                )
            } else {
                vec![None]
            };
            for one in ones {
                for mul in oracle_muls(n, g, zero, one, cfg) {
                    let sw = sweep(&raw, cfg, Acc::default, |acc, add| {
                        visit(
                            acc,
                            TwoOpModel::new(*add, mul, zero, one).expect("same order"),
                        );
                        ControlFlow::Continue(())
                    });
                    absorb(sw);
                }
            }
        }
    } else {
        for f in frames(job, g, cfg) {
            let sw = match f {
                Frame::Mul { zero, one, mul } => {
                    let mut p = AddSearch::new(mul, zero).distributive().group_action();
                    p = match g {
                        Generator::Polysymmetrical => p.commutative().associative().neutral(),
                        _ => p.commutative().associative().unique_opposite(),
                    };
                    sweep(&p, cfg, Acc::default, |acc, add| {
                        visit(
                            acc,
                            TwoOpModel::new(*add, mul, zero, one).expect("same order"),
                        );
                        ControlFlow::Continue(())
                    })
                }
                Frame::Add { zero, add } => {
                    let mut p = MulSearch::new(add, zero)
                        .associative()
                        .inclusion()
                        .sign_rule();
                    if g == (Generator::Multiplicative { nonempty: true }) {
                        p = p.nonempty();
                    }
                    sweep(&p, cfg, Acc::default, |acc, mul| {
                        visit(
                            acc,
                            TwoOpModel::new(add, *mul, zero, None).expect("same order"),
                        );
                        ControlFlow::Continue(())
                    })
                }
            };
            absorb(sw);
        }
    }
    let out = total
        .models
        .into_iter()
        .map(|m| {
            let m = Model::two_op(m);
            (m.to_text(), m)
        })
        .collect();
    Ok((out, total.raw, total.canonical, pruned))
}

/// Candidate multiplications for oracle mode: every table up to order 2,
/// and above that every composition table with an absorbing zero and a
/// group on `H*`.
fn oracle_muls(
    n: usize,
    g: Generator,
    zero: usize,
    one: Option<usize>,
    cfg: SearchConfig,
) -> Vec<HyperTable> {
    if n <= ORACLE_CAPS.1 {
        return collect(&TableSearch::new(n, Domain::Any), cfg, |t| Some(*t)).0;
    }
    assert_eq!(
        g,
        Generator::Field,
        "oracle above order {} is only offered for hyperfields",
        ORACLE_CAPS.1
    );
    let comp = TableSearch::new(n, Domain::Singleton);
    collect(&comp, cfg, |t| {
        let m = TwoOpModel::new(HyperTable::degenerate(n), comp.finish(t), zero, one).ok()?;
        let ok = |a| check_ring_axioms(&m, a).is_ok_and(|r| r.holds);
        (ok(RingAxiom::AbsorbingZero) && ok(RingAxiom::MultiplicativeGroup)).then_some(*m.mul())
    })
    .0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(job: &EnumerationJob) -> (EnumerationSummary, Vec<String>) {
        let mut out = Vec::new();
        let mut emit = |m: &Model| out.push(m.to_text());
        let s = enumerate(job, SearchConfig::default(), Some(&mut emit)).unwrap();
        (s, out)
    }

    #[test]
    fn raw_spaces_at_order_two() {
        assert_eq!(
            run(&EnumerationJob::new(2, &["hypergroupoid"])).0.raw_count,
            81
        );
        assert_eq!(run(&EnumerationJob::new(2, &[])).0.raw_count, 256);
    }

    #[test]
    fn emission_is_sorted_and_unique() {
        let (s, out) = run(&EnumerationJob::new(3, &["hypergroup"]).up_to_iso());
        assert_eq!(out.len() as u64, s.canonical_count);
        assert!(out.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn pruned_matches_oracle_at_order_two() {
        for ids in [
            &["hypergroup"][..],
            &["canonical-hypergroup"],
            &["hv-group"],
            &["associative", "commutative"],
        ] {
            for iso in [false, true] {
                let mut job = EnumerationJob::new(2, ids);
                job.up_to_iso = iso;
                let a = run(&job);
                let b = run(&job.clone().oracle(true));
                assert_eq!(a.1, b.1, "{ids:?}");
                assert_eq!(
                    (a.0.raw_count, a.0.canonical_count),
                    (b.0.raw_count, b.0.canonical_count)
                );
            }
        }
    }

    #[test]
    fn hyperfield_definitions_agree() {
        let a = run(&EnumerationJob::new(2, &["hyperfield-def15"]).pins(Some(0), Some(1)));
        let b = run(&EnumerationJob::new(2, &["hyperfield"]).pins(Some(0), Some(1)));
        assert_eq!(a.1, b.1);
        assert_eq!(a.0.raw_count, 2);
    }

    #[test]
    fn orderly_counts_match_filtering() {
        // order 4 goes through orderly pruning; compare against the plain
        // sweep with canonical filtering
        let job = EnumerationJob::new(4, &["canonical-hypergroup"]).pins(Some(0), None);
        let (a, out) = run(&job.clone().up_to_iso());
        let (b, all) = run(&job);
        assert_eq!(a.raw_count, b.raw_count);
        assert_eq!(a.canonical_count, b.canonical_count);
        assert_eq!(out.len() as u64, a.canonical_count);
        assert!(out.iter().all(|m| all.contains(m)));
    }

    #[test]
    fn unpinned_split_counts_each_model_once() {
        // each canonical hypergroup has one zero, so the unpinned count is
        // n times the count with the zero pinned
        let pinned = run(&EnumerationJob::new(3, &["canonical-hypergroup"]).pins(Some(0), None)).0;
        let free = run(&EnumerationJob::new(3, &["canonical-hypergroup"])).0;
        assert_eq!(free.raw_count, 3 * pinned.raw_count);
    }

    #[test]
    fn pin_errors() {
        let e = |job: EnumerationJob| enumerate(&job, SearchConfig::default(), None).unwrap_err();
        assert!(matches!(
            e(EnumerationJob::new(2, &["hyperfield"]).pins(Some(1), Some(1))),
            EnumerateError::ContradictoryPins(_)
        ));
        assert!(matches!(
            e(EnumerationJob::new(2, &["krasner-hyperring"]).pins(None, Some(1))),
            EnumerateError::ContradictoryPins(_)
        ));
        assert!(matches!(
            e(EnumerationJob::new(2, &["hypergroup"]).pins(Some(0), None)),
            EnumerateError::ContradictoryPins(_)
        ));
        assert!(matches!(
            e(EnumerationJob::new(6, &["hypergroup"])),
            EnumerateError::OrderCap { .. }
        ));
        assert!(matches!(
            e(EnumerationJob::new(5, &["hyperfield"])),
            EnumerateError::OrderCap { .. }
        ));
        assert!(matches!(
            e(EnumerationJob::new(2, &["hypergroup", "hyperfield"])),
            EnumerateError::MixedArity
        ));
        assert!(matches!(
            e(EnumerationJob::new(2, &["sign-rule"])),
            EnumerateError::NoGenerator(_)
        ));
        assert!(matches!(
            e(EnumerationJob::new(2, &["hypergroop"])),
            EnumerateError::UnknownConstraint(_)
        ));
    }

    #[test]
    fn two_op_oracle_matches_generators_at_order_two() {
        for id in [
            "hyperfield",
            "krasner-hyperring",
            "unitary-hyperring",
            "m-polysymmetrical-hyperring",
            "multiplicative-hyperring-def7",
        ] {
            for iso in [false, true] {
                let mut job = EnumerationJob::new(2, &[id]);
                job.up_to_iso = iso;
                let a = run(&job);
                let b = run(&job.clone().oracle(true));
                assert_eq!(a.1, b.1, "{id}");
                assert_eq!(
                    (a.0.raw_count, a.0.canonical_count),
                    (b.0.raw_count, b.0.canonical_count),
                    "{id}"
                );
            }
        }
    }
}
