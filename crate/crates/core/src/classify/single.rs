use serde_json::json;

use super::{AxiomVerdict, ClassificationReport, Structure};
use crate::axioms::{
    check_law, check_neutral, check_polysymmetry, check_quasicanonical_opposite,
    check_quasicanonical_reversibility, check_reversibility_canonical, check_unique_opposite,
    check_zero_scalar, find_identities, holds, AxiomResult, Law, Witness,
};
use crate::model::{CellSet, HyperTable};

pub(crate) fn single_valued(t: &HyperTable) -> AxiomResult {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            if t.get(x, y).len() != 1 {
                return AxiomResult::fail(Witness::new(
                    "single-valued",
                    &[x, y],
                    t.get(x, y),
                    CellSet::EMPTY,
                ));
            }
        }
    }
    AxiomResult::HOLDS
}

fn qmp_at(t: &HyperTable, e: usize) -> Vec<AxiomVerdict> {
    vec![
        AxiomVerdict::new("neutral", check_neutral(t, e)).at(e),
        AxiomVerdict::new("polysymmetry", check_polysymmetry(t, e)).at(e),
    ]
}

fn normal_at(t: &HyperTable, z: usize) -> Vec<AxiomVerdict> {
    vec![
        AxiomVerdict::new("zero-scalar", check_zero_scalar(t, z)).at(z),
        AxiomVerdict::new("unique-opposite", check_unique_opposite(t, z)).at(z),
    ]
}

fn canonical_at(t: &HyperTable, z: usize) -> Vec<AxiomVerdict> {
    let mut v = vec![AxiomVerdict::new("unique-opposite", check_unique_opposite(t, z)).at(z)];
    if let Ok(r) = check_reversibility_canonical(t, z) {
        v.push(AxiomVerdict::new("reversibility-canonical", r).at(z));
    }
    v
}

fn quasicanonical_at(t: &HyperTable, z: usize) -> Vec<AxiomVerdict> {
    let mut v = vec![AxiomVerdict::new(
        "quasicanonical-opposite",
        check_quasicanonical_opposite(t, z),
    )
    .at(z)];
    if let Ok(r) = check_quasicanonical_reversibility(t, z) {
        v.push(AxiomVerdict::new("quasicanonical-reversibility", r).at(z));
    }
    v
}

/// Try every candidate constant. Returns the candidates that work and the
/// verdict list: the first working candidate's verdicts, or all of them
/// when none works.
fn existential(
    candidates: CellSet,
    what: &str,
    at: impl Fn(usize) -> Vec<AxiomVerdict>,
) -> (Vec<usize>, Vec<AxiomVerdict>) {
    if candidates.is_empty() {
        return (vec![], vec![AxiomVerdict::missing(what)]);
    }
    let mut good = Vec::new();
    let mut all = Vec::new();
    let mut first_good = None;
    for c in candidates {
        let v = at(c);
        if v.iter().all(|x| x.holds) {
            good.push(c);
            first_good.get_or_insert(v);
        } else {
            all.extend(v);
        }
    }
    match first_good {
        Some(v) => (good, v),
        None => (good, all),
    }
}

/// Full label set with per-structure evidence.
///
/// qMp and M-polysymmetrical structures are tried against every two-sided
/// identity; the canonical family against every scalar identity. The
/// constants list every candidate that works.
pub fn classify_single(t: &HyperTable) -> ClassificationReport {
    let mut r = ClassificationReport::default();
    let law = |l: Law| AxiomVerdict::new(l.id(), check_law(t, l));
    let nonempty = law(Law::CellwiseNonempty);
    let assoc = law(Law::Associative);
    let repro = law(Law::Reproductive);
    let comm = law(Law::Commutative);
    let all = |v: &[&AxiomVerdict]| v.iter().all(|x| x.holds);

    r.record(
        Structure::PartialHypergroupoid.id(),
        !nonempty.holds,
        vec![nonempty.clone()],
    );
    r.record(
        Structure::Hypergroupoid.id(),
        nonempty.holds,
        vec![nonempty.clone()],
    );
    r.record(
        Structure::Semihypergroup.id(),
        all(&[&nonempty, &assoc]),
        vec![nonempty.clone(), assoc.clone()],
    );
    r.record(
        Structure::Quasihypergroup.id(),
        all(&[&nonempty, &repro]),
        vec![nonempty.clone(), repro.clone()],
    );
    r.record(
        Structure::Hypergroup.id(),
        all(&[&assoc, &repro]),
        vec![assoc.clone(), repro.clone()],
    );
    let sv = AxiomVerdict::new("single-valued", single_valued(t));
    r.record(
        Structure::Group.id(),
        all(&[&assoc, &repro, &sv]),
        vec![assoc.clone(), repro.clone(), sv],
    );
    for (s, l) in [
        (Structure::HvGroup, Law::WeaklyAssociative),
        (Structure::LaHypergroup, Law::LeftInvertedAssociative),
        (Structure::RaHypergroup, Law::RightInvertedAssociative),
    ] {
        let v = law(l);
        r.record(s.id(), all(&[&repro, &v]), vec![repro.clone(), v]);
    }

    let ids = find_identities(t);
    r.constants.insert("identities".into(), json!(ids));

    let (qmp, qv) = existential(ids.two_sided, "two-sided-identity", |e| qmp_at(t, e));
    let qmp_holds = assoc.holds && !qmp.is_empty();
    let mut ev = vec![assoc.clone()];
    ev.extend(qv.iter().cloned());
    r.record(Structure::QmpHypergroup.id(), qmp_holds, ev);
    let mut ev = vec![assoc.clone(), comm.clone()];
    ev.extend(qv);
    r.record(
        Structure::MPolysymmetricalHypergroup.id(),
        qmp_holds && comm.holds,
        ev,
    );
    if qmp_holds {
        r.constants.insert("qmp_identities".into(), json!(qmp));
    }

    let (normal, nv) = existential(ids.scalar, "scalar-identity", |z| normal_at(t, z));
    let mut ev = vec![assoc.clone(), repro.clone(), comm.clone()];
    ev.extend(nv);
    let normal_holds = assoc.holds && repro.holds && comm.holds && !normal.is_empty();
    r.record(Structure::NormalHypergroup.id(), normal_holds, ev);
    if normal_holds {
        r.constants.insert("normal_zero".into(), json!(normal));
    }

    let (canon, cv) = existential(ids.scalar, "scalar-identity", |z| canonical_at(t, z));
    let mut ev = vec![assoc.clone(), comm.clone()];
    ev.extend(cv);
    let canon_holds = assoc.holds && comm.holds && !canon.is_empty();
    r.record(Structure::CanonicalHypergroup.id(), canon_holds, ev);
    if canon_holds {
        r.constants.insert("canonical_zero".into(), json!(canon));
    }

    let (quasi, qcv) = existential(ids.scalar, "scalar-identity", |z| quasicanonical_at(t, z));
    let mut ev = vec![assoc.clone()];
    ev.extend(qcv);
    let quasi_holds = assoc.holds && !quasi.is_empty();
    r.record(Structure::QuasicanonicalHypergroup.id(), quasi_holds, ev);
    if quasi_holds {
        r.constants
            .insert("quasicanonical_zero".into(), json!(quasi));
    }
    r
}

fn is_canonical_at(t: &HyperTable, z: usize) -> bool {
    check_unique_opposite(t, z).holds && check_reversibility_canonical(t, z).is_ok_and(|r| r.holds)
}

fn is_scalar_identity(t: &HyperTable, e: usize) -> bool {
    (0..t.order())
        .all(|x| t.get(x, e) == CellSet::singleton(x) && t.get(e, x) == CellSet::singleton(x))
}

/// Boolean form of [`classify_single`] for one structure, without building
/// evidence. Two-operation structures never hold for a single table.
pub fn satisfies_single(t: &HyperTable, s: Structure) -> bool {
    use Structure::*;
    match s {
        PartialHypergroupoid => !holds(t, Law::CellwiseNonempty),
        Hypergroupoid => holds(t, Law::CellwiseNonempty),
        Semihypergroup => holds(t, Law::CellwiseNonempty) && holds(t, Law::Associative),
        Quasihypergroup => holds(t, Law::CellwiseNonempty) && holds(t, Law::Reproductive),
        Hypergroup => holds(t, Law::Reproductive) && holds(t, Law::Associative),
        Group => t.is_single_valued() && holds(t, Law::Reproductive) && holds(t, Law::Associative),
        HvGroup => holds(t, Law::Reproductive) && holds(t, Law::WeaklyAssociative),
        LaHypergroup => holds(t, Law::Reproductive) && holds(t, Law::LeftInvertedAssociative),
        RaHypergroup => holds(t, Law::Reproductive) && holds(t, Law::RightInvertedAssociative),
        _ if s.is_pointed() => (0..t.order()).any(|c| satisfies_single_at(t, s, c) == Some(true)),
        _ => false,
    }
}

/// [`satisfies_single`] with the identity or zero fixed to `c`; `None` for
/// structures without a distinguished constant.
pub fn satisfies_single_at(t: &HyperTable, s: Structure, c: usize) -> Option<bool> {
    use Structure::*;
    Some(match s {
        QmpHypergroup | MPolysymmetricalHypergroup => {
            (s == QmpHypergroup || holds(t, Law::Commutative))
                && holds(t, Law::Associative)
                && find_identities(t).two_sided.contains(c)
                && check_neutral(t, c).holds
                && check_polysymmetry(t, c).holds
        }
        NormalHypergroup => {
            holds(t, Law::Commutative)
                && holds(t, Law::Reproductive)
                && holds(t, Law::Associative)
                && is_scalar_identity(t, c)
                && check_unique_opposite(t, c).holds
        }
        CanonicalHypergroup => {
            holds(t, Law::Commutative)
                && holds(t, Law::Associative)
                && is_scalar_identity(t, c)
                && is_canonical_at(t, c)
        }
        QuasicanonicalHypergroup => {
            holds(t, Law::Associative)
                && is_scalar_identity(t, c)
                && check_quasicanonical_opposite(t, c).holds
                && check_quasicanonical_reversibility(t, c).is_ok_and(|r| r.holds)
        }
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::classify::lattice_violations;
    use crate::model::Kind;

    fn labels(t: &HyperTable) -> BTreeSet<String> {
        classify_single(t).labels
    }

    fn set(v: &[&str]) -> BTreeSet<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn z2_labels() {
        let z2 = HyperTable::from_composition(2, |x, y| (x + y) % 2).unwrap();
        assert_eq!(
            labels(&z2),
            set(&[
                "hypergroupoid",
                "semihypergroup",
                "quasihypergroup",
                "hypergroup",
                "group",
                "hv-group",
                "la-hypergroup",
                "ra-hypergroup",
                "qmp-hypergroup",
                "m-polysymmetrical-hypergroup",
                "normal-hypergroup",
                "canonical-hypergroup",
                "quasicanonical-hypergroup",
            ])
        );
    }

    #[test]
    fn degenerate_is_only_partial() {
        assert_eq!(
            labels(&HyperTable::degenerate(2)),
            set(&["partial-hypergroupoid"])
        );
    }

    #[test]
    fn krasner_addition_is_canonical() {
        let k = HyperTable::from_rows(
            Kind::Hyper,
            &[vec![vec![0], vec![1]], vec![vec![1], vec![0, 1]]],
        )
        .unwrap();
        let r = classify_single(&k);
        assert!(r.has(Structure::CanonicalHypergroup));
        assert_eq!(r.constants["canonical_zero"], json!([0]));
    }

    #[test]
    fn difference_composition() {
        let t = HyperTable::from_composition(3, |x, y| (y + 3 - x) % 3).unwrap();
        let r = classify_single(&t);
        assert!(r.has(Structure::LaHypergroup));
        assert!(!r.has(Structure::Hypergroup));
        let w = r.evidence["hypergroup"][0].witness.clone().unwrap();
        assert_eq!(w.elements, vec![1, 0, 0]);
    }

    #[test]
    fn satisfies_agrees_on_order_two() {
        for b in 0..256u32 {
            let t = HyperTable::from_fn(2, Kind::Hyper, |x, y| {
                CellSet::from_bits(((b >> (2 * (2 * x + y))) & 3) as u16)
            })
            .unwrap();
            let r = classify_single(&t);
            for s in Structure::SINGLE {
                assert_eq!(r.has(s), satisfies_single(&t, s), "{s} on {t:?}");
            }
            let v =
                lattice_violations(&r.labels, t.is_single_valued(), holds(&t, Law::Commutative));
            assert!(v.is_empty(), "{v:?} on {t:?}");
        }
    }
}
