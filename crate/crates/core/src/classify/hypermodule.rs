use serde_json::json;

use super::{satisfies_two_op, AxiomVerdict, ClassificationReport, Structure};
use crate::axioms::ring::nonzero_identity;
use crate::axioms::{
    check_law, check_reversibility_canonical, check_unique_opposite, check_zero_scalar,
    opposite_map, AxiomResult, Law, Witness,
};
use crate::model::{CellSet, HypermoduleModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypermoduleError {
    #[error("the scalar structure is not a unitary hyperring")]
    NotUnitary,
}

fn first_failure(id: &str, check: impl FnOnce() -> Option<Witness>) -> AxiomVerdict {
    AxiomVerdict::new(id, AxiomResult::from_witness(check()))
}

/// Axioms (i)-(iv) of a left hypermodule, the structure of the additive
/// hypergroup, and whether `-1` acts as the opposite map.
///
/// With `weak`, axiom (ii) is the inclusion `(a + b)m` in `am + bm`.
pub fn check_hypermodule(
    hm: &HypermoduleModel,
    weak: bool,
) -> Result<ClassificationReport, HypermoduleError> {
    let p = hm.scalars();
    if !satisfies_two_op(p, Structure::UnitaryHyperring) {
        return Err(HypermoduleError::NotUnitary);
    }
    let one = p
        .one()
        .or_else(|| nonzero_identity(p))
        .ok_or(HypermoduleError::NotUnitary)?;
    let (add, mul, madd) = (p.add(), p.mul(), hm.madd());
    let (np, nm, zm) = (p.order(), madd.order(), hm.zero_m());
    let mut r = ClassificationReport::default();
    r.constants.insert("one".into(), json!(one));
    r.constants.insert("zero_m".into(), json!(zm));

    let ax_i = first_failure("hypermodule-i", || {
        for a in 0..np {
            for m in 0..nm {
                for n in 0..nm {
                    let lhs = hm.act_set_right(a, madd.get(m, n));
                    let rhs = madd.get(hm.act(a, m), hm.act(a, n));
                    if lhs != rhs {
                        return Some(Witness::new("hypermodule-i", &[a, m, n], lhs, rhs));
                    }
                }
            }
        }
        None
    });
    let ii_id = if weak {
        "hypermodule-ii-weak"
    } else {
        "hypermodule-ii"
    };
    let ax_ii = first_failure(ii_id, || {
        for a in 0..np {
            for b in 0..np {
                for m in 0..nm {
                    let lhs = hm.act_set_left(add.get(a, b), m);
                    let rhs = madd.get(hm.act(a, m), hm.act(b, m));
                    let ok = if weak { lhs.is_subset(rhs) } else { lhs == rhs };
                    if !ok {
                        return Some(Witness::new(ii_id, &[a, b, m], lhs, rhs));
                    }
                }
            }
        }
        None
    });
    let ax_iii = first_failure("hypermodule-iii", || {
        for a in 0..np {
            for b in 0..np {
                for m in 0..nm {
                    let lhs = hm.act_set_left(mul.get(a, b), m);
                    let rhs = CellSet::singleton(hm.act(a, hm.act(b, m)));
                    if lhs != rhs {
                        return Some(Witness::new("hypermodule-iii", &[a, b, m], lhs, rhs));
                    }
                }
            }
        }
        None
    });
    let ax_iv = first_failure("hypermodule-iv", || {
        for m in 0..nm {
            let u = CellSet::singleton(hm.act(one, m));
            if hm.act(one, m) != m {
                return Some(
                    Witness::new("hypermodule-iv", &[m], u, CellSet::singleton(m))
                        .with_clause("one"),
                );
            }
            let z = CellSet::singleton(hm.act(p.zero(), m));
            if hm.act(p.zero(), m) != zm {
                return Some(
                    Witness::new("hypermodule-iv", &[m], z, CellSet::singleton(zm))
                        .with_clause("zero"),
                );
            }
        }
        None
    });
    let axioms = vec![ax_i, ax_ii, ax_iii, ax_iv];

    let assoc = AxiomVerdict::new("madd-associative", check_law(madd, Law::Associative));
    let repro = AxiomVerdict::new("madd-reproductive", check_law(madd, Law::Reproductive));
    let comm = AxiomVerdict::new("madd-commutative", check_law(madd, Law::Commutative));
    let opp = AxiomVerdict::new("unique-opposite", check_unique_opposite(madd, zm));
    let normal = vec![
        assoc.clone(),
        repro,
        comm.clone(),
        AxiomVerdict::new("zero-scalar", check_zero_scalar(madd, zm)),
        opp.clone(),
    ];
    let rev = match check_reversibility_canonical(madd, zm) {
        Ok(v) => AxiomVerdict::new("reversibility-canonical", v),
        Err(_) => AxiomVerdict::missing("reversibility-canonical"),
    };
    let canonical = vec![assoc, comm.clone(), opp, rev];

    let all = |v: &[AxiomVerdict]| v.iter().all(|x| x.holds);
    let axioms_hold = all(&axioms);
    let (normal_holds, canonical_holds) = (all(&normal), all(&canonical));
    let prefix = if weak { "weak-" } else { "" };
    r.record("madd-normal", normal_holds, normal);
    r.record("madd-canonical", canonical_holds, canonical);
    r.record("madd-commutative", comm.holds, vec![comm]);
    let mut def16 = axioms.clone();
    def16.extend(r.evidence["madd-canonical"].iter().cloned());
    r.record(
        &format!("{prefix}hypermodule"),
        axioms_hold && canonical_holds,
        def16,
    );
    let mut def17 = axioms;
    def17.extend(r.evidence["madd-normal"].iter().cloned());
    r.record(
        &format!("{prefix}hypermodule-def17"),
        axioms_hold && normal_holds,
        def17,
    );

    if let (Some(op), Some(om)) = (opposite_map(add, p.zero()), opposite_map(madd, zm)) {
        let minus_one = op.get(one);
        r.constants.insert("minus_one".into(), json!(minus_one));
        let v = first_failure("opposite-action", || {
            (0..nm).find_map(|m| {
                let got = hm.act(minus_one, m);
                (got != om.get(m)).then(|| {
                    Witness::new(
                        "opposite-action",
                        &[m],
                        CellSet::singleton(got),
                        CellSet::singleton(om.get(m)),
                    )
                })
            })
        });
        r.record("opposite-action", v.holds, vec![v]);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{HyperTable, Kind, TwoOpModel};

    fn krasner() -> TwoOpModel {
        let add = HyperTable::from_rows(
            Kind::Hyper,
            &[vec![vec![0], vec![1]], vec![vec![1], vec![0, 1]]],
        )
        .unwrap();
        let mul = HyperTable::from_composition(2, |x, y| x * y).unwrap();
        TwoOpModel::new(add, mul, 0, Some(1)).unwrap()
    }

    #[test]
    fn krasner_over_itself() {
        let k = krasner();
        let hm = HypermoduleModel::new(k, *k.add(), 0, vec![0, 0, 0, 1]).unwrap();
        let r = check_hypermodule(&hm, false).unwrap();
        for l in [
            "hypermodule",
            "hypermodule-def17",
            "madd-canonical",
            "madd-normal",
            "opposite-action",
        ] {
            assert!(r.labels.contains(l), "{l}: {:?}", r.evidence);
        }
    }

    #[test]
    fn zero_row_must_vanish() {
        let k = krasner();
        let hm = HypermoduleModel::new(k, *k.add(), 0, vec![0, 1, 0, 1]).unwrap();
        let r = check_hypermodule(&hm, false).unwrap();
        assert!(!r.labels.contains("hypermodule"));
        let iv = &r.evidence["hypermodule"][3];
        let w = iv.witness.as_ref().unwrap();
        assert_eq!(
            (w.elements.clone(), w.clause.as_deref()),
            (vec![1], Some("zero"))
        );
    }

    #[test]
    fn rejects_non_unitary_scalars() {
        let z2 = HyperTable::from_composition(2, |x, y| (x + y) % 2).unwrap();
        let p = TwoOpModel::new(z2, HyperTable::total(2), 0, None).unwrap();
        let hm = HypermoduleModel::new(p, z2, 0, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(
            check_hypermodule(&hm, false),
            Err(HypermoduleError::NotUnitary)
        );
    }
}
