use serde_json::json;

use super::{AxiomVerdict, ClassificationReport, Structure};
use crate::axioms::ring::nonzero_identity;
use crate::axioms::{
    check_law, check_neutral, check_polysymmetry, check_reversibility_canonical, check_ring_axioms,
    check_unique_opposite, AxiomResult, Law, RingAxiom, Witness,
};
use crate::model::{CellSet, TwoOpModel};

fn ring(m: &TwoOpModel, a: RingAxiom) -> AxiomVerdict {
    match check_ring_axioms(m, a) {
        Ok(r) => AxiomVerdict::new(a.id(), r),
        // only the sign rule has a precondition; report it as not holding
        Err(_) => AxiomVerdict::missing(a.id()),
    }
}

fn add_law(m: &TwoOpModel, l: Law) -> AxiomVerdict {
    AxiomVerdict::new(format!("add-{}", l.id()), check_law(m.add(), l))
}

fn multiplicative_identity(m: &TwoOpModel) -> AxiomVerdict {
    let found = nonzero_identity(m);
    match (m.one(), found) {
        (Some(one), Some(e)) if one == e => {
            AxiomVerdict::new("multiplicative-identity", AxiomResult::HOLDS)
        }
        (Some(one), _) => AxiomVerdict::new(
            "multiplicative-identity",
            AxiomResult::fail(Witness::new(
                "multiplicative-identity",
                &[one],
                CellSet::singleton(one),
                found.map_or(CellSet::EMPTY, CellSet::singleton),
            )),
        ),
        (None, Some(_)) => AxiomVerdict::new("multiplicative-identity", AxiomResult::HOLDS),
        (None, None) => AxiomVerdict::missing("multiplicative-identity"),
    }
}

/// The additive axioms: associativity, commutativity and unique opposites,
/// plus reversibility when `reversible`.
fn additive(m: &TwoOpModel, reversible: bool) -> Vec<AxiomVerdict> {
    let mut v = vec![
        add_law(m, Law::Associative),
        add_law(m, Law::Commutative),
        AxiomVerdict::new("unique-opposite", check_unique_opposite(m.add(), m.zero())),
    ];
    if reversible {
        v.push(match check_reversibility_canonical(m.add(), m.zero()) {
            Ok(r) => AxiomVerdict::new("reversibility-canonical", r),
            Err(_) => AxiomVerdict::missing("reversibility-canonical"),
        });
    }
    v
}

fn all(v: &[AxiomVerdict]) -> bool {
    v.iter().all(|x| x.holds)
}

pub fn classify_two_op(m: &TwoOpModel) -> ClassificationReport {
    let mut r = ClassificationReport::default();
    r.constants.insert("zero".into(), json!(m.zero()));
    if let Some(one) = m.one() {
        r.constants.insert("one".into(), json!(one));
    }
    if let Some(e) = nonzero_identity(m) {
        r.constants
            .insert("multiplicative_identity".into(), json!(e));
    }

    let absorbing = ring(m, RingAxiom::AbsorbingZero);
    let dist_eq = ring(m, RingAxiom::DistributiveEqual);
    let semigroup = ring(m, RingAxiom::MultiplicativeSemigroup);
    let group = ring(m, RingAxiom::MultiplicativeGroup);

    let mut krasner = additive(m, true);
    krasner.extend([semigroup.clone(), absorbing.clone(), dist_eq.clone()]);
    let krasner_holds = all(&krasner);
    r.record(
        Structure::KrasnerHyperring.id(),
        krasner_holds,
        krasner.clone(),
    );

    let mut unitary = krasner;
    unitary.push(multiplicative_identity(m));
    r.record(Structure::UnitaryHyperring.id(), all(&unitary), unitary);

    for (s, reversible) in [
        (Structure::Hyperfield, true),
        (Structure::HyperfieldDef15, false),
    ] {
        let mut v = additive(m, reversible);
        v.extend([group.clone(), absorbing.clone(), dist_eq.clone()]);
        r.record(s.id(), all(&v), v);
    }

    let abelian = ring(m, RingAxiom::AdditiveAbelianGroup);
    let inclusion = ring(m, RingAxiom::DistributiveInclusion);
    let sign = ring(m, RingAxiom::SignRule);
    for (s, mul_axiom) in [
        (
            Structure::MultiplicativeHyperringDef6,
            RingAxiom::MulSemihypergroup,
        ),
        (
            Structure::MultiplicativeHyperringDef7,
            RingAxiom::MulNondegenerateAssociative,
        ),
    ] {
        let v = vec![
            abelian.clone(),
            ring(m, mul_axiom),
            inclusion.clone(),
            sign.clone(),
        ];
        r.record(s.id(), all(&v), v);
    }

    let v = vec![
        add_law(m, Law::Associative),
        add_law(m, Law::Commutative),
        AxiomVerdict::new("neutral", check_neutral(m.add(), m.zero())),
        AxiomVerdict::new("polysymmetry", check_polysymmetry(m.add(), m.zero())),
        semigroup,
        absorbing,
        dist_eq,
    ];
    r.record(Structure::MPolysymmetricalHyperring.id(), all(&v), v);
    r
}

/// Boolean form of [`classify_two_op`] for one structure.
pub fn satisfies_two_op(m: &TwoOpModel, s: Structure) -> bool {
    let ring = |a: RingAxiom| check_ring_axioms(m, a).is_ok_and(|r| r.holds);
    let add = |l: Law| crate::axioms::holds(m.add(), l);
    let opposites = || check_unique_opposite(m.add(), m.zero()).holds;
    let reversible = || check_reversibility_canonical(m.add(), m.zero()).is_ok_and(|r| r.holds);
    let base = |reversible_needed: bool| {
        add(Law::Commutative)
            && opposites()
            && (!reversible_needed || reversible())
            && ring(RingAxiom::AbsorbingZero)
            && add(Law::Associative)
            && ring(RingAxiom::DistributiveEqual)
    };
    use Structure::*;
    match s {
        KrasnerHyperring => ring(RingAxiom::MultiplicativeSemigroup) && base(true),
        UnitaryHyperring => {
            satisfies_two_op(m, KrasnerHyperring) && multiplicative_identity(m).holds
        }
        Hyperfield => ring(RingAxiom::MultiplicativeGroup) && base(true),
        HyperfieldDef15 => ring(RingAxiom::MultiplicativeGroup) && base(false),
        MultiplicativeHyperringDef6 | MultiplicativeHyperringDef7 => {
            let mul_axiom = if s == MultiplicativeHyperringDef6 {
                RingAxiom::MulSemihypergroup
            } else {
                RingAxiom::MulNondegenerateAssociative
            };
            ring(RingAxiom::AdditiveAbelianGroup)
                && ring(mul_axiom)
                && ring(RingAxiom::DistributiveInclusion)
                && ring(RingAxiom::SignRule)
        }
        MPolysymmetricalHyperring => {
            ring(RingAxiom::MultiplicativeSemigroup)
                && ring(RingAxiom::AbsorbingZero)
                && add(Law::Commutative)
                && check_neutral(m.add(), m.zero()).holds
                && check_polysymmetry(m.add(), m.zero()).holds
                && add(Law::Associative)
                && ring(RingAxiom::DistributiveEqual)
        }
        _ => false,
    }
}
