//! Strategies and properties shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use hyperlab::axioms::{check_ring_axioms, holds, law_witness, witness_reproduces, Law, RingAxiom};
use hyperlab::classify::{classify_single, classify_two_op};
use hyperlab::model::format::{parse, serialize};
use hyperlab::model::{canonical_form, CellSet, HyperTable, Kind, Model, TwoOpModel};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub const CASES: u32 = 1000;
pub const SEED: [u8; 32] = *b"hyperlab property suite seed 001";

pub fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

fn cell(bits: u16) -> CellSet {
    CellSet::from_members((0..16).filter(|i| bits >> i & 1 == 1))
}

fn table_of(n: usize, bits: &[u16], kind: Kind) -> HyperTable {
    let mut t = HyperTable::new(n, Kind::Hyper).unwrap();
    for (i, &b) in bits.iter().enumerate() {
        t.set_cell(i, cell(b));
    }
    t.with_kind(kind).unwrap()
}

/// Any table of order 1 to 4, empty cells included.
pub fn table(max: usize) -> impl Strategy<Value = HyperTable> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0u16..(1 << n), n * n)
            .prop_map(move |bits| table_of(n, &bits, Kind::Hyper))
    })
}

/// Composition tables; these hit the group-like structures far more often.
pub fn composition(max: usize) -> impl Strategy<Value = HyperTable> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(0..n, n * n).prop_map(move |v| {
            table_of(
                n,
                &v.iter().map(|&x| 1u16 << x).collect::<Vec<_>>(),
                Kind::Composition,
            )
        })
    })
}

pub fn any_table() -> impl Strategy<Value = HyperTable> {
    prop_oneof![table(4), composition(4)]
}

pub fn table_and_perm() -> impl Strategy<Value = (HyperTable, Vec<usize>)> {
    any_table().prop_flat_map(|t| {
        let ids: Vec<usize> = (0..t.order()).collect();
        (Just(t), Just(ids).prop_shuffle())
    })
}

pub fn two_op() -> impl Strategy<Value = TwoOpModel> {
    (2..=3usize).prop_flat_map(|n| {
        (
            prop::collection::vec(0u16..(1 << n), n * n),
            prop::collection::vec(0..n, n * n),
            0..n,
            prop::option::of(0..n),
        )
            .prop_map(move |(a, m, zero, one)| {
                let add = table_of(n, &a, Kind::Hyper);
                let mul = table_of(
                    n,
                    &m.iter().map(|&x| 1u16 << x).collect::<Vec<_>>(),
                    Kind::Composition,
                );
                TwoOpModel::new(add, mul, zero, one.filter(|&o| o != zero)).unwrap()
            })
    })
}

pub fn two_op_and_perm() -> impl Strategy<Value = (TwoOpModel, Vec<usize>)> {
    prop_oneof![
        two_op(),
        Just(hyperlab::bundled::krasner()),
        prop::sample::select(vec!["sign_hyperfield", "z2", "z3"]).prop_map(|n| {
            match hyperlab::bundled::model(n) {
                Some(Model::TwoOp { model, .. }) => model,
                _ => unreachable!(),
            }
        }),
    ]
    .prop_flat_map(|m| {
        let ids: Vec<usize> = (0..m.order()).collect();
        (Just(m), Just(ids).prop_shuffle())
    })
}

type Outcome = Result<(), TestError<String>>;

fn flatten<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Outcome {
    r.map_err(|e| match e {
        TestError::Abort(why) => TestError::Abort(why),
        TestError::Fail(why, v) => TestError::Fail(why, format!("{v:?}")),
    })
}

pub fn classification_invariance(r: &mut TestRunner) -> Outcome {
    flatten(r.run(&table_and_perm(), |(t, s)| {
        let p = t.permute(&s);
        prop_assert_eq!(classify_single(&t).labels, classify_single(&p).labels);
        for law in Law::ALL {
            prop_assert_eq!(holds(&t, law), holds(&p, law), "{}", law.id());
        }
        Ok(())
    }))?;
    flatten(r.run(&two_op_and_perm(), |(m, s)| {
        let p = m.permute(&s);
        prop_assert_eq!(classify_two_op(&m).labels, classify_two_op(&p).labels);
        for a in RingAxiom::ALL {
            let v = |x: &TwoOpModel| check_ring_axioms(x, a).map(|r| r.holds).ok();
            prop_assert_eq!(v(&m), v(&p), "{}", a.id());
        }
        Ok(())
    }))
}

pub fn canonical_form_orbits(r: &mut TestRunner) -> Outcome {
    flatten(r.run(&table_and_perm(), |(t, s)| {
        let c = canonical_form(&t, &[]);
        prop_assert_eq!(c, canonical_form(&t.permute(&s), &[]));
        prop_assert_eq!(c, canonical_form(&c, &[]));
        prop_assert!(c.cmp_cells(&t).is_le());
        Ok(())
    }))
}

pub fn division_duality(r: &mut TestRunner) -> Outcome {
    flatten(r.run(&table(4), |t| {
        let n = t.order();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    prop_assert_eq!(t.right_division(x, y).contains(z), t.get(z, y).contains(x));
                    prop_assert_eq!(t.left_division(y, x).contains(z), t.get(y, z).contains(x));
                }
            }
        }
        Ok(())
    }))
}

pub fn complex_products(r: &mut TestRunner) -> Outcome {
    let s = table(4).prop_flat_map(|t| {
        let full = 1u16 << t.order();
        (Just(t), 0..full, 0..full, 0..full)
    });
    flatten(r.run(&s, |(t, a, b, c)| {
        let (a, b, c) = (cell(a), cell(b), cell(c));
        prop_assert_eq!(t.product(CellSet::EMPTY, a), CellSet::EMPTY);
        prop_assert_eq!(t.product(a, CellSet::EMPTY), CellSet::EMPTY);
        let ab = a.union(b);
        prop_assert_eq!(t.product(ab, c), t.product(a, c).union(t.product(b, c)));
        prop_assert_eq!(t.product(c, ab), t.product(c, a).union(t.product(c, b)));
        prop_assert!(t.product(a, c).is_subset(t.product(ab, c)));
        prop_assert!(t.product(c, a).is_subset(t.product(c, ab)));
        let by_elements = a
            .iter()
            .flat_map(|x| c.iter().map(move |y| (x, y)))
            .fold(CellSet::EMPTY, |acc, (x, y)| acc.union(t.get(x, y)));
        prop_assert_eq!(t.product(a, c), by_elements);
        Ok(())
    }))
}

pub fn round_trip(r: &mut TestRunner) -> Outcome {
    flatten(r.run(&any_table(), |t| {
        let m = Model::table("op", t);
        prop_assert_eq!(&parse(&serialize(&m)).unwrap(), &m);
        Ok(())
    }))?;
    flatten(r.run(&two_op(), |t| {
        let m = Model::two_op(t);
        prop_assert_eq!(&parse(&serialize(&m)).unwrap(), &m);
        Ok(())
    }))
}

pub fn witness_soundness(r: &mut TestRunner) -> Outcome {
    flatten(r.run(&any_table(), |t| {
        for law in Law::ALL {
            match law_witness(&t, law) {
                Some(w) => prop_assert_eq!(witness_reproduces(&t, &w), Some(true), "{}", law.id()),
                None => prop_assert!(holds(&t, law)),
            }
        }
        Ok(())
    }))
}

pub type Property = fn(&mut TestRunner) -> Outcome;

pub const PROPERTIES: [(&str, Property); 6] = [
    (
        "classification and axiom verdicts are invariant under relabelling",
        classification_invariance,
    ),
    (
        "canonical form is constant on orbits and idempotent",
        canonical_form_orbits,
    ),
    ("divisions are dual to membership", division_duality),
    (
        "complex products absorb the empty set and are monotone",
        complex_products,
    ),
    ("parse and serialize round-trip", round_trip),
    ("every witness reproduces", witness_soundness),
];
