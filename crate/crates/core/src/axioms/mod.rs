//! Axiom predicates over hyperoperation tables.
//!
//! Every check returns an [`AxiomResult`]; on failure it carries the first
//! violating instance found by a row-major scan (first quantified variable
//! outermost), so witnesses are deterministic.

mod canonical;
mod identity;
pub(crate) mod ring;

use serde::{Deserialize, Serialize};

use crate::model::{CellSet, HyperTable};

pub use canonical::{
    check_opposite_additivity, check_quasicanonical_opposite, check_quasicanonical_reversibility,
    check_reversibility_canonical, check_unique_opposite, check_zero_scalar, opposite_map,
    Opposites,
};
pub use identity::{
    attractive_elements, check_neutral, check_polysymmetry, check_polysymmetry_weak,
    check_reversibility_poly, check_reversibility_poly_weak, find_identities,
    has_identity_and_inverses, symmetric_set, symmetric_set_weak, Identities,
};
pub use ring::{check_ring_axioms, RingAxiom};

/// A concrete failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub axiom: String,
    pub elements: Vec<usize>,
    pub lhs: CellSet,
    pub rhs: CellSet,
    /// Which half of a two-part axiom failed, when that is not obvious.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
}

impl Witness {
    pub fn new(axiom: impl Into<String>, elements: &[usize], lhs: CellSet, rhs: CellSet) -> Self {
        Witness {
            axiom: axiom.into(),
            elements: elements.to_vec(),
            lhs,
            rhs,
            clause: None,
        }
    }

    pub fn with_clause(mut self, clause: impl Into<String>) -> Self {
        self.clause = Some(clause.into());
        self
    }

    /// Map the element tuple and both sets through a relabelling.
    pub fn permute(&self, sigma: &[usize]) -> Witness {
        Witness {
            axiom: self.axiom.clone(),
            elements: self.elements.iter().map(|&x| sigma[x]).collect(),
            lhs: self.lhs.permute(sigma),
            rhs: self.rhs.permute(sigma),
            clause: self.clause.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomResult {
    pub const HOLDS: AxiomResult = AxiomResult {
        holds: true,
        witness: None,
    };

    pub fn fail(w: Witness) -> Self {
        AxiomResult {
            holds: false,
            witness: Some(w),
        }
    }

    pub fn from_witness(w: Option<Witness>) -> Self {
        match w {
            Some(w) => Self::fail(w),
            None => Self::HOLDS,
        }
    }

    /// Chain another check, keeping the first failure.
    pub fn and_then(self, f: impl FnOnce() -> AxiomResult) -> AxiomResult {
        if self.holds {
            f()
        } else {
            self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("unknown axiom or law `{0}`")]
    Unknown(String),
    #[error("precondition for `{axiom}` not met: {reason}")]
    Precondition { axiom: String, reason: String },
    #[error("opposite map undefined: unique-opposite fails at element {0}")]
    OppositeUndefined(usize),
}

/// Universally quantified single-table laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    Associative,
    Reproductive,
    WeaklyAssociative,
    LeftInvertedAssociative,
    RightInvertedAssociative,
    Commutative,
    CellwiseNonempty,
    Total,
    Degenerate,
}

impl Law {
    pub const ALL: [Law; 9] = [
        Law::Associative,
        Law::Reproductive,
        Law::WeaklyAssociative,
        Law::LeftInvertedAssociative,
        Law::RightInvertedAssociative,
        Law::Commutative,
        Law::CellwiseNonempty,
        Law::Total,
        Law::Degenerate,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Law::Associative => "associative",
            Law::Reproductive => "reproductive",
            Law::WeaklyAssociative => "weakly-associative",
            Law::LeftInvertedAssociative => "left-inverted-associative",
            Law::RightInvertedAssociative => "right-inverted-associative",
            Law::Commutative => "commutative",
            Law::CellwiseNonempty => "cellwise-nonempty",
            Law::Total => "total",
            Law::Degenerate => "degenerate",
        }
    }
}

impl std::str::FromStr for Law {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, AxiomError> {
        Law::ALL
            .into_iter()
            .find(|l| l.id() == s)
            .ok_or_else(|| AxiomError::Unknown(s.to_string()))
    }
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// A violation before it is turned into a [`Witness`]; kept allocation-free
/// so that sweeps can test millions of tables cheaply.
#[derive(Clone, Copy, Debug)]
struct Violation {
    elements: [usize; 3],
    arity: usize,
    lhs: CellSet,
    rhs: CellSet,
}

impl Violation {
    fn into_witness(self, law: Law) -> Witness {
        Witness::new(law.id(), &self.elements[..self.arity], self.lhs, self.rhs)
    }
}

/// Triple-quantified laws compare two bracketings.
fn triple_law(t: &HyperTable, law: Law) -> Option<Violation> {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (lhs, rhs) = triple_sides(t, law, x, y, z);
                let bad = match law {
                    Law::WeaklyAssociative => lhs.is_disjoint(rhs),
                    _ => lhs != rhs,
                };
                if bad {
                    return Some(Violation {
                        elements: [x, y, z],
                        arity: 3,
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    None
}

fn triple_sides(t: &HyperTable, law: Law, x: usize, y: usize, z: usize) -> (CellSet, CellSet) {
    match law {
        Law::Associative | Law::WeaklyAssociative => {
            (t.left_assoc(x, y, z), t.right_assoc(x, y, z))
        }
        Law::LeftInvertedAssociative => (t.left_assoc(x, y, z), t.left_assoc(z, y, x)),
        Law::RightInvertedAssociative => (t.right_assoc(x, y, z), t.right_assoc(z, y, x)),
        _ => unreachable!("not a triple law"),
    }
}

fn pair_law(t: &HyperTable, law: Law) -> Option<Violation> {
    let n = t.order();
    let full = t.carrier();
    for x in 0..n {
        for y in 0..n {
            let c = t.get(x, y);
            let w = match law {
                Law::Commutative if c != t.get(y, x) => Some((c, t.get(y, x))),
                Law::CellwiseNonempty if c.is_empty() => Some((c, CellSet::EMPTY)),
                Law::Total if c != full => Some((c, full)),
                Law::Degenerate if !c.is_empty() => Some((c, CellSet::EMPTY)),
                _ => None,
            };
            if let Some((lhs, rhs)) = w {
                return Some(Violation {
                    elements: [x, y, 0],
                    arity: 2,
                    lhs,
                    rhs,
                });
            }
        }
    }
    None
}

fn reproductive(t: &HyperTable) -> Option<Violation> {
    let full = t.carrier();
    (0..t.order()).find_map(|x| {
        let (ex, xe) = (t.col_union(x), t.row_union(x));
        (ex != full || xe != full).then_some(Violation {
            elements: [x, 0, 0],
            arity: 1,
            lhs: ex,
            rhs: xe,
        })
    })
}

fn violation(t: &HyperTable, law: Law) -> Option<Violation> {
    match law {
        Law::Associative
        | Law::WeaklyAssociative
        | Law::LeftInvertedAssociative
        | Law::RightInvertedAssociative => triple_law(t, law),
        Law::Reproductive => reproductive(t),
        Law::Commutative | Law::CellwiseNonempty | Law::Total | Law::Degenerate => pair_law(t, law),
    }
}

/// Check one law over the whole carrier.
pub fn check_law(t: &HyperTable, law: Law) -> AxiomResult {
    AxiomResult::from_witness(law_witness(t, law))
}

/// Just the first violation, if any.
pub fn law_witness(t: &HyperTable, law: Law) -> Option<Witness> {
    violation(t, law).map(|v| v.into_witness(law))
}

#[inline]
pub fn holds(t: &HyperTable, law: Law) -> bool {
    violation(t, law).is_none()
}

/// Check a law given by its string id.
pub fn check_law_id(t: &HyperTable, id: &str) -> Result<AxiomResult, AxiomError> {
    Ok(check_law(t, id.parse()?))
}

/// Recompute both sides of a single-table law witness against `t`.
/// Returns `Some(true)` when the instance is still a violation.
pub fn witness_reproduces(t: &HyperTable, w: &Witness) -> Option<bool> {
    let law: Law = w.axiom.parse().ok()?;
    let e = &w.elements;
    let (lhs, rhs) = match law {
        Law::Associative
        | Law::WeaklyAssociative
        | Law::LeftInvertedAssociative
        | Law::RightInvertedAssociative => {
            if e.len() != 3 {
                return None;
            }
            triple_sides(t, law, e[0], e[1], e[2])
        }
        Law::Reproductive => (t.col_union(*e.first()?), t.row_union(*e.first()?)),
        Law::Commutative => (t.get(e[0], e[1]), t.get(e[1], e[0])),
        Law::CellwiseNonempty | Law::Degenerate => (t.get(e[0], e[1]), CellSet::EMPTY),
        Law::Total => (t.get(e[0], e[1]), t.carrier()),
    };
    if (lhs, rhs) != (w.lhs, w.rhs) {
        return Some(false);
    }
    let full = t.carrier();
    Some(match law {
        Law::WeaklyAssociative => lhs.is_disjoint(rhs),
        Law::Reproductive => lhs != full || rhs != full,
        Law::CellwiseNonempty => lhs.is_empty(),
        Law::Degenerate => !lhs.is_empty(),
        _ => lhs != rhs,
    })
}

/// Every right and left division is non-empty.
pub fn divisions_nonempty(t: &HyperTable) -> AxiomResult {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            let r = t.right_division(x, y);
            if r.is_empty() {
                return AxiomResult::fail(
                    Witness::new("division-nonempty", &[x, y], r, CellSet::EMPTY)
                        .with_clause("right"),
                );
            }
            let l = t.left_division(y, x);
            if l.is_empty() {
                return AxiomResult::fail(
                    Witness::new("division-nonempty", &[y, x], l, CellSet::EMPTY)
                        .with_clause("left"),
                );
            }
        }
    }
    AxiomResult::HOLDS
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Kind;

    fn rows(r: &[&[&[usize]]]) -> HyperTable {
        let v: Vec<Vec<Vec<usize>>> = r
            .iter()
            .map(|row| row.iter().map(|c| c.to_vec()).collect())
            .collect();
        HyperTable::from_rows(Kind::Hyper, &v).unwrap()
    }

    /// Brute-force first associativity violation, written independently.
    fn first_assoc_violation(t: &HyperTable) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
        let n = t.order();
        let cell = |a: usize, b: usize| -> Vec<usize> { t.get(a, b).iter().collect() };
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut l: Vec<usize> = cell(x, y).iter().flat_map(|&a| cell(a, z)).collect();
                    let mut r: Vec<usize> = cell(y, z).iter().flat_map(|&b| cell(x, b)).collect();
                    l.sort();
                    l.dedup();
                    r.sort();
                    r.dedup();
                    if l != r {
                        return Some((vec![x, y, z], l, r));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn degenerate_table() {
        let d = HyperTable::degenerate(3);
        assert!(check_law(&d, Law::Associative).holds);
        let r = check_law(&d, Law::WeaklyAssociative);
        let w = r.witness.unwrap();
        assert_eq!(w.elements, vec![0, 0, 0]);
        assert!(w.lhs.is_empty() && w.rhs.is_empty());
    }

    #[test]
    fn order_two_associativity_witness() {
        let t = rows(&[&[&[0], &[0]], &[&[1], &[0]]]);
        let (elems, l, r) = first_assoc_violation(&t).unwrap();
        let w = check_law(&t, Law::Associative).witness.unwrap();
        assert_eq!(w.elements, elems);
        assert_eq!(w.lhs, CellSet::from_members(l));
        assert_eq!(w.rhs, CellSet::from_members(r));
        // the oracle puts the first violation at (1,0,1): (1.0).1 = {0}, 1.(0.1) = {1}
        assert_eq!(w.elements, vec![1, 0, 1]);
        assert_eq!(
            (w.lhs, w.rhs),
            (CellSet::singleton(0), CellSet::singleton(1))
        );
        // (1,1,1) is a violation too, just not the first
        assert_eq!(t.left_assoc(1, 1, 1), CellSet::singleton(0));
        assert_eq!(t.right_assoc(1, 1, 1), CellSet::singleton(1));
    }

    #[test]
    fn difference_composition_is_left_inverted() {
        let t = HyperTable::from_composition(3, |x, y| (y + 3 - x) % 3).unwrap();
        assert!(check_law(&t, Law::LeftInvertedAssociative).holds);
        assert!(check_law(&t, Law::Reproductive).holds);
        let w = check_law(&t, Law::Associative).witness.unwrap();
        assert_eq!(first_assoc_violation(&t).unwrap().0, w.elements);
        assert_eq!(w.elements, vec![1, 0, 0]);
    }

    #[test]
    fn reproductive_with_empty_cells() {
        let t = rows(&[&[&[], &[0, 1]], &[&[0, 1], &[]]]);
        assert!(check_law(&t, Law::Reproductive).holds);
        assert!(!check_law(&t, Law::CellwiseNonempty).holds);
    }

    #[test]
    fn law_ids_round_trip() {
        for l in Law::ALL {
            assert_eq!(l.id().parse::<Law>().unwrap(), l);
        }
        assert!(matches!(
            "bogus".parse::<Law>(),
            Err(AxiomError::Unknown(_))
        ));
    }

    #[test]
    fn total_and_degenerate() {
        assert!(check_law(&HyperTable::total(3), Law::Total).holds);
        assert!(check_law(&HyperTable::degenerate(3), Law::Degenerate).holds);
        assert!(!check_law(&HyperTable::total(3), Law::Degenerate).holds);
    }
}
