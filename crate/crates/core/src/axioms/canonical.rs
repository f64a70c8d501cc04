//! The additive axioms of canonical and quasicanonical hypergroups.

use super::{AxiomError, AxiomResult, Witness};
use crate::model::{CellSet, HyperTable};

/// The opposite map `x -> -x` of a table with unique opposites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Opposites(Vec<usize>);

impl Opposites {
    pub fn get(&self, x: usize) -> usize {
        self.0[x]
    }

    /// Elementwise opposite of a set.
    pub fn neg(&self, a: CellSet) -> CellSet {
        a.map(|x| self.0[x])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

fn opposite_candidates(t: &HyperTable, zero: usize, x: usize) -> CellSet {
    (0..t.order())
        .filter(|&y| t.get(x, y).contains(zero))
        .collect()
}

/// Exactly one `x'` with `zero in x + x'`, for every `x`.
pub fn check_unique_opposite(t: &HyperTable, zero: usize) -> AxiomResult {
    for x in 0..t.order() {
        let c = opposite_candidates(t, zero, x);
        if c.len() != 1 {
            return AxiomResult::fail(Witness::new("unique-opposite", &[x], c, CellSet::EMPTY));
        }
    }
    AxiomResult::HOLDS
}

/// The opposite map, when every element has exactly one opposite.
pub fn opposite_map(t: &HyperTable, zero: usize) -> Option<Opposites> {
    (0..t.order())
        .map(|x| opposite_candidates(t, zero, x).single())
        .collect::<Option<Vec<_>>>()
        .map(Opposites)
}

fn require_opposites(t: &HyperTable, zero: usize) -> Result<Opposites, AxiomError> {
    opposite_map(t, zero).ok_or_else(|| {
        let bad = (0..t.order())
            .find(|&x| opposite_candidates(t, zero, x).len() != 1)
            .unwrap_or(0);
        AxiomError::OppositeUndefined(bad)
    })
}

/// `z in x + y` implies `x in z - y`.
///
/// The witness is `(x, y, z)` with `z - y` on the left and `{x}` on the right.
pub fn check_reversibility_canonical(
    t: &HyperTable,
    zero: usize,
) -> Result<AxiomResult, AxiomError> {
    let opp = require_opposites(t, zero)?;
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            for z in t.get(x, y) {
                let back = t.get(z, opp.get(y));
                if !back.contains(x) {
                    return Ok(AxiomResult::fail(Witness::new(
                        "reversibility-canonical",
                        &[x, y, z],
                        back,
                        CellSet::singleton(x),
                    )));
                }
            }
        }
    }
    Ok(AxiomResult::HOLDS)
}

/// `-(z + w) = (-z) + (-w)` for all `z, w`.
pub fn check_opposite_additivity(t: &HyperTable, zero: usize) -> Result<AxiomResult, AxiomError> {
    let opp = require_opposites(t, zero)?;
    let n = t.order();
    for z in 0..n {
        for w in 0..n {
            let lhs = opp.neg(t.get(z, w));
            let rhs = t.get(opp.get(z), opp.get(w));
            if lhs != rhs {
                return Ok(AxiomResult::fail(Witness::new(
                    "opposite-additivity",
                    &[z, w],
                    lhs,
                    rhs,
                )));
            }
        }
    }
    Ok(AxiomResult::HOLDS)
}

/// `x + 0 = 0 + x = {x}` for every `x`.
pub fn check_zero_scalar(t: &HyperTable, zero: usize) -> AxiomResult {
    for x in 0..t.order() {
        let me = CellSet::singleton(x);
        if t.get(x, zero) != me {
            return AxiomResult::fail(
                Witness::new("zero-scalar", &[x], t.get(x, zero), me).with_clause("right"),
            );
        }
        if t.get(zero, x) != me {
            return AxiomResult::fail(
                Witness::new("zero-scalar", &[x], t.get(zero, x), me).with_clause("left"),
            );
        }
    }
    AxiomResult::HOLDS
}

fn two_sided_candidates(t: &HyperTable, zero: usize, x: usize) -> CellSet {
    (0..t.order())
        .filter(|&y| t.get(x, y).contains(zero) && t.get(y, x).contains(zero))
        .collect()
}

/// Without commutativity: exactly one `x'` with `0 in x + x'`, exactly one
/// with `0 in x' + x`, and they coincide.
pub fn check_quasicanonical_opposite(t: &HyperTable, zero: usize) -> AxiomResult {
    for x in 0..t.order() {
        let right = opposite_candidates(t, zero, x);
        let left: CellSet = (0..t.order())
            .filter(|&y| t.get(y, x).contains(zero))
            .collect();
        if right.len() != 1 || left != right {
            return AxiomResult::fail(Witness::new("quasicanonical-opposite", &[x], right, left));
        }
    }
    AxiomResult::HOLDS
}

/// `z in x + y` implies `x in z - y` and `y in -x + z`.
pub fn check_quasicanonical_reversibility(
    t: &HyperTable,
    zero: usize,
) -> Result<AxiomResult, AxiomError> {
    let n = t.order();
    let mut opp = Vec::with_capacity(n);
    for x in 0..n {
        match two_sided_candidates(t, zero, x).single() {
            Some(o) if opposite_candidates(t, zero, x).len() == 1 => opp.push(o),
            _ => return Err(AxiomError::OppositeUndefined(x)),
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in t.get(x, y) {
                let back = t.get(z, opp[y]);
                if !back.contains(x) {
                    return Ok(AxiomResult::fail(
                        Witness::new(
                            "quasicanonical-reversibility",
                            &[x, y, z],
                            back,
                            CellSet::singleton(x),
                        )
                        .with_clause("right"),
                    ));
                }
                let front = t.get(opp[x], z);
                if !front.contains(y) {
                    return Ok(AxiomResult::fail(
                        Witness::new(
                            "quasicanonical-reversibility",
                            &[x, y, z],
                            front,
                            CellSet::singleton(y),
                        )
                        .with_clause("left"),
                    ));
                }
            }
        }
    }
    Ok(AxiomResult::HOLDS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Kind;

    fn table(rows: &[&[&[usize]]]) -> HyperTable {
        let v: Vec<Vec<Vec<usize>>> = rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_vec()).collect())
            .collect();
        HyperTable::from_rows(Kind::Hyper, &v).unwrap()
    }

    fn krasner_add() -> HyperTable {
        table(&[&[&[0], &[1]], &[&[1], &[0, 1]]])
    }

    fn sign_add() -> HyperTable {
        table(&[
            &[&[0], &[1], &[2]],
            &[&[1], &[1], &[0, 1, 2]],
            &[&[2], &[0, 1, 2], &[2]],
        ])
    }

    #[test]
    fn krasner_addition() {
        let k = krasner_add();
        assert!(check_unique_opposite(&k, 0).holds);
        assert_eq!(opposite_map(&k, 0).unwrap().as_slice(), &[0, 1]);
        assert!(check_reversibility_canonical(&k, 0).unwrap().holds);
        assert!(check_opposite_additivity(&k, 0).unwrap().holds);
        assert!(check_zero_scalar(&k, 0).holds);
        assert!(check_quasicanonical_opposite(&k, 0).holds);
        assert!(check_quasicanonical_reversibility(&k, 0).unwrap().holds);
    }

    #[test]
    fn sign_hyperfield_addition() {
        let s = sign_add();
        assert_eq!(opposite_map(&s, 0).unwrap().as_slice(), &[0, 2, 1]);
        assert!(check_reversibility_canonical(&s, 0).unwrap().holds);
        assert!(check_opposite_additivity(&s, 0).unwrap().holds);
    }

    #[test]
    fn total_table_has_no_unique_opposite() {
        let t = HyperTable::total(3);
        let w = check_unique_opposite(&t, 0).witness.unwrap();
        assert_eq!(w.elements, vec![0]);
        assert_eq!(w.lhs, CellSet::full(3));
        assert_eq!(
            check_reversibility_canonical(&t, 0),
            Err(AxiomError::OppositeUndefined(0))
        );
    }

    #[test]
    fn missing_opposite() {
        let t = table(&[&[&[0], &[1]], &[&[1], &[1]]]);
        let w = check_unique_opposite(&t, 0).witness.unwrap();
        assert_eq!(w.elements, vec![1]);
        assert!(w.lhs.is_empty());
    }

    #[test]
    fn group_is_additive() {
        let z4 = HyperTable::from_composition(4, |x, y| (x + y) % 4).unwrap();
        assert_eq!(opposite_map(&z4, 0).unwrap().as_slice(), &[0, 3, 2, 1]);
        assert!(check_opposite_additivity(&z4, 0).unwrap().holds);
        assert!(check_reversibility_canonical(&z4, 0).unwrap().holds);
    }
}
