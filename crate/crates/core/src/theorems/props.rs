//! Consequences of the quasi-M-polysymmetrical axioms, each as a check
//! returning its first violation.

use crate::axioms::{attractive_elements, symmetric_set, Witness};
use crate::model::{CellSet, HyperTable};

/// Property ids in the order they are checked.
pub const PROPERTY_IDS: [&str; 10] = [
    "symmetric-of-identity",
    "identity-idempotent",
    "no-attractive-elements",
    "only-identity-absorbs",
    "symmetric-classes-agree",
    "symmetric-set-is-class",
    "overlapping-classes",
    "classes-partition",
    "product-in-one-class",
    "overlapping-products",
];

fn fail(id: &str, elements: &[usize], lhs: CellSet, rhs: CellSet) -> Option<Witness> {
    Some(Witness::new(id, elements, lhs, rhs))
}

/// First property in [`PROPERTY_IDS`] order that fails for identity `e`.
pub fn qmp_properties(t: &HyperTable, e: usize) -> Option<Witness> {
    let n = t.order();
    let s: Vec<CellSet> = (0..n).map(|x| symmetric_set(t, e, x)).collect();
    let class = |x: usize| t.get(x, e);
    let id = CellSet::singleton(e);

    if s[e] != id {
        return fail(PROPERTY_IDS[0], &[e], s[e], id);
    }
    if t.get(e, e) != id {
        return fail(PROPERTY_IDS[1], &[e], t.get(e, e), id);
    }
    let attractive = attractive_elements(t, e);
    if !attractive.is_empty() {
        return fail(PROPERTY_IDS[2], &[e], attractive, CellSet::EMPTY);
    }
    for x in 0..n {
        for y in 0..n {
            if x != e && t.get(x, y).contains(y) {
                return fail(PROPERTY_IDS[3], &[x, y], t.get(x, y), CellSet::singleton(y));
            }
        }
    }
    for (x, &sx) in s.iter().enumerate() {
        for a in sx {
            for b in sx {
                if t.get(e, a) != t.get(e, b) {
                    return fail(PROPERTY_IDS[4], &[x, a, b], t.get(e, a), t.get(e, b));
                }
            }
        }
    }
    for (x, &sx) in s.iter().enumerate() {
        for a in sx {
            if sx != class(a) {
                return fail(PROPERTY_IDS[5], &[x, a], sx, class(a));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            if class(x).is_disjoint(class(y)) {
                continue;
            }
            for a in s[x] {
                if !s[a].contains(x) || !s[a].contains(y) {
                    return fail(
                        PROPERTY_IDS[6],
                        &[x, y, a],
                        s[a],
                        CellSet::from_members([x, y]),
                    );
                }
            }
            if class(x) != class(y) {
                return fail(PROPERTY_IDS[6], &[x, y], class(x), class(y));
            }
        }
    }
    let mut covered = CellSet::EMPTY;
    for x in 0..n {
        if class(x).is_empty() {
            return fail(PROPERTY_IDS[7], &[x], CellSet::EMPTY, CellSet::EMPTY);
        }
        covered = covered.union(class(x));
        for y in 0..n {
            if class(x) != class(y) && !class(x).is_disjoint(class(y)) {
                return fail(PROPERTY_IDS[7], &[x, y], class(x), class(y));
            }
        }
    }
    if covered != t.carrier() {
        return fail(PROPERTY_IDS[7], &[], covered, t.carrier());
    }
    for x in 0..n {
        for y in 0..n {
            let p = t.get(x, y);
            for z in p {
                for w in p {
                    if class(z) != class(w) {
                        return fail(PROPERTY_IDS[8], &[x, y, z, w], class(z), class(w));
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let (a, b) = (t.get(x, y), t.get(z, w));
                    if !a.is_disjoint(b) && a != b {
                        return fail(PROPERTY_IDS[9], &[x, y, z, w], a, b);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_satisfy_everything() {
        let z3 = HyperTable::from_composition(3, |x, y| (x + y) % 3).unwrap();
        assert_eq!(qmp_properties(&z3, 0), None);
    }

    #[test]
    fn total_table_fails_first_property() {
        // S(0) is empty since 00 = {0,1} is not {0}
        let w = qmp_properties(&HyperTable::total(2), 0).unwrap();
        assert_eq!(w.axiom, PROPERTY_IDS[0]);
    }
}
