use serde::Serialize;

use super::{AxiomResult, Witness};
use crate::model::{CellSet, HyperTable};

/// Identity elements of a table, by kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Identities {
    pub two_sided: CellSet,
    pub scalar: CellSet,
    pub strong: CellSet,
    pub left: CellSet,
    pub right: CellSet,
}

pub fn find_identities(t: &HyperTable) -> Identities {
    let n = t.order();
    let mut ids = Identities {
        two_sided: CellSet::EMPTY,
        scalar: CellSet::EMPTY,
        strong: CellSet::EMPTY,
        left: CellSet::EMPTY,
        right: CellSet::EMPTY,
    };
    for e in 0..n {
        let left = (0..n).all(|x| t.get(e, x).contains(x));
        let right = (0..n).all(|x| t.get(x, e).contains(x));
        if left {
            ids.left = ids.left.with(e);
        }
        if right {
            ids.right = ids.right.with(e);
        }
        if left && right {
            ids.two_sided = ids.two_sided.with(e);
            if (0..n).all(|x| {
                t.get(x, e) == CellSet::singleton(x) && t.get(e, x) == CellSet::singleton(x)
            }) {
                ids.scalar = ids.scalar.with(e);
            }
            let ex_bound = |x: usize| CellSet::singleton(e).with(x);
            if (0..n).all(|x| t.get(x, e) == t.get(e, x) && t.get(x, e).is_subset(ex_bound(x))) {
                ids.strong = ids.strong.with(e);
            }
        }
    }
    ids
}

/// Elements `x != e` with `e in ex` and `e in xe`.
pub fn attractive_elements(t: &HyperTable, e: usize) -> CellSet {
    (0..t.order())
        .filter(|&x| x != e && t.get(e, x).contains(e) && t.get(x, e).contains(e))
        .collect()
}

/// `S(x) = { x' : x x' = x' x = {e} }`.
pub fn symmetric_set(t: &HyperTable, e: usize, x: usize) -> CellSet {
    let target = CellSet::singleton(e);
    (0..t.order())
        .filter(|&y| t.get(x, y) == target && t.get(y, x) == target)
        .collect()
}

/// The membership reading: `{ x' : e in x x' and e in x' x }`.
pub fn symmetric_set_weak(t: &HyperTable, e: usize, x: usize) -> CellSet {
    (0..t.order())
        .filter(|&y| t.get(x, y).contains(e) && t.get(y, x).contains(e))
        .collect()
}

/// `x in ex = xe` for every `x`.
pub fn check_neutral(t: &HyperTable, e: usize) -> AxiomResult {
    for x in 0..t.order() {
        let (ex, xe) = (t.get(e, x), t.get(x, e));
        if ex != xe || !ex.contains(x) {
            return AxiomResult::fail(Witness::new("neutral", &[x], ex, xe));
        }
    }
    AxiomResult::HOLDS
}

fn polysymmetry_with(
    t: &HyperTable,
    e: usize,
    id: &str,
    sym: fn(&HyperTable, usize, usize) -> CellSet,
) -> AxiomResult {
    for x in 0..t.order() {
        let s = sym(t, e, x);
        if s.is_empty() {
            return AxiomResult::fail(Witness::new(id, &[x], s, CellSet::EMPTY));
        }
    }
    AxiomResult::HOLDS
}

/// Every element has a symmetric element with respect to `e`.
pub fn check_polysymmetry(t: &HyperTable, e: usize) -> AxiomResult {
    polysymmetry_with(t, e, "polysymmetry", symmetric_set)
}

pub fn check_polysymmetry_weak(t: &HyperTable, e: usize) -> AxiomResult {
    polysymmetry_with(t, e, "polysymmetry-weak", symmetric_set_weak)
}

fn reversibility_with(
    t: &HyperTable,
    e: usize,
    id: &str,
    sym: fn(&HyperTable, usize, usize) -> CellSet,
) -> AxiomResult {
    let n = t.order();
    let sets: Vec<CellSet> = (0..n).map(|x| sym(t, e, x)).collect();
    for x in 0..n {
        for y in 0..n {
            if t.get(x, y).is_empty() {
                continue;
            }
            // every z' must lie in y'x' for every choice of x' and y'
            let mut required = t.carrier();
            for xs in sets[x] {
                for ys in sets[y] {
                    required = required.intersection(t.get(ys, xs));
                }
            }
            for z in t.get(x, y) {
                if !sets[z].is_subset(required) {
                    return AxiomResult::fail(Witness::new(id, &[x, y, z], sets[z], required));
                }
            }
        }
    }
    AxiomResult::HOLDS
}

/// If `z in xy`, `x' in S(x)`, `y' in S(y)` and `z' in S(z)`, then `z' in y'x'`.
///
/// The witness holds `S(z)` on the left and the intersection of all `y'x'`
/// on the right; a violation means the left is not contained in the right.
pub fn check_reversibility_poly(t: &HyperTable, e: usize) -> AxiomResult {
    reversibility_with(t, e, "reversibility-poly", symmetric_set)
}

pub fn check_reversibility_poly_weak(t: &HyperTable, e: usize) -> AxiomResult {
    reversibility_with(t, e, "reversibility-poly-weak", symmetric_set_weak)
}

/// Some `e` with `ea = a = ae` for all `a`, and every `a` with an `a'`
/// such that `a'a = e = aa'` (set equality with `{e}`).
pub fn has_identity_and_inverses(t: &HyperTable) -> AxiomResult {
    let n = t.order();
    let identity = (0..n).find(|&e| {
        (0..n).all(|a| t.get(e, a) == CellSet::singleton(a) && t.get(a, e) == CellSet::singleton(a))
    });
    let Some(e) = identity else {
        return AxiomResult::fail(
            Witness::new(
                "identity-and-inverses",
                &[0],
                CellSet::EMPTY,
                CellSet::EMPTY,
            )
            .with_clause("identity"),
        );
    };
    for a in 0..n {
        let inv = symmetric_set(t, e, a);
        if inv.is_empty() {
            return AxiomResult::fail(
                Witness::new("identity-and-inverses", &[a], inv, CellSet::EMPTY)
                    .with_clause("inverse"),
            );
        }
    }
    AxiomResult::HOLDS
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> HyperTable {
        HyperTable::from_composition(2, |x, y| (x + y) % 2).unwrap()
    }

    #[test]
    fn group_identities() {
        let ids = find_identities(&z2());
        let zero = CellSet::singleton(0);
        assert_eq!((ids.two_sided, ids.scalar, ids.strong), (zero, zero, zero));
        assert!(attractive_elements(&z2(), 0).is_empty());
        assert_eq!(symmetric_set(&z2(), 0, 1), CellSet::singleton(1));
        assert!(check_polysymmetry(&z2(), 0).holds);
        assert!(check_reversibility_poly(&z2(), 0).holds);
        assert!(has_identity_and_inverses(&z2()).holds);
    }

    #[test]
    fn total_table_identities() {
        // every e is a two-sided identity; xe = {0,1} = {e,x} only when x != e,
        // and for x = e it is {0,1} which is not inside {e}.
        let t = HyperTable::total(2);
        let ids = find_identities(&t);
        assert_eq!(ids.two_sided, CellSet::full(2));
        assert!(ids.scalar.is_empty());
        assert!(ids.strong.is_empty());
        assert_eq!(attractive_elements(&t, 0), CellSet::singleton(1));
        assert!(symmetric_set(&t, 0, 0).is_empty());
        let r = check_polysymmetry(&t, 0);
        assert_eq!(r.witness.unwrap().elements, vec![0]);
    }

    #[test]
    fn degenerate_identities() {
        let d = HyperTable::degenerate(2);
        let ids = find_identities(&d);
        assert!(ids.two_sided.is_empty() && ids.left.is_empty() && ids.right.is_empty());
        assert!(check_reversibility_poly(&d, 0).holds);
        assert!(check_reversibility_poly(&d, 1).holds);
    }

    #[test]
    fn order_one() {
        let t = HyperTable::from_composition(1, |_, _| 0).unwrap();
        assert!(check_polysymmetry(&t, 0).holds);
    }
}
