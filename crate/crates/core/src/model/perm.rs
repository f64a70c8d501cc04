use std::sync::OnceLock;

use itertools::Itertools;

use super::{CellSet, HyperTable, TwoOpModel};

/// Largest order for which [`lex_key`] packs a table into a `u128`.
pub const KEY_MAX_ORDER: usize = 5;

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

pub fn inverse(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (a, &b) in sigma.iter().enumerate() {
        inv[b] = a;
    }
    inv
}

pub fn is_permutation(sigma: &[usize]) -> bool {
    let n = sigma.len();
    let mut seen = vec![false; n];
    sigma
        .iter()
        .all(|&b| b < n && !std::mem::replace(&mut seen[b], true))
}

/// All permutations of `{0..n-1}` (as image arrays) that fix every listed
/// point, in lexicographic order of the image arrays.
pub fn permutations_fixing(n: usize, fixed: &[usize]) -> Vec<Vec<usize>> {
    (0..n)
        .permutations(n)
        .filter(|p| fixed.iter().all(|&f| p[f] == f))
        .collect()
}

/// All permutations sending each `from[i]` to `to[i]`.
pub fn permutations_mapping(n: usize, from: &[usize], to: &[usize]) -> Vec<Vec<usize>> {
    (0..n)
        .permutations(n)
        .filter(|p| from.iter().zip(to).all(|(&a, &b)| p[a] == b))
        .collect()
}

/// `apply_permutation`: the table `R` with `R[s(a)][s(b)] = s(T[a][b])`.
pub fn apply_permutation(table: &HyperTable, sigma: &[usize]) -> HyperTable {
    table.permute(sigma)
}

/// Lexicographically least relabelling of `table` over all permutations
/// that fix the points in `fixed`.
pub fn canonical_form(table: &HyperTable, fixed: &[usize]) -> HyperTable {
    let perms = permutations_fixing(table.order(), fixed);
    canonical_form_with(table, &perms)
}

/// As [`canonical_form`], over a precomputed permutation list.
pub fn canonical_form_with(table: &HyperTable, perms: &[Vec<usize>]) -> HyperTable {
    let mut best = *table;
    for sigma in perms {
        let cand = table.permute(sigma);
        if cand.cmp_cells(&best).is_lt() {
            best = cand;
        }
    }
    best
}

/// Canonical representative of a two-operation model: relabel so that the
/// zero becomes 0 and the one (if any) becomes 1, then take the least
/// `(add, mul)` pair in row-major lexicographic order.
pub fn canonical_two_op(model: &TwoOpModel) -> TwoOpModel {
    let n = model.order();
    let (from, to) = pinned_points(model);
    let perms = permutations_mapping(n, &from, &to);
    canonical_two_op_with(model, &perms)
}

pub(crate) fn pinned_points(model: &TwoOpModel) -> (Vec<usize>, Vec<usize>) {
    match model.one() {
        Some(one) if model.order() > 1 => (vec![model.zero(), one], vec![0, 1]),
        _ => (vec![model.zero()], vec![0]),
    }
}

pub fn canonical_two_op_with(model: &TwoOpModel, perms: &[Vec<usize>]) -> TwoOpModel {
    let mut best: Option<TwoOpModel> = None;
    for sigma in perms {
        let cand = model.permute(sigma);
        let better = match &best {
            None => true,
            Some(b) => cand.cmp_cells(b).is_lt(),
        };
        if better {
            best = Some(cand);
        }
    }
    best.expect("at least one permutation maps the pinned points")
}

fn subset_ranks(n: usize) -> &'static [u8] {
    static RANKS: OnceLock<Vec<Vec<u8>>> = OnceLock::new();
    let all = RANKS.get_or_init(|| {
        (0..=KEY_MAX_ORDER)
            .map(|n| {
                let mut sets: Vec<CellSet> = CellSet::all(n).collect();
                sets.sort();
                let mut ranks = vec![0u8; sets.len()];
                for (r, s) in sets.iter().enumerate() {
                    ranks[s.bits() as usize] = r as u8;
                }
                ranks
            })
            .collect()
    });
    &all[n]
}

/// Pack a table of order at most [`KEY_MAX_ORDER`] into an integer whose
/// numeric order agrees with the row-major lexicographic table order.
pub fn lex_key(table: &HyperTable) -> u128 {
    let n = table.order();
    assert!(
        n <= KEY_MAX_ORDER,
        "lex_key supports order <= {KEY_MAX_ORDER}"
    );
    let ranks = subset_ranks(n);
    table.cells().iter().fold(0u128, |acc, c| {
        (acc << n) | ranks[c.bits() as usize] as u128
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Kind;

    #[test]
    fn lex_key_orders_like_tables() {
        let tables: Vec<HyperTable> = (0..256u32)
            .map(|b| {
                HyperTable::from_fn(2, Kind::Hyper, |x, y| {
                    CellSet::from_bits(((b >> (2 * (2 * x + y))) & 3) as u16)
                })
                .unwrap()
            })
            .collect();
        for a in &tables {
            for b in &tables {
                assert_eq!(lex_key(a).cmp(&lex_key(b)), a.cmp_cells(b));
            }
        }
    }

    #[test]
    fn order_one_is_fixed() {
        let t = HyperTable::from_composition(1, |_, _| 0).unwrap();
        assert_eq!(canonical_form(&t, &[]), t);
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations_fixing(3, &[]).len(), 6);
        assert_eq!(permutations_fixing(4, &[0, 1]).len(), 2);
        assert_eq!(permutations_mapping(3, &[2], &[0]).len(), 2);
        assert!(is_permutation(&[2, 0, 1]));
        assert!(!is_permutation(&[0, 0, 1]));
        assert_eq!(inverse(&[2, 0, 1]), vec![1, 2, 0]);
    }
}
