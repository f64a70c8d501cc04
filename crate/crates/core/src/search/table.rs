use super::{left, right, Problem};
use crate::axioms::Law;
use crate::model::{inverse, permutations_fixing, CellSet, HyperTable, Kind};

/// What a single cell may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Any,
    NonEmpty,
    Singleton,
}

impl Domain {
    fn values(self, n: usize) -> Vec<CellSet> {
        let mut v: Vec<CellSet> = CellSet::all(n)
            .filter(|c| match self {
                Domain::Any => true,
                Domain::NonEmpty => !c.is_empty(),
                Domain::Singleton => c.len() == 1,
            })
            .collect();
        v.sort();
        v
    }
}

/// Backtracking over the cells of one table, row-major, values in table
/// order, so leaves come out in ascending table order.
///
/// Every constraint here only prunes; it never admits a table the full
/// check would reject, but callers must still run the full check at the
/// leaf for anything not listed (for example polysymmetry).
#[derive(Clone, Debug)]
pub struct TableSearch {
    n: usize,
    kind: Kind,
    values: Vec<CellSet>,
    assoc: bool,
    weak: bool,
    lia: bool,
    ria: bool,
    comm: bool,
    repro: bool,
    divisions: bool,
    neutral: Option<usize>,
    opposite: Option<usize>,
    zero_scalar: Option<usize>,
    orderly: Option<Vec<(Vec<usize>, Vec<usize>)>>,
}

impl TableSearch {
    pub fn new(order: usize, domain: Domain) -> Self {
        TableSearch {
            n: order,
            kind: if domain == Domain::Singleton {
                Kind::Composition
            } else {
                Kind::Hyper
            },
            values: domain.values(order),
            assoc: false,
            weak: false,
            lia: false,
            ria: false,
            comm: false,
            repro: false,
            divisions: false,
            neutral: None,
            opposite: None,
            zero_scalar: None,
            orderly: None,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Prune on `law`. Laws without a propagation rule are ignored.
    pub fn law(mut self, law: Law) -> Self {
        match law {
            Law::Associative => self.assoc = true,
            Law::WeaklyAssociative => self.weak = true,
            Law::LeftInvertedAssociative => self.lia = true,
            Law::RightInvertedAssociative => self.ria = true,
            Law::Commutative => self.comm = true,
            Law::Reproductive => self.repro = true,
            Law::CellwiseNonempty => self.values.retain(|c| !c.is_empty()),
            Law::Total => self.values.retain(|c| c.len() == self.n),
            Law::Degenerate => self.values.retain(|c| c.is_empty()),
        }
        self
    }

    pub fn laws(self, laws: impl IntoIterator<Item = Law>) -> Self {
        laws.into_iter().fold(self, Self::law)
    }

    /// Every `x/y` and `y\x` non-empty.
    pub fn divisions(mut self) -> Self {
        self.divisions = true;
        self
    }

    /// `x in ex = xe` for the given `e`.
    pub fn neutral(mut self, e: usize) -> Self {
        self.neutral = Some(e);
        self
    }

    /// Each `x` has exactly one `x'` with `zero in x x'`.
    pub fn unique_opposite(mut self, zero: usize) -> Self {
        self.opposite = Some(zero);
        self
    }

    /// `x 0 = 0 x = {x}`.
    pub fn zero_scalar(mut self, zero: usize) -> Self {
        self.zero_scalar = Some(zero);
        self
    }

    /// Cut prefixes that some relabelling from `fixed`'s stabiliser makes
    /// strictly smaller. Only sound when every other constraint is
    /// invariant under those relabellings.
    pub fn orderly(mut self, fixed: &[usize]) -> Self {
        let perms = permutations_fixing(self.n, fixed)
            .into_iter()
            .filter(|p| p.iter().enumerate().any(|(i, &j)| i != j))
            .map(|p| {
                let inv = inverse(&p);
                (p, inv)
            })
            .collect();
        self.orderly = Some(perms);
        self
    }

    fn idx(&self, x: usize, y: usize) -> usize {
        x * self.n + y
    }

    fn triples_ok(&self, t: &HyperTable, k: usize) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.assoc || self.weak {
                        if let (Some(l), Some(r)) = (left(t, k, x, y, z), right(t, k, x, y, z)) {
                            if self.assoc && l != r {
                                return false;
                            }
                            if self.weak && l.is_disjoint(r) {
                                return false;
                            }
                        }
                    }
                    if self.lia && x < z {
                        if let (Some(l), Some(r)) = (left(t, k, x, y, z), left(t, k, z, y, x)) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                    if self.ria && x < z {
                        if let (Some(l), Some(r)) = (right(t, k, x, y, z), right(t, k, z, y, x)) {
                            if l != r {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Some relabelling whose image is already smaller on the assigned
    /// prefix `0..=k`. Each entry pairs a permutation with its inverse.
    fn beaten(&self, t: &HyperTable, k: usize, perms: &[(Vec<usize>, Vec<usize>)]) -> bool {
        let n = self.n;
        'perm: for (sigma, inv) in perms {
            for p in 0..=k {
                let (i, j) = (p / n, p % n);
                let src = self.idx(inv[i], inv[j]);
                if src > k {
                    continue 'perm;
                }
                let image = t.cell(src).permute(sigma);
                match image.cmp(&t.cell(p)) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => continue 'perm,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        false
    }
}

impl Problem for TableSearch {
    type State = HyperTable;

    fn slots(&self) -> usize {
        self.n * self.n
    }

    fn root(&self) -> HyperTable {
        HyperTable::new(self.n, Kind::Hyper).expect("order within cap")
    }

    fn choices(&self, t: &HyperTable, k: usize, out: &mut Vec<CellSet>) {
        let n = self.n;
        let (a, b) = (k / n, k % n);
        let mut forced = None;
        let mut must = CellSet::EMPTY;
        let mut ok = true;
        let mut force = |v: CellSet| match forced {
            None => forced = Some(v),
            Some(f) => ok &= f == v,
        };
        if self.comm && b < a {
            force(t.get(b, a));
        }
        if let Some(z) = self.zero_scalar {
            if a == z {
                force(CellSet::singleton(b));
            }
            if b == z {
                force(CellSet::singleton(a));
            }
        }
        if let Some(e) = self.neutral {
            // x in ex = xe: the later of the two cells copies the earlier
            if a == e {
                must = must.with(b);
                if b < e {
                    force(t.get(b, e));
                }
            }
            if b == e {
                must = must.with(a);
                if a > e {
                    force(t.get(e, a));
                }
            }
        }
        if !ok {
            return;
        }
        match forced {
            Some(f) => {
                if must.is_subset(f) && self.values.binary_search(&f).is_ok() {
                    out.push(f);
                }
            }
            None => out.extend(self.values.iter().copied().filter(|v| must.is_subset(*v))),
        }
    }

    fn assign(&self, t: &mut HyperTable, k: usize, v: CellSet) -> bool {
        let n = self.n;
        t.set_cell(k, v);
        let (a, b) = (k / n, k % n);
        let full = CellSet::full(n);
        if let Some(z) = self.opposite {
            let found = (0..=b).filter(|&y| t.get(a, y).contains(z)).count();
            if found > 1 || (b == n - 1 && found != 1) {
                return false;
            }
        }
        if self.repro || self.divisions {
            if b == n - 1 && t.row_union(a) != full {
                return false;
            }
            if a == n - 1 && t.col_union(b) != full {
                return false;
            }
        }
        if (self.assoc || self.weak || self.lia || self.ria) && !self.triples_ok(t, k) {
            return false;
        }
        if let Some(perms) = &self.orderly {
            if b == n - 1 && self.beaten(t, k, perms) {
                return false;
            }
        }
        true
    }
}

impl TableSearch {
    /// The finished table with the right kind tag.
    pub fn finish(&self, t: &HyperTable) -> HyperTable {
        if self.kind == Kind::Composition {
            t.with_kind(Kind::Composition).expect("singleton domain")
        } else {
            *t
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::holds;
    use crate::model::canonical_form;
    use crate::search::{collect, SearchConfig};

    fn all_tables(n: usize, domain: Domain) -> Vec<HyperTable> {
        let p = TableSearch::new(n, domain);
        collect(&p, SearchConfig::default(), |t| Some(*t)).0
    }

    fn pruned(p: &TableSearch) -> Vec<HyperTable> {
        collect(p, SearchConfig::default(), |t| Some(*t)).0
    }

    #[test]
    fn raw_spaces_in_order() {
        let all = all_tables(2, Domain::Any);
        assert_eq!(all.len(), 256);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all_tables(2, Domain::NonEmpty).len(), 81);
        assert_eq!(all_tables(3, Domain::Singleton).len(), 19683);
    }

    /// Pruned leaves are a superset of the true models, so filtering them
    /// must give exactly the brute-force model set.
    fn agrees(p: TableSearch, laws: &[Law], extra: impl Fn(&HyperTable) -> bool) {
        let n = p.order();
        let ok = |t: &HyperTable| laws.iter().all(|&l| holds(t, l)) && extra(t);
        let want: Vec<_> = all_tables(n, Domain::Any)
            .into_iter()
            .filter(|t| ok(t))
            .collect();
        let got: Vec<_> = pruned(&p).into_iter().filter(|t| ok(t)).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn pruning_matches_brute_force_at_order_two() {
        use Law::*;
        for laws in [
            vec![Associative],
            vec![WeaklyAssociative],
            vec![LeftInvertedAssociative, Reproductive],
            vec![RightInvertedAssociative],
            vec![Associative, Reproductive, Commutative],
        ] {
            agrees(
                TableSearch::new(2, Domain::Any).laws(laws.clone()),
                &laws,
                |_| true,
            );
        }
        for e in 0..2 {
            agrees(
                TableSearch::new(2, Domain::Any).law(Associative).neutral(e),
                &[Associative],
                |t| crate::axioms::check_neutral(t, e).holds,
            );
            agrees(
                TableSearch::new(2, Domain::Any)
                    .unique_opposite(e)
                    .zero_scalar(e),
                &[],
                |t| {
                    crate::axioms::check_unique_opposite(t, e).holds
                        && crate::axioms::check_zero_scalar(t, e).holds
                },
            );
        }
    }

    #[test]
    fn orderly_keeps_every_class() {
        let laws = [Law::Associative, Law::Reproductive];
        let p = TableSearch::new(3, Domain::NonEmpty).laws(laws);
        let mut classes: Vec<_> = pruned(&p)
            .into_iter()
            .filter(|t| laws.iter().all(|&l| holds(t, l)))
            .map(|t| canonical_form(&t, &[]))
            .collect();
        classes.sort();
        classes.dedup();
        let orderly = TableSearch::new(3, Domain::NonEmpty)
            .laws(laws)
            .orderly(&[]);
        let reps: Vec<_> = pruned(&orderly)
            .into_iter()
            .filter(|t| laws.iter().all(|&l| holds(t, l)) && canonical_form(t, &[]) == *t)
            .collect();
        assert_eq!(reps, classes);
    }
}
