use super::{assoc_ok, collect, Domain, Problem, SearchConfig, TableSearch};
use crate::axioms::{ring::abelian_group, Law};
use crate::model::{CellSet, HyperTable, Kind};

/// What the restriction of a multiplication to `H* = H \ {0}` must be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulShape {
    Semigroup,
    Group,
}

/// Every composition table with `zero` absorbing whose restriction to
/// `H*` is closed and of the given shape, in ascending table order. With
/// `one`, that element must be the identity of `H*`.
pub fn mul_tables(n: usize, zero: usize, one: Option<usize>, shape: MulShape) -> Vec<HyperTable> {
    let nz: Vec<usize> = (0..n).filter(|&x| x != zero).collect();
    let m = nz.len();
    if m == 0 || one.is_some_and(|o| o == zero || o >= n) {
        return Vec::new();
    }
    let mut base = HyperTable::new(n, Kind::Composition).expect("order within cap");
    for x in 0..n {
        base.set(x, zero, CellSet::singleton(zero));
        base.set(zero, x, CellSet::singleton(zero));
    }
    let mut out = Vec::new();
    let mut digits = vec![0usize; m * m];
    loop {
        let mut t = base;
        for (i, &d) in digits.iter().enumerate() {
            t.set(nz[i / m], nz[i % m], CellSet::singleton(nz[d]));
        }
        if shape_ok(&t, &nz, one, shape) {
            out.push(t);
        }
        // odometer, last cell fastest, so tables come out in order
        let mut i = m * m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < m {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn shape_ok(t: &HyperTable, nz: &[usize], one: Option<usize>, shape: MulShape) -> bool {
    let v = |a, b| t.value(a, b).expect("composition");
    for &a in nz {
        for &b in nz {
            for &c in nz {
                if v(v(a, b), c) != v(a, v(b, c)) {
                    return false;
                }
            }
        }
    }
    let identity = nz
        .iter()
        .copied()
        .find(|&e| nz.iter().all(|&a| v(e, a) == a && v(a, e) == a));
    if let Some(o) = one {
        if identity != Some(o) {
            return false;
        }
    }
    match shape {
        MulShape::Semigroup => true,
        MulShape::Group => match identity {
            None => false,
            Some(e) => nz
                .iter()
                .all(|&a| nz.iter().any(|&b| v(a, b) == e && v(b, a) == e)),
        },
    }
}

/// Every abelian group table on `n` labelled elements, with its identity,
/// in ascending table order.
pub fn abelian_groups(n: usize, cfg: SearchConfig) -> Vec<(HyperTable, usize)> {
    let p = TableSearch::new(n, Domain::Singleton).laws([Law::Associative, Law::Commutative]);
    collect(&p, cfg, |t| {
        let t = p.finish(t);
        (0..n).find(|&z| abelian_group(&t, z).holds).map(|z| (t, z))
    })
    .0
}

/// Backtracking over an additive table with the multiplication fixed:
/// the generator for hyperfields, hyperrings and M-polysymmetrical
/// hyperrings.
#[derive(Clone, Debug)]
pub struct AddSearch {
    mul: HyperTable,
    zero: usize,
    values: Vec<CellSet>,
    comm: bool,
    assoc: bool,
    opposite: bool,
    neutral: bool,
    distributive: bool,
    /// For each `g` in a multiplicative group on `H*`: `g` and the map
    /// `a -> g^-1 a`.
    action: Vec<(usize, Vec<usize>)>,
}

impl AddSearch {
    pub fn new(mul: HyperTable, zero: usize) -> Self {
        let mut values: Vec<CellSet> = CellSet::all(mul.order()).collect();
        values.sort();
        AddSearch {
            mul,
            zero,
            values,
            comm: false,
            assoc: false,
            opposite: false,
            neutral: false,
            distributive: false,
            action: Vec::new(),
        }
    }

    pub fn mul(&self) -> &HyperTable {
        &self.mul
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn commutative(mut self) -> Self {
        self.comm = true;
        self
    }

    pub fn associative(mut self) -> Self {
        self.assoc = true;
        self
    }

    pub fn unique_opposite(mut self) -> Self {
        self.opposite = true;
        self
    }

    /// `x in 0 + x = x + 0`.
    pub fn neutral(mut self) -> Self {
        self.neutral = true;
        self
    }

    /// `z(x + y) = zx + zy` and `(x + y)z = xz + yz`.
    pub fn distributive(mut self) -> Self {
        self.distributive = true;
        self
    }

    /// Use `(gx) + (gy) = g(x + y)` to copy cells along the orbits of a
    /// multiplicative group on `H*`. Only valid together with
    /// [`distributive`](Self::distributive) and a group multiplication.
    pub fn group_action(mut self) -> Self {
        let n = self.mul.order();
        let v = |a, b| self.mul.value(a, b).expect("composition");
        self.action = (0..n)
            .filter(|&g| g != self.zero)
            .filter_map(|g| {
                let pre: Option<Vec<usize>> =
                    (0..n).map(|a| (0..n).find(|&x| v(g, x) == a)).collect();
                pre.map(|p| (g, p))
            })
            .collect();
        self
    }

    fn mul_set_left(&self, z: usize, a: CellSet) -> CellSet {
        self.mul.product_left(z, a)
    }
}

impl Problem for AddSearch {
    type State = HyperTable;

    fn slots(&self) -> usize {
        let n = self.mul.order();
        n * n
    }

    fn root(&self) -> HyperTable {
        HyperTable::new(self.mul.order(), Kind::Hyper).expect("order within cap")
    }

    fn choices(&self, t: &HyperTable, k: usize, out: &mut Vec<CellSet>) {
        let n = t.order();
        let (a, b) = (k / n, k % n);
        let mut forced = None;
        let mut ok = true;
        let mut force = |v: CellSet| match forced {
            None => forced = Some(v),
            Some(f) => ok &= f == v,
        };
        if self.comm && b < a {
            force(t.get(b, a));
        }
        for (g, pre) in &self.action {
            let (x, y) = (pre[a], pre[b]);
            if x * n + y < k {
                force(self.mul_set_left(*g, t.get(x, y)));
            }
        }
        let mut must = CellSet::EMPTY;
        if self.neutral {
            if a == self.zero {
                must = must.with(b);
            }
            if b == self.zero {
                must = must.with(a);
                if a > self.zero {
                    force(t.get(self.zero, a));
                }
            }
            if a == self.zero && b < self.zero {
                force(t.get(b, self.zero));
            }
        }
        if !ok {
            return;
        }
        match forced {
            Some(f) if must.is_subset(f) => out.push(f),
            Some(_) => {}
            None => out.extend(self.values.iter().copied().filter(|v| must.is_subset(*v))),
        }
    }

    fn assign(&self, t: &mut HyperTable, k: usize, v: CellSet) -> bool {
        let n = t.order();
        t.set_cell(k, v);
        let (a, b) = (k / n, k % n);
        if self.opposite {
            let found = (0..=b).filter(|&y| t.get(a, y).contains(self.zero)).count();
            if found > 1 || (b == n - 1 && found != 1) {
                return false;
            }
        }
        if self.assoc && !assoc_ok(t, k) {
            return false;
        }
        if self.distributive {
            let val = |x, y| self.mul.value(x, y).expect("composition");
            for z in 0..n {
                for x in 0..n {
                    for y in 0..n {
                        if x * n + y > k {
                            continue;
                        }
                        let (l, r) = (val(z, x), val(z, y));
                        if l * n + r <= k && self.mul.product_left(z, t.get(x, y)) != t.get(l, r) {
                            return false;
                        }
                        let (l, r) = (val(x, z), val(y, z));
                        if l * n + r <= k && self.mul.product_right(t.get(x, y), z) != t.get(l, r) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Backtracking over a multiplicative table with an abelian additive group
/// fixed: the generator for multiplicative hyperrings.
#[derive(Clone, Debug)]
pub struct MulSearch {
    add: HyperTable,
    zero: usize,
    neg: Vec<usize>,
    values: Vec<CellSet>,
    assoc: bool,
    inclusion: bool,
    sign: bool,
}

impl MulSearch {
    /// `add` must be an abelian group with identity `zero`.
    pub fn new(add: HyperTable, zero: usize) -> Self {
        let n = add.order();
        let neg = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| add.value(x, y) == Some(zero))
                    .expect("group inverse")
            })
            .collect();
        let mut values: Vec<CellSet> = CellSet::all(n).collect();
        values.sort();
        MulSearch {
            add,
            zero,
            neg,
            values,
            assoc: false,
            inclusion: false,
            sign: false,
        }
    }

    pub fn add(&self) -> &HyperTable {
        &self.add
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn associative(mut self) -> Self {
        self.assoc = true;
        self
    }

    /// `a(b + c)` inside `ab + ac`, and on the right.
    pub fn inclusion(mut self) -> Self {
        self.inclusion = true;
        self
    }

    /// `a(-b) = (-a)b = -(ab)`, used to copy cells.
    pub fn sign_rule(mut self) -> Self {
        self.sign = true;
        self
    }

    pub fn nonempty(mut self) -> Self {
        self.values.retain(|c| !c.is_empty());
        self
    }
}

impl Problem for MulSearch {
    type State = HyperTable;

    fn slots(&self) -> usize {
        let n = self.add.order();
        n * n
    }

    fn root(&self) -> HyperTable {
        HyperTable::new(self.add.order(), Kind::Hyper).expect("order within cap")
    }

    fn choices(&self, t: &HyperTable, k: usize, out: &mut Vec<CellSet>) {
        let n = t.order();
        let (a, b) = (k / n, k % n);
        let neg = |c: CellSet| c.map(|x| self.neg[x]);
        let mut forced = None;
        let mut ok = true;
        let mut force = |v: CellSet| match forced {
            None => forced = Some(v),
            Some(f) => ok &= f == v,
        };
        if self.sign {
            let (na, nb) = (self.neg[a], self.neg[b]);
            // ab = -(a(-b)) = -((-a)b) = (-a)(-b)
            if a * n + nb < k {
                force(neg(t.get(a, nb)));
            }
            if na * n + b < k {
                force(neg(t.get(na, b)));
            }
            if na * n + nb < k {
                force(t.get(na, nb));
            }
        }
        if !ok {
            return;
        }
        match forced {
            Some(f) => {
                if self.values.contains(&f) {
                    out.push(f)
                }
            }
            None => out.extend_from_slice(&self.values),
        }
    }

    fn assign(&self, t: &mut HyperTable, k: usize, v: CellSet) -> bool {
        let n = t.order();
        t.set_cell(k, v);
        if self.assoc && !assoc_ok(t, k) {
            return false;
        }
        if self.inclusion {
            let sum = |x, y| self.add.value(x, y).expect("group");
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let s = sum(b, c);
                        if a * n + s <= k && a * n + b <= k && a * n + c <= k {
                            let rhs = self.add.product(t.get(a, b), t.get(a, c));
                            if !t.get(a, s).is_subset(rhs) {
                                return false;
                            }
                        }
                        if s * n + a <= k && b * n + a <= k && c * n + a <= k {
                            let rhs = self.add.product(t.get(b, a), t.get(c, a));
                            if !t.get(s, a).is_subset(rhs) {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{check_ring_axioms, holds, RingAxiom};
    use crate::classify::{satisfies_two_op, Structure};
    use crate::model::TwoOpModel;

    #[test]
    fn labelled_abelian_groups() {
        let count = |n| abelian_groups(n, SearchConfig::default()).len();
        // n! / |Aut| summed over the isomorphism types
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 2);
        assert_eq!(count(3), 3);
        assert_eq!(count(4), 16);
    }

    #[test]
    fn multiplicative_groups() {
        // H* of order 2 carries one group; with a pinned one there is one table
        assert_eq!(mul_tables(3, 0, Some(1), MulShape::Group).len(), 1);
        // H* of order 3: cyclic only, identity pinned
        assert_eq!(mul_tables(4, 0, Some(1), MulShape::Group).len(), 1);
        // semigroups on two labelled points: 8
        assert_eq!(mul_tables(3, 0, None, MulShape::Semigroup).len(), 8);
        assert!(mul_tables(1, 0, None, MulShape::Semigroup).is_empty());
    }

    #[test]
    fn add_search_matches_filter_at_order_two() {
        for zero in 0..2 {
            let one = 1 - zero;
            for mul in mul_tables(2, zero, Some(one), MulShape::Group) {
                let raw = TableSearch::new(2, Domain::Any);
                let (all, _) = collect(&raw, SearchConfig::default(), |t| Some(*t));
                let want: Vec<_> = all
                    .into_iter()
                    .filter(|a| {
                        satisfies_two_op(
                            &TwoOpModel::new(*a, mul, zero, Some(one)).unwrap(),
                            Structure::HyperfieldDef15,
                        )
                    })
                    .collect();
                let p = AddSearch::new(mul, zero)
                    .commutative()
                    .associative()
                    .unique_opposite()
                    .distributive()
                    .group_action();
                let (got, _) = collect(&p, SearchConfig::default(), |a| {
                    satisfies_two_op(
                        &TwoOpModel::new(*a, mul, zero, Some(one)).unwrap(),
                        Structure::HyperfieldDef15,
                    )
                    .then_some(*a)
                });
                assert_eq!(got, want);
                assert_eq!(want.len(), 2, "the field and the Krasner hyperfield");
            }
        }
    }

    #[test]
    fn mul_search_matches_filter_on_z2() {
        let z2 = HyperTable::from_composition(2, |x, y| (x + y) % 2).unwrap();
        let ok = |m: &HyperTable| {
            let model = TwoOpModel::new(z2, *m, 0, None).unwrap();
            holds(m, Law::Associative)
                && [RingAxiom::DistributiveInclusion, RingAxiom::SignRule]
                    .iter()
                    .all(|&a| check_ring_axioms(&model, a).unwrap().holds)
        };
        let raw = TableSearch::new(2, Domain::Any);
        let want: Vec<_> = collect(&raw, SearchConfig::default(), |t| ok(t).then_some(*t)).0;
        let p = MulSearch::new(z2, 0).associative().inclusion().sign_rule();
        let got: Vec<_> = collect(&p, SearchConfig::default(), |t| ok(t).then_some(*t)).0;
        assert_eq!(got, want);
        assert!(!want.is_empty());
    }
}
