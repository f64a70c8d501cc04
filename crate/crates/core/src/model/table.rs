use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CellSet, ModelError, MAX_ORDER};

const CAPACITY: usize = MAX_ORDER * MAX_ORDER;

/// Whether a table is declared as a composition (singleton cells) or a
/// general hypercomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hyper,
    Composition,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Hyper => "hyper",
            Kind::Composition => "composition",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "hyper" => Ok(Kind::Hyper),
            "composition" => Ok(Kind::Composition),
            other => Err(format!("unknown operation kind `{other}`")),
        }
    }
}

/// A law of synthesis on `{0, .., order-1}`: an `order x order` table of
/// cell sets. Cells are stored inline, so the table is `Copy` and the
/// search code can mutate one in place without allocating.
///
/// Unused capacity past `order * order` is always zero, which keeps the
/// derived `Eq` and `Hash` structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct HyperTable {
    order: u8,
    kind: Kind,
    cells: [CellSet; CAPACITY],
}

impl HyperTable {
    /// The degenerate table (every cell empty).
    pub fn new(order: usize, kind: Kind) -> Result<Self, ModelError> {
        if order == 0 || order > MAX_ORDER {
            return Err(ModelError::OrderOutOfRange(order));
        }
        Ok(HyperTable {
            order: order as u8,
            kind,
            cells: [CellSet::EMPTY; CAPACITY],
        })
    }

    pub fn degenerate(order: usize) -> Self {
        Self::new(order, Kind::Hyper).expect("order within cap")
    }

    pub fn total(order: usize) -> Self {
        Self::from_fn(order, Kind::Hyper, |_, _| CellSet::full(order)).expect("order within cap")
    }

    pub fn from_fn(
        order: usize,
        kind: Kind,
        mut f: impl FnMut(usize, usize) -> CellSet,
    ) -> Result<Self, ModelError> {
        let mut t = Self::new(order, kind)?;
        for x in 0..order {
            for y in 0..order {
                t.set(x, y, f(x, y));
            }
        }
        t.validate()?;
        Ok(t)
    }

    /// Build a composition table from single-valued entries.
    pub fn from_composition(
        order: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, ModelError> {
        Self::from_fn(order, Kind::Composition, |x, y| CellSet::singleton(f(x, y)))
    }

    /// Build from nested member lists, row-major.
    pub fn from_rows(kind: Kind, rows: &[Vec<Vec<usize>>]) -> Result<Self, ModelError> {
        let order = rows.len();
        let mut t = Self::new(order, kind)?;
        for (x, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(ModelError::Shape(format!(
                    "row {x} has {} cells, expected {order}",
                    row.len()
                )));
            }
            for (y, cell) in row.iter().enumerate() {
                if let Some(&bad) = cell.iter().find(|&&m| m >= order) {
                    return Err(ModelError::ElementOutOfRange {
                        element: bad,
                        order,
                    });
                }
                t.set(x, y, CellSet::from_members(cell.iter().copied()));
            }
        }
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                let c = self.get(x, y);
                if !c.fits(n) {
                    return Err(ModelError::ElementOutOfRange {
                        element: c.max().unwrap_or(0),
                        order: n,
                    });
                }
                if self.kind == Kind::Composition && c.len() != 1 {
                    return Err(ModelError::NotSingleton { row: x, col: y });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order as usize
    }

    #[inline]
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn with_kind(mut self, kind: Kind) -> Result<Self, ModelError> {
        self.kind = kind;
        self.validate()?;
        Ok(self)
    }

    /// The whole carrier as a set.
    #[inline]
    pub fn carrier(&self) -> CellSet {
        CellSet::full(self.order())
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> CellSet {
        self.cells[x * self.order as usize + y]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: CellSet) {
        let n = self.order as usize;
        self.cells[x * n + y] = v;
    }

    /// Cell by row-major index.
    #[inline]
    pub fn cell(&self, idx: usize) -> CellSet {
        self.cells[idx]
    }

    #[inline]
    pub fn set_cell(&mut self, idx: usize, v: CellSet) {
        self.cells[idx] = v;
    }

    /// The `order * order` cells in row-major order.
    pub fn cells(&self) -> &[CellSet] {
        let n = self.order();
        &self.cells[..n * n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[CellSet]> {
        self.cells().chunks(self.order())
    }

    /// Single value of cell `(x, y)` when it is a singleton.
    #[inline]
    pub fn value(&self, x: usize, y: usize) -> Option<usize> {
        self.get(x, y).single()
    }

    pub fn is_single_valued(&self) -> bool {
        self.cells().iter().all(|c| c.len() == 1)
    }

    /// `A . B`: the union of `a . b` over `a in A`, `b in B`.
    #[inline]
    pub fn product(&self, a: CellSet, b: CellSet) -> CellSet {
        let mut out = CellSet::EMPTY;
        for x in a {
            for y in b {
                out = out.union(self.get(x, y));
            }
        }
        out
    }

    /// `A . y`
    #[inline]
    pub fn product_right(&self, a: CellSet, y: usize) -> CellSet {
        a.iter()
            .fold(CellSet::EMPTY, |acc, x| acc.union(self.get(x, y)))
    }

    /// `x . B`
    #[inline]
    pub fn product_left(&self, x: usize, b: CellSet) -> CellSet {
        b.iter()
            .fold(CellSet::EMPTY, |acc, y| acc.union(self.get(x, y)))
    }

    /// `(x y) z`
    #[inline]
    pub fn left_assoc(&self, x: usize, y: usize, z: usize) -> CellSet {
        self.product_right(self.get(x, y), z)
    }

    /// `x (y z)`
    #[inline]
    pub fn right_assoc(&self, x: usize, y: usize, z: usize) -> CellSet {
        self.product_left(x, self.get(y, z))
    }

    /// Union of row `x`: `x . E`.
    pub fn row_union(&self, x: usize) -> CellSet {
        (0..self.order()).fold(CellSet::EMPTY, |acc, y| acc.union(self.get(x, y)))
    }

    /// Union of column `y`: `E . y`.
    pub fn col_union(&self, y: usize) -> CellSet {
        (0..self.order()).fold(CellSet::EMPTY, |acc, x| acc.union(self.get(x, y)))
    }

    /// Right division `x / y = { z : x in z y }`.
    pub fn right_division(&self, x: usize, y: usize) -> CellSet {
        (0..self.order())
            .filter(|&z| self.get(z, y).contains(x))
            .collect()
    }

    /// Left division `y \ x = { z : x in y z }`.
    pub fn left_division(&self, y: usize, x: usize) -> CellSet {
        (0..self.order())
            .filter(|&z| self.get(y, z).contains(x))
            .collect()
    }

    /// The relabelled table `R` with `R[s(a)][s(b)] = s(T[a][b])`.
    pub fn permute(&self, sigma: &[usize]) -> HyperTable {
        let n = self.order();
        debug_assert_eq!(sigma.len(), n);
        let mut out = *self;
        for a in 0..n {
            for b in 0..n {
                out.set(sigma[a], sigma[b], self.get(a, b).permute(sigma));
            }
        }
        out
    }

    /// Row-major lexicographic comparison of cells (orders compared first).
    pub fn cmp_cells(&self, other: &HyperTable) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.cells().cmp(other.cells()))
    }

    pub fn to_rows(&self) -> Vec<Vec<Vec<usize>>> {
        self.rows()
            .map(|r| r.iter().map(|c| c.iter().collect()).collect())
            .collect()
    }
}

impl Ord for HyperTable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_cells(other).then(self.kind.cmp(&other.kind))
    }
}

impl PartialOrd for HyperTable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for HyperTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HyperTable[{} {}]", self.order, self.kind.as_str())?;
        for row in self.rows() {
            f.write_str(" |")?;
            for c in row {
                write!(f, " {c}")?;
            }
        }
        Ok(())
    }
}
