//! Finite carriers, hyperoperation tables and the model file formats.

mod cellset;
pub mod format;
pub mod json;
pub mod perm;
mod table;

use std::cmp::Ordering;

pub use cellset::{CellSet, Members};
pub use perm::{
    apply_permutation, canonical_form, canonical_form_with, canonical_two_op,
    canonical_two_op_with, inverse, is_permutation, lex_key, permutations_fixing,
    permutations_mapping,
};
pub use table::{HyperTable, Kind};

/// Hard cap on carrier size; every cell fits one `u16`.
pub const MAX_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("order {0} outside 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("element {element} out of range for order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("cell ({row},{col}) of a composition is not a singleton")]
    NotSingleton { row: usize, col: usize },
    #[error("operation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("one must differ from zero")]
    OneEqualsZero,
    #[error("{0}")]
    Shape(String),
}

/// Carrier with an additive and a multiplicative table, a distinguished
/// zero and optionally a one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoOpModel {
    add: HyperTable,
    mul: HyperTable,
    zero: usize,
    one: Option<usize>,
}

impl TwoOpModel {
    pub fn new(
        add: HyperTable,
        mul: HyperTable,
        zero: usize,
        one: Option<usize>,
    ) -> Result<Self, ModelError> {
        let n = add.order();
        if mul.order() != n {
            return Err(ModelError::OrderMismatch(n, mul.order()));
        }
        if zero >= n {
            return Err(ModelError::ElementOutOfRange {
                element: zero,
                order: n,
            });
        }
        if let Some(one) = one {
            if one >= n {
                return Err(ModelError::ElementOutOfRange {
                    element: one,
                    order: n,
                });
            }
            if one == zero && n > 1 {
                return Err(ModelError::OneEqualsZero);
            }
        }
        Ok(TwoOpModel {
            add,
            mul,
            zero,
            one,
        })
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn add(&self) -> &HyperTable {
        &self.add
    }

    pub fn mul(&self) -> &HyperTable {
        &self.mul
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn with_one(self, one: Option<usize>) -> Result<Self, ModelError> {
        Self::new(self.add, self.mul, self.zero, one)
    }

    pub fn permute(&self, sigma: &[usize]) -> TwoOpModel {
        TwoOpModel {
            add: self.add.permute(sigma),
            mul: self.mul.permute(sigma),
            zero: sigma[self.zero],
            one: self.one.map(|o| sigma[o]),
        }
    }

    /// Row-major comparison of the additive table, then the multiplicative
    /// one, then the constants.
    pub fn cmp_cells(&self, other: &TwoOpModel) -> Ordering {
        self.add
            .cmp_cells(&other.add)
            .then_with(|| self.mul.cmp_cells(&other.mul))
            .then_with(|| self.zero.cmp(&other.zero))
            .then_with(|| self.one.cmp(&other.one))
    }
}

impl Ord for TwoOpModel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_cells(other)
            .then_with(|| self.add.kind().cmp(&other.add.kind()))
            .then_with(|| self.mul.kind().cmp(&other.mul.kind()))
    }
}

impl PartialOrd for TwoOpModel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A scalar hyperring acting on an additive structure by a single-valued
/// external composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypermoduleModel {
    scalars: TwoOpModel,
    madd: HyperTable,
    zero_m: usize,
    action: Vec<usize>,
}

impl HypermoduleModel {
    /// `action` is row-major: `action[a * m + x]` is `a x`.
    pub fn new(
        scalars: TwoOpModel,
        madd: HyperTable,
        zero_m: usize,
        action: Vec<usize>,
    ) -> Result<Self, ModelError> {
        let (p, m) = (scalars.order(), madd.order());
        if zero_m >= m {
            return Err(ModelError::ElementOutOfRange {
                element: zero_m,
                order: m,
            });
        }
        if action.len() != p * m {
            return Err(ModelError::Shape(format!(
                "action has {} entries, expected {p}x{m}",
                action.len()
            )));
        }
        if let Some(&bad) = action.iter().find(|&&x| x >= m) {
            return Err(ModelError::ElementOutOfRange {
                element: bad,
                order: m,
            });
        }
        Ok(HypermoduleModel {
            scalars,
            madd,
            zero_m,
            action,
        })
    }

    pub fn scalars(&self) -> &TwoOpModel {
        &self.scalars
    }

    pub fn madd(&self) -> &HyperTable {
        &self.madd
    }

    pub fn zero_m(&self) -> usize {
        self.zero_m
    }

    pub fn action(&self) -> &[usize] {
        &self.action
    }

    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.action[a * self.madd.order() + x]
    }

    /// `A x` for a set of scalars.
    pub fn act_set_left(&self, a: CellSet, x: usize) -> CellSet {
        a.iter().map(|s| self.act(s, x)).collect()
    }

    /// `a X` for a set of module elements.
    pub fn act_set_right(&self, a: usize, x: CellSet) -> CellSet {
        x.iter().map(|v| self.act(a, v)).collect()
    }
}

/// A parsed model file, keeping the operation names it was written with.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Model {
    Table {
        name: String,
        table: HyperTable,
    },
    TwoOp {
        names: [String; 2],
        model: TwoOpModel,
    },
    Hypermodule {
        names: [String; 3],
        model: HypermoduleModel,
    },
}

impl Model {
    pub fn table(name: impl Into<String>, table: HyperTable) -> Self {
        Model::Table {
            name: name.into(),
            table,
        }
    }

    pub fn two_op(model: TwoOpModel) -> Self {
        Model::TwoOp {
            names: ["add".into(), "mul".into()],
            model,
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Model::Table { table, .. } => table.order(),
            Model::TwoOp { model, .. } => model.order(),
            Model::Hypermodule { model, .. } => model.scalars().order(),
        }
    }

    /// Named operations in file order.
    pub fn ops(&self) -> Vec<(&str, &HyperTable)> {
        match self {
            Model::Table { name, table } => vec![(name.as_str(), table)],
            Model::TwoOp { names, model } => {
                vec![
                    (names[0].as_str(), model.add()),
                    (names[1].as_str(), model.mul()),
                ]
            }
            Model::Hypermodule { names, model } => vec![
                (names[0].as_str(), model.scalars().add()),
                (names[1].as_str(), model.scalars().mul()),
                (names[2].as_str(), model.madd()),
            ],
        }
    }

    pub fn op(&self, name: &str) -> Option<&HyperTable> {
        self.ops()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t)
    }

    pub fn to_text(&self) -> String {
        format::serialize(self)
    }
}
