//! Finite-model laboratory for hypercompositional algebra.

pub mod axioms;
pub mod bundled;
pub mod classify;
pub mod dorroh;
pub mod enumerate;
pub mod model;
pub mod search;
pub mod theorems;

pub use model::{CellSet, HyperTable, HypermoduleModel, Kind, Model, ModelError, TwoOpModel};
