//! Exact combinatorial toolkit for critical sets in Latin squares.
//!
//! A critical set is a partial Latin square with a unique completion such
//! that no proper subset keeps that property. This crate provides the data
//! model, a completion solver, Latin interchange (trade) machinery,
//! criticality analysis with the associated structural checks and counting
//! identity, bound formulas with the known-values table, exhaustive and
//! greedy searches for extremal critical sets, and an embedded corpus of
//! reference examples.

pub mod bounds;
pub mod corpus;
pub mod criticality;
mod error;
pub mod pls;
pub mod search;
pub mod solver;
pub mod trades;

pub use error::{Error, Result};
pub use pls::{LatinSquare, LineSets, PartialLatinSquare, RolePerm, SymbolSet, Triple, MAX_ORDER};
pub use solver::{
    complete_unique, count_completions, enumerate_completions, is_uniquely_completable, propagate,
    CompletionCount,
};
