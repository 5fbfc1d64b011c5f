//! Constructive machinery for degree sequences: graphicality and the
//! k-factor criterion, the equitable-colorability bound, realization
//! builders that carry factors, colorings, and edge-connectivity guarantees,
//! and a brute-force oracle that referees all of it at small scale.
//!
//! The crate is `no_std` + `alloc`; all collections are ordered so results
//! are deterministic for fixed inputs and seeds.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod coloring;
pub mod connect;
pub mod construct;
pub mod exchange;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod seq;
pub mod sweeps;

pub use coloring::{check_coloring, equitable_exact, hs_coloring, Coloring, ColoringReport};

pub use graph::{CutWitness, Graph};
pub use oracle::OracleBudget;
pub use seq::{DegreeSequence, FactorSpec, SequenceProfile};
