//! Exact-rational calculator for normal surface singularities and volumes
//! of stable surfaces.
//!
//! The crate works entirely over arbitrary-precision rationals. It
//! classifies log canonical surface singularities from dual graphs of
//! exceptional curves, computes numerical fundamental cycles and
//! discrepancies, evaluates volumes of contracted curve configurations on
//! intersection lattices, and verifies the families of closed-form volume
//! bounds this calculator was built around.
//!
//! A narrative guide lives under `book/`; its code snippets are compiled
//! and run as doc-tests (see [`book`]).

pub mod rat;

pub mod linalg;

pub mod graph;

pub mod classify;

pub mod corpus;

pub mod cycles;

pub mod discrepancy;

pub mod lattice;

pub mod volume;

pub mod formulas;

pub mod catalog;

pub mod verify;

pub mod cli;

pub mod book;

pub use rat::Rat;
