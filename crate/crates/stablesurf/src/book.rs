//! The guide's chapters, compiled as doc-tests.
//!
//! The narrative guide lives in `book/` at the repository root as an
//! mdbook project. mdbook itself does not run snippets against the crate,
//! so each chapter is also included here as module documentation; that way
//! `cargo test --doc` builds and runs every code block in the book and the
//! text can never drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/dual-graphs.md")]
pub mod dual_graphs {}

#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}

#[doc = include_str!("../../../book/src/discrepancies.md")]
pub mod discrepancies {}

#[doc = include_str!("../../../book/src/fundamental-cycles.md")]
pub mod fundamental_cycles {}

#[doc = include_str!("../../../book/src/lattices.md")]
pub mod lattices {}

#[doc = include_str!("../../../book/src/volumes.md")]
pub mod volumes {}

#[doc = include_str!("../../../book/src/bound-formulas.md")]
pub mod bound_formulas {}

#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/file-formats.md")]
pub mod file_formats {}
