//! Doctest harness for the guide in `book/`.
//!
//! mdBook cannot run its code blocks against this crate, so every chapter is
//! also included here as a module doc. `cargo test --doc` then compiles and
//! runs each snippet, which keeps the book and the library in lockstep. The
//! whole module only exists under `cfg(doctest)`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/arithmetic.md")]
pub mod arithmetic {}

#[doc = include_str!("../../../book/src/arcs.md")]
pub mod arcs {}

#[doc = include_str!("../../../book/src/fourier.md")]
pub mod fourier {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/dimension.md")]
pub mod dimension {}

#[doc = include_str!("../../../book/src/criteria.md")]
pub mod criteria {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
