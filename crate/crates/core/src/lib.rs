//! Sampling theory on the Heisenberg group, numerically verified.
//!
//! The crate implements the computational side of regular sampling on the
//! 3-dimensional Heisenberg group: exact group and lattice arithmetic, the
//! Schrödinger representations acting on grid signals, Weyl-Heisenberg frame
//! and superframe diagnostics, Plancherel-side rank-one operator fields with
//! the multiplicity-density admissibility criterion, and the explicit
//! sinc-type reproducing kernel with its sampling expansion.
//!
//! See the `book/` directory for a guided tour; its code snippets are run as
//! doctests of this crate.

// Guards written as `!(x > 0.0)` reject NaN along with the out-of-range
// values; the lint's suggested `x <= 0.0` would let NaN through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod gabor;
pub mod grid;
pub mod heisenberg;
pub mod plancherel;
pub mod quadrature;
pub mod sampling;
pub mod schrodinger;
pub mod signals;
pub mod superframe;
pub mod verify;

pub use error::{Error, Result};

// The guide's code snippets run as doctests of this crate, which keeps the
// book and the library in sync; see book/src/.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/ch01-the-heisenberg-group.md")]
    pub struct Chapter01;
    #[doc = include_str!("../../../book/src/ch02-grid-signals-and-representations.md")]
    pub struct Chapter02;
    #[doc = include_str!("../../../book/src/ch03-weyl-heisenberg-frames.md")]
    pub struct Chapter03;
    #[doc = include_str!("../../../book/src/ch04-superframes.md")]
    pub struct Chapter04;
    #[doc = include_str!("../../../book/src/ch05-plancherel-fields.md")]
    pub struct Chapter05;
    #[doc = include_str!("../../../book/src/ch06-the-sinc-type-kernel.md")]
    pub struct Chapter06;
    #[doc = include_str!("../../../book/src/ch07-command-line.md")]
    pub struct Chapter07;
}
