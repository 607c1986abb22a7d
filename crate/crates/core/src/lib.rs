//! Exact computer algebra for the Hopf algebras of decorated rooted trees and words.
//!
//! Trees, forests and words are canonical values; linear combinations carry
//! arbitrary-precision rational coefficients. Start with [`text`] to parse inputs,
//! then [`prelie`], [`bck`], [`substitution`], [`qshuffle`], [`arbo`], [`hk`] and
//! [`bseries`] for the algebraic operations. [`verify`] runs the identity sweeps
//! behind the `verify` subcommand of the command-line tool in [`cli`].

pub mod arbo;
pub mod bck;
pub mod bseries;
pub mod cli;
pub mod error;
pub mod hk;
pub mod linear;
pub mod poly;
pub mod prelie;
pub mod qshuffle;
pub mod semigroup;
pub mod substitution;
pub mod text;
pub mod tree;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use linear::{LinComb, Tensor, Q};
pub use semigroup::{Letter, Semigroup, SemigroupElement};
pub use tree::{Forest, Tree};
pub use word::Word;
