//! Exact algebra for finite set-theoretic solutions of the Yang-Baxter
//! equation: the rewriting normal form of the algebra `B(X,σ)`, its
//! differential and comultiplication, Yang-Baxter (co)homology with trivial
//! and twisted coefficients, cup products, quantum symmetrizers and the
//! comparison map to the bar resolution.

pub mod bialgebra;
pub mod braidshuffle;
pub mod complex;
pub mod cup;
pub mod error;
pub mod exactlin;
pub mod io;
pub mod lincomb;
pub mod report;
pub mod rewrite;
pub mod scalar;
pub mod solution;

pub use bialgebra::{Bialgebra, Element, Tensor2};
pub use error::*;
pub use lincomb::Combination;
pub use report::{Check, Report};
pub use rewrite::{Letter, LetterKind, NormalMonomial, Word};
pub use scalar::{Ring, Scalar};
pub use solution::{Classification, Solution};
