//! Exact structure-constant computations for n-ary Hom-Lie and Hom-pre-Lie
//! superalgebras, their representations, Rota-Baxter and O-operators, and
//! induction from lower arity.
//!
//! Everything is over the rationals. Checkers never stop at the first
//! failure: they return a [`ResidualReport`] listing every basis tuple where
//! an identity fails together with the exact residual.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod graded;
pub mod induction;
pub mod io;
pub mod linear;
pub mod multilinear;
pub mod operators;
pub mod report;
pub mod representations;
pub mod search;

pub use algebra::{HomPreLieSuper, LoopMode, NHomLieSuper, NHomPreLieSuper, Twisted};
pub use error::{Error, Result};
pub use graded::{GradedSpace, Parity, Scalar};
pub use linear::{LinearMap, Sparse, Vector};
pub use multilinear::MultiLinearMap;
pub use report::{ResidualReport, Violation};
