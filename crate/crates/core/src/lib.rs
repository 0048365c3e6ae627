//! Symbolic quantum stochastic calculus for bosons and fermions on a time
//! lattice, with a Fock-space numerical check.

pub mod algebra;
pub mod error;
pub mod expr;
pub mod fockrep;
pub mod ito;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod statistics;
pub mod thermal;

pub use algebra::{Algebra, Generator, Kind, OperatorPoly};
pub use error::*;
pub use poly::{Poly, Symbol, Word};
pub use scalar::ScalarExpr;
pub use statistics::StatisticsFlag;
