//! Exact algebra for Euler-symmetric varieties generated by one homogeneous
//! polynomial.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: rationals and fraction-free elimination (rank, nullspace,
//!   solve), plus a word-sized modular eliminator used by the large solves.
//! * [`poly`]: sparse multivariate polynomials over the rationals with the
//!   contraction calculus.
//! * [`symbol`]: graded subspaces of forms, catalecticants, prolongation and
//!   symbol-system verification.
//! * [`legendre`]: the multiplicative Legendre transform and the gradient
//!   identities around it.
//! * [`variety`]: the ambient space, the embedding, the vector-group and torus
//!   actions, fixed-point and curve limits, relations and the smoothness
//!   report.
//! * [`catalog`]: the classified polynomial families, products and their
//!   expected invariants.
//!
//! Everything is exact. Randomised procedures take an explicit seed and are
//! reproducible bit for bit.

pub mod catalog;
pub mod error;
pub mod legendre;
pub mod linalg;
pub mod poly;
pub mod rng;
pub mod symbol;
pub mod variety;

pub use catalog::{CatalogEntry, Family, HssLabel, ProductSpec};
pub use error::{Error, Result};
pub use legendre::{LegendreConfig, LegendreResult, LegendreStatus};
pub use linalg::{Matrix, Scalar};
pub use poly::{Monomial, Polynomial};
pub use symbol::{GeneratedSystem, GradedSubspace, SymbolSystem};
pub use variety::{AmbientPoint, AmbientSpace};
