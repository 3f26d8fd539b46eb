//! Exact Q(i) computations for the rank-2 operator algebra on the 64-dim
//! exterior algebra.

pub mod canon_ops;
pub mod cartan;
pub mod exterior;
pub mod golden;
pub mod lie;
pub mod linalg;
pub mod operator;
pub mod registry;
pub mod render;
pub mod report;
pub mod reptheory;
pub mod scalars;
pub mod verify;

pub use exterior::{BasisMask, Generator, MDeg, Multivector};
pub use linalg::DenseMatrix;
pub use operator::Operator;
pub use report::{Check, VerificationReport};
pub use scalars::{GaussianRational, Q};
