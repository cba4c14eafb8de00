//! Exact cohomological model of the six-manifolds `M(A) = S¹ × N`, where `N` is
//! the mapping torus of the Kummer-surface automorphism induced by a matrix
//! `A ∈ SL(2, Z[i])`.
//!
//! The crate is layered bottom-up:
//!
//! - [`gaussian`], [`poly`], [`matrix`], [`sturm`], [`cyclotomic`]: exact
//!   integer/rational arithmetic, polynomials, linear algebra and certified
//!   real-root isolation.
//! - [`kummer`]: the action of `A` on `H²(K; Q)` of the Kummer surface (16
//!   exceptional divisor classes plus the 6 classes coming from the torus),
//!   together with the intersection form.
//! - [`topology`]: Wang-sequence Betti numbers, the cup-product ring of
//!   `M(A)`, hard Lefschetz and the 2-formality witness.
//! - [`certify`]: nonkählerness certificates, spectral-radius comparison and
//!   the rank-one jump-loci description.
//!
//! Everything is exact. Floating point never takes part in a decision.

pub mod certify;
pub mod cyclotomic;
pub mod error;
pub mod gaussian;
pub mod kummer;
pub mod matrix;
pub mod poly;
pub mod sturm;
pub mod topology;

pub use error::{Error, Result};
pub use gaussian::GaussianInt;
pub use kummer::GaussianMatrix2;
pub use matrix::RationalMatrix;
pub use poly::IntPolynomial;
pub use sturm::IsolatingInterval;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
