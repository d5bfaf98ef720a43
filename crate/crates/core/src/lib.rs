//! Exact computation of the Néron–Severi and holomorphic topological Brauer
//! groups of a complex torus from its period matrix, together with the
//! Appell–Humbert cocycles of line bundles and gerbes and a machine-checked
//! verification suite for their defining identities.
//!
//! All arithmetic is exact: rationals, a user-declared finite-dimensional
//! commutative Q-algebra for period entries like √2, and its
//! complexification. Cocycles are handled at exponent level — the values
//! exp(2πi·x) are never materialized, and cocycle equalities are integrality
//! statements about exponents.

pub mod algebra;
pub mod cocycles;
pub mod forms;
pub mod linalg;
pub mod ranks;
pub mod rational;
pub mod report;
pub mod sample;
pub mod specfile;
pub mod torus;
pub mod verify;

pub use algebra::{AlgebraElement, AlgebraSpec, ComplexElement};
pub use rational::Rational;
pub use torus::{LatticeVector, RealVector, Torus};
