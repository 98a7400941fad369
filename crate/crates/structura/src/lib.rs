//! Exact-arithmetic construction and verification of structurable
//! algebras: catalog builders, the structurable identity check, and
//! solvers for delta-derivation spaces, centroids, and generalized
//! delta-derivations.

pub mod algebra;
pub mod constructions;
pub mod linalg;
pub mod modular;
pub mod rat;
pub mod report;
pub mod solver;
pub mod structurable;
pub mod systems;

pub use algebra::{Algebra, AlgebraError, Element, LinearMap};
pub use rat::Rat;
