//! Exact heights over positive definite quaternion algebras D = (a, b / Q)
//! and certified small zeros of isotropic hermitian forms on right
//! D-subspaces.

pub mod bounds;
pub mod error;
pub mod heights;
pub mod linalg;
pub mod orders;
pub mod quaternion;
pub mod sampling;
pub mod solver;
pub mod trace_form;

pub use error::{Error, Result};
