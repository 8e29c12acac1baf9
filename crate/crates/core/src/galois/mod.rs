//! Finite-field arithmetic over GF(2^m), m ∈ {8, 16}, and small dense linear algebra.

mod field;
mod matrix;

pub use field::{check_generator, FieldElement, FieldInfo, Gf256, Gf65536};
pub use matrix::Matrix;
