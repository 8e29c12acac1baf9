//! Node repair for regenerating codes placed on the vertices of a graph.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`galois`]: exact GF(2^8) / GF(2^16) arithmetic and dense matrices.
//! * [`codes`]: product-matrix and diagonal-matrix MSR codes, the two-failure
//!   cooperative code and the two-neighbour array code.
//! * [`graph`]: graphs, BFS layers, helper selection and rooted repair trees.
//! * [`repair`]: accumulate-and-forward and intermediate-processing repair run
//!   as explicit message passing, producing per-edge [`repair::Transcript`]s.
//! * [`bounds`]: subset, layer, tree and multi-failure lower bounds, the
//!   accumulate-and-forward closed form and the exact-rational cut LP.
//! * [`ensembles`]: random-graph and Galton–Watson experiments.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod codes;
pub mod codeword;
pub mod ensembles;
mod error;
pub mod galois;
pub mod graph;
pub mod repair;
pub mod rng;

pub use codeword::Codeword;
pub use error::{Error, Result};
pub use galois::{FieldElement, Gf256, Gf65536, Matrix};
pub use graph::{Graph, VertexId};

/// Exact rational used for every bandwidth quantity.
pub type Rational = num_rational::BigRational;
