use alloc::vec;
use alloc::vec::Vec;

use crate::galois::FieldElement;
use crate::{Error, Result};

/// An `l x n` array over the field, stored column by column: column `i` is
/// the content of storage node `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword<F> {
    symbols_per_node: usize,
    columns: Vec<Vec<F>>,
}

impl<F: FieldElement> Codeword<F> {
    pub fn zero(n: usize, symbols_per_node: usize) -> Self {
        Self {
            symbols_per_node,
            columns: vec![vec![F::ZERO; symbols_per_node]; n],
        }
    }

    pub fn from_columns(columns: Vec<Vec<F>>) -> Result<Self> {
        let l = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != l) {
            return Err(Error::DimensionMismatch("columns of unequal length".into()));
        }
        Ok(Self {
            symbols_per_node: l,
            columns,
        })
    }

    /// Number of nodes.
    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Symbols stored per node.
    pub fn l(&self) -> usize {
        self.symbols_per_node
    }

    pub fn column(&self, node: usize) -> &[F] {
        &self.columns[node]
    }

    pub fn column_mut(&mut self, node: usize) -> &mut [F] {
        &mut self.columns[node]
    }

    pub fn columns(&self) -> &[Vec<F>] {
        &self.columns
    }

    pub fn get(&self, node: usize, index: usize) -> F {
        self.columns[node][index]
    }

    pub fn set(&mut self, node: usize, index: usize, value: F) {
        self.columns[node][index] = value;
    }

    /// `a * self + b * other`, symbol by symbol.
    pub fn linear_combination(&self, a: F, other: &Self, b: F) -> Result<Self> {
        if self.n() != other.n() || self.l() != other.l() {
            return Err(Error::DimensionMismatch("codeword shapes differ".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(x, y)| x.iter().zip(y).map(|(&p, &q)| a * p + b * q).collect())
            .collect();
        Ok(Self {
            symbols_per_node: self.symbols_per_node,
            columns,
        })
    }
}
