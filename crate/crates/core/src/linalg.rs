//! Incremental exact Gaussian elimination over the rationals.
//!
//! Rows are fed one at a time and kept fully reduced (RREF), with pivots in
//! increasing column order — deterministic regardless of feed order history
//! only through the actual sequence of rows, which callers keep canonical.

use num_traits::{One, Zero};

use crate::scalar::ExactScalar;

/// Growing RREF basis of the row space of the rows fed so far.
pub struct Eliminator {
    cols: usize,
    /// (pivot column, row) sorted by pivot column; each row has a 1 in its
    /// pivot column and zeros in every other pivot column.
    rows: Vec<(usize, Vec<ExactScalar>)>,
}

impl Eliminator {
    pub fn new(cols: usize) -> Self {
        Eliminator {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce a row against the basis; insert the remainder if nonzero.
    /// Returns true when the rank grew.
    pub fn add_row(&mut self, mut row: Vec<ExactScalar>) -> bool {
        assert_eq!(row.len(), self.cols);
        for (p, basis) in &self.rows {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (r, b) in row.iter_mut().zip(basis) {
                    *r -= &f * b;
                }
            }
        }
        let pivot = match row.iter().position(|c| !c.is_zero()) {
            Some(p) => p,
            None => return false,
        };
        // normalize pivot to 1
        let inv = row[pivot].clone();
        for c in row.iter_mut() {
            if !c.is_zero() {
                *c /= &inv;
            }
        }
        // back-substitute into existing rows to keep full reduction
        for (_, basis) in self.rows.iter_mut() {
            if !basis[pivot].is_zero() {
                let f = basis[pivot].clone();
                for (b, r) in basis.iter_mut().zip(&row) {
                    *b -= &f * r;
                }
            }
        }
        let at = self
            .rows
            .partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, row));
        true
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..self.cols).filter(|c| !pivots.contains(c)).collect()
    }

    /// Nullspace basis of the fed rows, one vector per free column in
    /// increasing column order (the standard RREF parameterization).
    pub fn nullspace_basis(&self) -> Vec<Vec<ExactScalar>> {
        self.free_columns()
            .into_iter()
            .map(|j| {
                let mut v = vec![ExactScalar::zero(); self.cols];
                v[j] = ExactScalar::one();
                for (p, row) in &self.rows {
                    v[*p] = -row[j].clone();
                }
                v
            })
            .collect()
    }
}
