//! Dense truncated blocks of multivariate power-series coefficients.
//!
//! A `DensePrefix` stores every coefficient f(n) for n in the box
//! `[0, dims_1) x ... x [0, dims_d)`, row-major with the last axis fastest.
//! Alongside the box it tracks a per-axis *valid region*: entries with
//! `n_i < valid_i` for all i are exact values of the represented series;
//! entries outside may be polluted by truncation (e.g. after multiplying by
//! a polynomial, the top shells mix in unknown coefficients).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::scalar::ExactScalar;

/// Row-major iterator over all indices of a box; lexicographic order, so
/// every componentwise-smaller index is visited before its successors.
pub struct BoxIter {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl BoxIter {
    pub fn new(dims: &[usize]) -> Self {
        let start = if dims.iter().any(|&d| d == 0) {
            None
        } else {
            Some(vec![0; dims.len()])
        };
        BoxIter {
            dims: dims.to_vec(),
            next: start,
        }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.clone()?;
        // odometer increment, last axis fastest
        let mut nxt = cur.clone();
        let mut axis = self.dims.len();
        loop {
            if axis == 0 {
                self.next = None;
                break;
            }
            axis -= 1;
            nxt[axis] += 1;
            if nxt[axis] < self.dims[axis] {
                self.next = Some(nxt);
                break;
            }
            nxt[axis] = 0;
        }
        Some(cur)
    }
}

/// Dense box of exact series coefficients with a tracked valid region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePrefix {
    dims: Vec<usize>,
    valid: Vec<usize>,
    data: Vec<ExactScalar>,
}

impl DensePrefix {
    /// All-zero prefix over the given box; the whole box is valid.
    pub fn zeros(dims: &[usize]) -> Self {
        let len = dims.iter().product();
        DensePrefix {
            dims: dims.to_vec(),
            valid: dims.to_vec(),
            data: vec![ExactScalar::zero(); len],
        }
    }

    /// Wrap row-major data; the whole box is taken as valid.
    pub fn from_data(dims: &[usize], data: Vec<ExactScalar>) -> Result<Self> {
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(Error::DimMismatch);
        }
        Ok(DensePrefix {
            dims: dims.to_vec(),
            valid: dims.to_vec(),
            data,
        })
    }

    /// Fill from a function of the index.
    pub fn from_fn<F>(dims: &[usize], mut f: F) -> Self
    where
        F: FnMut(&[usize]) -> ExactScalar,
    {
        let mut out = Self::zeros(dims);
        for idx in BoxIter::new(dims) {
            let v = f(&idx);
            out.set(&idx, v);
        }
        out
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn valid(&self) -> &[usize] {
        &self.valid
    }

    pub fn vars(&self) -> usize {
        self.dims.len()
    }

    pub fn data(&self) -> &[ExactScalar] {
        &self.data
    }

    /// Shrink (never grow) the valid region.
    pub fn restrict_valid(&mut self, valid: &[usize]) {
        assert_eq!(valid.len(), self.dims.len());
        for (v, &nv) in self.valid.iter_mut().zip(valid) {
            *v = (*v).min(nv);
        }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut o = 0;
        for (i, (&n, &d)) in idx.iter().zip(&self.dims).enumerate() {
            debug_assert!(n < d, "index {n} out of bound {d} on axis {i}");
            let _ = i;
            o = o * d + n;
        }
        o
    }

    pub fn get(&self, idx: &[usize]) -> &ExactScalar {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: ExactScalar) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Is the index inside the box at all?
    pub fn in_box(&self, idx: &[usize]) -> bool {
        idx.len() == self.dims.len() && idx.iter().zip(&self.dims).all(|(&n, &d)| n < d)
    }

    /// Is the index inside the valid region?
    pub fn in_valid(&self, idx: &[usize]) -> bool {
        idx.len() == self.dims.len() && idx.iter().zip(&self.valid).all(|(&n, &v)| n < v)
    }

    /// Iterate over every index of the box (row-major).
    pub fn indices(&self) -> BoxIter {
        BoxIter::new(&self.dims)
    }

    /// Iterate over the valid region only (row-major).
    pub fn valid_indices(&self) -> BoxIter {
        BoxIter::new(&self.valid)
    }

    /// Do two prefixes agree on the intersection of their valid regions?
    pub fn agrees_on_valid(&self, other: &DensePrefix) -> bool {
        if self.dims.len() != other.dims.len() {
            return false;
        }
        let inter: Vec<usize> = self
            .valid
            .iter()
            .zip(&other.valid)
            .map(|(&a, &b)| a.min(b))
            .collect();
        BoxIter::new(&inter).all(|idx| self.get(&idx) == other.get(&idx))
    }

    /// Multiply the represented series by a polynomial, truncated to the same
    /// box. Output coefficient at n is the full convolution sum over the
    /// polynomial's support (only earlier series coefficients are needed, so
    /// each in-box output needing only in-box inputs is exact there). The
    /// valid region shrinks by the polynomial's degree on each axis: beyond
    /// that, coefficients of the product would draw on series terms outside
    /// the input's valid region.
    pub fn mul_poly(&self, q: &MultiPoly) -> Result<DensePrefix> {
        if q.vars() != self.dims.len() {
            return Err(Error::VarMismatch(self.dims.len(), q.vars()));
        }
        let mut out = DensePrefix::zeros(&self.dims);
        for idx in self.indices() {
            let mut acc = ExactScalar::zero();
            for (m, c) in q.terms() {
                // contribution c * f(idx - m) when the shift stays in the box
                let mut src = Vec::with_capacity(idx.len());
                let mut ok = true;
                for (&n, &e) in idx.iter().zip(&m.0) {
                    let e = e as usize;
                    if n < e {
                        ok = false;
                        break;
                    }
                    src.push(n - e);
                }
                if ok {
                    acc += c * self.get(&src);
                }
            }
            out.set(&idx, acc);
        }
        let valid: Vec<usize> = self
            .valid
            .iter()
            .enumerate()
            .map(|(i, &v)| v.saturating_sub(q.degree_on_axis(i) as usize))
            .collect();
        out.valid = valid;
        Ok(out)
    }
}
