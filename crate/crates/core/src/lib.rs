//! Exact machinery for power series with coefficients drawn from a finite
//! set: eventually-periodic sequence recovery with recurrence certificates,
//! rational reconstruction of multivariate series from dense coefficient
//! prefixes, P-recursive unrolling and support classification, semilinear
//! sets and their generating functions, and generating functions of integer
//! point sets cut out by linear systems and factored plane curves.
//!
//! All arithmetic is exact (`num_rational::BigRational`); every generating
//! function returned by a reconstruction routine has been re-expanded and
//! compared against its source data before it reaches the caller.

pub mod arith;
pub mod classify;
pub mod error;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod precursive;
pub mod prefix;
pub mod ratfunc;
pub mod rationality;
pub mod scalar;
pub mod semilinear;
pub mod varieties;

pub use error::{Error, Result};
pub use poly::{parse_poly, parse_poly_named, Monomial, MultiPoly};
pub use prefix::{BoxIter, DensePrefix};
pub use ratfunc::{rf_equal, series_expand, RationalGF};
pub use scalar::{format_scalar, parse_scalar, ExactScalar};
