//! Semilinear subsets of N^d: a finite set plus a union of linear sets
//! b + v_1*N + ... + v_r*N. Membership, exact enumeration with
//! multiplicities, freeness on a box, and rational generating functions.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::prefix::{BoxIter, DensePrefix};
use crate::ratfunc::{series_expand, RationalGF};
use crate::scalar::{int, ExactScalar};

/// Default per-axis verification box: generous in low dimension, smaller in
/// d = 3 where boxes grow cubically.
pub fn default_verify_box(d: usize) -> Vec<usize> {
    let side = match d {
        0 | 1 | 2 => 32,
        3 => 16,
        _ => 8,
    };
    vec![side; d]
}

/// b + v_1*N + ... + v_r*N with nonzero, pairwise distinct periods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSet {
    base: Vec<usize>,
    periods: Vec<Vec<usize>>,
}

impl LinearSet {
    pub fn new(base: Vec<usize>, periods: Vec<Vec<usize>>) -> Result<Self> {
        let d = base.len();
        let mut seen = BTreeSet::new();
        for v in &periods {
            if v.len() != d {
                return Err(Error::DimMismatch);
            }
            if v.iter().all(|&c| c == 0) {
                return Err(Error::ZeroPeriod);
            }
            seen.insert(v.clone());
        }
        Ok(LinearSet {
            base,
            periods: seen.into_iter().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn periods(&self) -> &[Vec<usize>] {
        &self.periods
    }

    /// Is p = base + sum c_v * v for some naturals c_v? Bounded DFS: every
    /// period step strictly decreases some remainder coordinate, so the
    /// search space is finite.
    pub fn contains(&self, p: &[usize]) -> bool {
        if p.len() != self.dim() {
            return false;
        }
        let mut rem = Vec::with_capacity(p.len());
        for (&pi, &bi) in p.iter().zip(&self.base) {
            if pi < bi {
                return false;
            }
            rem.push(pi - bi);
        }
        fn dfs(rem: &[usize], periods: &[Vec<usize>]) -> bool {
            if rem.iter().all(|&c| c == 0) {
                return true;
            }
            let Some((v, rest)) = periods.split_first() else {
                return false;
            };
            // c bounded by the tightest coordinate where v moves
            let cap = rem
                .iter()
                .zip(v)
                .filter(|(_, &vi)| vi > 0)
                .map(|(&ri, &vi)| ri / vi)
                .min()
                .unwrap_or(0);
            let mut step = rem.to_vec();
            for c in 0..=cap {
                if c > 0 {
                    let mut ok = true;
                    for (s, &vi) in step.iter_mut().zip(v) {
                        if *s < vi {
                            ok = false;
                            break;
                        }
                        *s -= vi;
                    }
                    if !ok {
                        break;
                    }
                }
                if dfs(&step, rest) {
                    return true;
                }
            }
            false
        }
        dfs(&rem, &self.periods)
    }

    /// Number of representations of each box index as base + sum c_v * v —
    /// the coefficient table of x^b / prod_v (1 - x^v). Unbounded-knapsack
    /// sweep, one period at a time, so each multiset of periods is counted
    /// once.
    pub fn count_prefix(&self, dims: &[usize]) -> DensePrefix {
        let mut out = DensePrefix::zeros(dims);
        if self.base.iter().zip(dims).all(|(&b, &d)| b < d) {
            out.set(&self.base, ExactScalar::one());
        } else {
            return out;
        }
        for v in &self.periods {
            for idx in BoxIter::new(dims) {
                if idx.iter().zip(v).all(|(&n, &vi)| n >= vi) {
                    let src: Vec<usize> = idx.iter().zip(v).map(|(&n, &vi)| n - vi).collect();
                    let add = out.get(&src).clone();
                    if !add.is_zero() {
                        let cur = out.get(&idx).clone();
                        out.set(&idx, cur + add);
                    }
                }
            }
        }
        out
    }

    /// Does every member inside the box have exactly one representation?
    pub fn is_free(&self, dims: &[usize]) -> bool {
        let one = ExactScalar::one();
        self.count_prefix(dims).data().iter().all(|c| c <= &one)
    }

    fn base_monomial(&self) -> Monomial {
        Monomial(self.base.iter().map(|&b| b as u32).collect())
    }
}

/// Finite set union a list of linear sets.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SemilinearSet {
    finite: BTreeSet<Vec<usize>>,
    parts: Vec<LinearSet>,
}

impl SemilinearSet {
    pub fn new(
        finite: impl IntoIterator<Item = Vec<usize>>,
        parts: Vec<LinearSet>,
    ) -> Result<Self> {
        let finite: BTreeSet<Vec<usize>> = finite.into_iter().collect();
        let dims: BTreeSet<usize> = finite
            .iter()
            .map(|p| p.len())
            .chain(parts.iter().map(|l| l.dim()))
            .collect();
        if dims.len() > 1 {
            return Err(Error::DimMismatch);
        }
        Ok(SemilinearSet { finite, parts })
    }

    pub fn empty() -> Self {
        SemilinearSet::default()
    }

    pub fn finite(&self) -> &BTreeSet<Vec<usize>> {
        &self.finite
    }

    pub fn parts(&self) -> &[LinearSet] {
        &self.parts
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.finite.contains(p) || self.parts.iter().any(|l| l.contains(p))
    }
}

/// 0/1 membership table on a box. Computed from the representation counts,
/// independently of `contains`, so the two can cross-check each other.
pub fn indicator_prefix(s: &SemilinearSet, dims: &[usize]) -> DensePrefix {
    let m = multiplicity_prefix(s, dims);
    let mut out = DensePrefix::zeros(dims);
    for idx in out.indices() {
        if !m.get(&idx).is_zero() {
            out.set(&idx, ExactScalar::one());
        }
    }
    out
}

/// Total representation count per index: finite-part membership counts one,
/// each linear-set representation counts one. This is exactly the
/// coefficient table of the generating function built by `gf_semilinear`.
pub fn multiplicity_prefix(s: &SemilinearSet, dims: &[usize]) -> DensePrefix {
    let mut out = DensePrefix::zeros(dims);
    for p in s.finite() {
        if p.len() == dims.len() && p.iter().zip(dims).all(|(&n, &d)| n < d) {
            let cur = out.get(p).clone();
            out.set(p, cur + ExactScalar::one());
        }
    }
    for l in s.parts() {
        let counts = l.count_prefix(dims);
        for idx in out.indices() {
            let add = counts.get(&idx).clone();
            if !add.is_zero() {
                let cur = out.get(&idx).clone();
                out.set(&idx, cur + add);
            }
        }
    }
    out
}

/// x^b / prod_v (1 - x^v), after certifying freeness on an explicit box.
pub fn gf_linear_on(l: &LinearSet, verify_dims: &[usize]) -> Result<RationalGF> {
    if !l.is_free(verify_dims) {
        return Err(Error::NotFree);
    }
    let d = l.dim();
    let num = MultiPoly::monomial(l.base_monomial(), ExactScalar::one());
    let mut den = MultiPoly::one(d);
    for v in l.periods() {
        let mut factor = MultiPoly::one(d);
        factor.add_term(
            Monomial(v.iter().map(|&c| c as u32).collect()),
            int(-1),
        );
        den = den.mul(&factor);
    }
    RationalGF::new(num, den)
}

/// `gf_linear_on` with the default verification box for the dimension.
pub fn gf_linear(l: &LinearSet) -> Result<RationalGF> {
    gf_linear_on(l, &default_verify_box(l.dim()))
}

/// Sum of part GFs plus the finite-part polynomial. The boolean is true iff
/// the series is 0/1-valued on the box (no double counting there).
pub fn gf_semilinear(s: &SemilinearSet, dims: &[usize]) -> Result<(RationalGF, bool)> {
    let d = dims.len();
    let mut finite_poly = MultiPoly::zero(d);
    for p in s.finite() {
        if p.len() != d {
            return Err(Error::DimMismatch);
        }
        finite_poly.add_term(
            Monomial(p.iter().map(|&c| c as u32).collect()),
            ExactScalar::one(),
        );
    }
    let mut gf = RationalGF::from_poly(finite_poly);
    for l in s.parts() {
        if l.dim() != d {
            return Err(Error::DimMismatch);
        }
        gf = gf.add(&gf_linear_on(l, dims)?);
    }
    let expanded = series_expand(&gf, dims)?;
    let zero = ExactScalar::zero();
    let one = ExactScalar::one();
    let unambiguous = expanded
        .data()
        .iter()
        .all(|c| c == &zero || c == &one);
    Ok((gf, unambiguous))
}
