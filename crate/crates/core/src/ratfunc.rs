//! Rational generating functions P/Q and their power-series expansion.
//!
//! A `RationalGF` always has Q(0) != 0, so the series expansion around the
//! origin exists and is unique. No factorization or gcd reduction is ever
//! attempted; equality is decided by cross-multiplication.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{default_var_names, MultiPoly};
use crate::prefix::DensePrefix;

/// Ratio of two polynomials with nonzero denominator constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalGF {
    /// Build P/Q, enforcing Q != 0 and Q(0) != 0.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if num.vars() != den.vars() {
            return Err(Error::VarMismatch(num.vars(), den.vars()));
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if den.constant_term().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        Ok(RationalGF { num, den })
    }

    /// The polynomial p viewed as p/1.
    pub fn from_poly(p: MultiPoly) -> Self {
        let vars = p.vars();
        RationalGF {
            num: p,
            den: MultiPoly::one(vars),
        }
    }

    pub fn zero(vars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(vars))
    }

    pub fn one(vars: usize) -> Self {
        Self::from_poly(MultiPoly::one(vars))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> usize {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Sum over a common denominator. Q(0) != 0 is preserved automatically.
    pub fn add(&self, other: &RationalGF) -> RationalGF {
        RationalGF {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    pub fn mul(&self, other: &RationalGF) -> RationalGF {
        RationalGF {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RationalGF {
        RationalGF {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    /// Render as `num / (den)`; multi-term numerators are parenthesized too.
    pub fn to_text(&self) -> String {
        self.to_text_with(&default_var_names(self.vars()))
    }

    pub fn to_text_with(&self, names: &[String]) -> String {
        if self.den == MultiPoly::one(self.vars()) {
            return self.num.to_text_with(names);
        }
        let n = self.num.to_text_with(names);
        let d = self.den.to_text_with(names);
        let ns = if self.num.term_count() > 1 {
            format!("({n})")
        } else {
            n
        };
        format!("{ns} / ({d})")
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Equality as rational functions: a.num * b.den == b.num * a.den.
pub fn rf_equal(a: &RationalGF, b: &RationalGF) -> bool {
    if a.vars() != b.vars() {
        return false;
    }
    &a.num * &b.den == &b.num * &a.den
}

/// Expand P/Q as a power series on the given box.
///
/// With Q = sum q_m x^m, the series f satisfies
/// f(n) = (P_n - sum_{m != 0, m <= n} q_m f(n-m)) / q_0,
/// and row-major traversal visits every n-m before n, so one sweep fills the
/// box. Errors with `ZeroConstantTerm` when Q(0) = 0 (also reachable through
/// raw num/den pairs that bypass `RationalGF::new`).
pub fn series_expand(rf: &RationalGF, dims: &[usize]) -> Result<DensePrefix> {
    series_expand_raw(&rf.num, &rf.den, dims)
}

/// Expansion from a raw numerator/denominator pair (same contract).
pub fn series_expand_raw(num: &MultiPoly, den: &MultiPoly, dims: &[usize]) -> Result<DensePrefix> {
    if num.vars() != den.vars() {
        return Err(Error::VarMismatch(num.vars(), den.vars()));
    }
    if dims.len() != num.vars() {
        return Err(Error::DimMismatch);
    }
    let q0 = den.constant_term();
    if q0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let mut out = DensePrefix::zeros(dims);
    for idx in out.indices() {
        let mono = crate::poly::Monomial(idx.iter().map(|&n| n as u32).collect());
        let mut acc = num.coeff(&mono);
        for (m, c) in den.terms() {
            if m.is_constant() {
                continue;
            }
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
                acc -= c * out.get(&src);
            }
        }
        out.set(&idx, acc / &q0);
    }
    Ok(out)
}

/// Divide out the largest monomial x^c dividing both numerator and
/// denominator. This normalizes pipeline-produced fractions like
/// x*y / (x*y - x^2*y^2) back to a form with nonzero denominator constant
/// term when possible.
pub fn cancel_monomial_content(num: &MultiPoly, den: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let cn = num.content_monomial();
    let cd = den.content_monomial();
    let shared = crate::poly::Monomial(
        cn.0.iter()
            .zip(&cd.0)
            .map(|(&a, &b)| a.min(b))
            .collect(),
    );
    if shared.is_constant() {
        return (num.clone(), den.clone());
    }
    (
        num.div_monomial(&shared).expect("content divides"),
        den.div_monomial(&shared).expect("content divides"),
    )
}
