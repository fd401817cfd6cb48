//! Support classification for P-recursive sequences: either certified finite
//! (single-term recurrences, where the coefficient's integer roots bound the
//! support) or certified syndetic (multi-term recurrences with an observed
//! nonzero past the root bound), plus gap analytics on raw prefixes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::positive_divisors;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::precursive::{unroll_uni, UniPRecurrence};
use crate::scalar::ExactScalar;

/// Outcome of support classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportClass {
    /// Support is contained in [0, bound] — a theorem, not an observation.
    FiniteCertified { bound: usize },
    /// Every nonzero index n >= from has another nonzero index in (n, n+constant].
    SyndeticCertified { from: usize, constant: usize },
    /// No nonzero term past the certified bound within the explored horizon;
    /// finiteness is NOT certified (a later nonzero would flip the sequence
    /// to syndetic).
    EmpiricalFinite { horizon: usize },
}

/// Least M >= 0 with p(n) != 0 for every integer n > M: the largest positive
/// integer root, or 0 when there is none.
///
/// Strips n-power factors, clears denominators, then tests every positive
/// divisor of the constant term — the only possible positive integer roots
/// of an integer polynomial.
pub fn integer_root_bound(p: &MultiPoly) -> Result<usize> {
    if p.vars() != 1 {
        return Err(Error::VarMismatch(1, p.vars()));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let stripped = p
        .div_monomial(&crate::poly::Monomial(vec![p.valuation1()]))
        .expect("valuation divides");
    // clear denominators to get integer coefficients
    let mut denom_lcm = BigInt::one();
    for (_, c) in stripped.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let constant = (stripped.constant_term() * ExactScalar::from_integer(denom_lcm))
        .to_integer();
    debug_assert!(!constant.is_zero(), "nonzero after stripping n-powers");
    let mut best = 0usize;
    for d in positive_divisors(&constant) {
        if stripped.eval1(&ExactScalar::from_integer(d.clone())).is_zero() {
            let r = d.to_usize().ok_or_else(|| {
                Error::Parse("integer root exceeds the addressable range".into())
            })?;
            best = best.max(r);
        }
    }
    Ok(best)
}

/// Classify the support of the sequence defined by `rec` and `init`.
///
/// Single-term recurrences P(n) g(n) = 0 force g(n) = 0 wherever the
/// relation applies and P(n) != 0, so the support is provably inside
/// [0, max(root bound, validity start - 1)]. Multi-term recurrences cannot
/// be certified finite by bounded computation; instead, any nonzero value
/// found past the bound M certifies syndeticity with constant equal to the
/// maximal shift: were g(n+1..n+a_m) all zero at some n > M with g(n) != 0,
/// the relation at n would force P_1(n) g(n) = 0 with P_1(n) != 0.
pub fn support_classify(
    rec: &UniPRecurrence,
    init: &[ExactScalar],
    horizon: usize,
) -> Result<SupportClass> {
    let base = rec.valid_from().saturating_sub(1);
    if rec.terms().len() == 1 {
        let m = integer_root_bound(&rec.terms()[0].1)?;
        return Ok(SupportClass::FiniteCertified {
            bound: m.max(base),
        });
    }
    let mut product = MultiPoly::one(1);
    for (_, p) in rec.terms() {
        product = product.mul(p);
    }
    let m = integer_root_bound(&product)?.max(base);
    let a_m = rec.max_shift();
    if horizon <= m + a_m {
        return Err(Error::TooShort {
            needed: m + a_m + 1,
            got: horizon,
        });
    }
    let values = unroll_uni(rec, init, horizon + 1)?;
    for (n, v) in values.iter().enumerate().skip(m + 1) {
        if !v.is_zero() {
            return Ok(SupportClass::SyndeticCertified {
                from: n,
                constant: a_m,
            });
        }
    }
    Ok(SupportClass::EmpiricalFinite { horizon })
}

/// Largest gap between consecutive nonzero positions (0 when fewer than two
/// nonzero entries).
pub fn max_gap(prefix: &[ExactScalar]) -> usize {
    let mut last: Option<usize> = None;
    let mut best = 0;
    for (n, v) in prefix.iter().enumerate() {
        if !v.is_zero() {
            if let Some(p) = last {
                best = best.max(n - p);
            }
            last = Some(n);
        }
    }
    best
}

/// Does every nonzero position n with the full window (n, n+C] inside the
/// prefix have another nonzero position in that window? Positions whose
/// window sticks out past the end are not judged.
pub fn syndetic_witness(prefix: &[ExactScalar], c: usize) -> bool {
    let len = prefix.len();
    for n in 0..len.saturating_sub(c) {
        if prefix[n].is_zero() {
            continue;
        }
        if !(n + 1..=n + c).any(|j| !prefix[j].is_zero()) {
            return false;
        }
    }
    true
}
