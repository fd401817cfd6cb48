//! P-recursive machinery: univariate recurrences with polynomial
//! coefficients, multivariate constant-window recurrences whose coefficients
//! are polynomials in the last coordinate, and the translation from linear
//! ODEs with polynomial coefficients to coefficient recurrences.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::prefix::DensePrefix;
use crate::scalar::{int, ExactScalar};

/// sum_j P_j(n) * g(n + a_j) = 0 for all n >= valid_from.
///
/// Shifts are strictly increasing with a_1 = 0 (the constructor re-indexes
/// to enforce this); coefficients are univariate polynomials in n and the
/// leading coefficient is nonzero as a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPRecurrence {
    terms: Vec<(usize, MultiPoly)>,
    valid_from: usize,
}

impl UniPRecurrence {
    pub fn new(terms: Vec<(usize, MultiPoly)>, valid_from: usize) -> Result<Self> {
        let mut map: BTreeMap<usize, MultiPoly> = BTreeMap::new();
        for (a, p) in terms {
            if p.vars() != 1 {
                return Err(Error::VarMismatch(1, p.vars()));
            }
            let entry = map.remove(&a).map(|q| q.add(&p)).unwrap_or(p);
            if entry.is_zero() {
                map.remove(&a);
            } else {
                map.insert(a, entry);
            }
        }
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let low = *map.keys().next().unwrap();
        let mut terms: Vec<(usize, MultiPoly)> = if low == 0 {
            map.into_iter().collect()
        } else {
            // re-index so the lowest referenced shift is 0: substitute
            // n -> n - low and lower every shift by low
            map.into_iter()
                .map(|(a, p)| (a - low, p.shift_arg(-(low as i64))))
                .collect()
        };
        terms.sort_by_key(|(a, _)| *a);
        Ok(UniPRecurrence {
            terms,
            valid_from: valid_from + low,
        })
    }

    /// Constant-coefficient relation g(n + period) - g(n) = 0 from n >= start.
    pub fn periodic(period: usize, start: usize) -> Self {
        UniPRecurrence::new(
            vec![
                (0, MultiPoly::constant(1, int(-1))),
                (period, MultiPoly::one(1)),
            ],
            start,
        )
        .expect("nonzero by construction")
    }

    pub fn terms(&self) -> &[(usize, MultiPoly)] {
        &self.terms
    }

    pub fn valid_from(&self) -> usize {
        self.valid_from
    }

    /// Largest shift a_m (the order of the recurrence).
    pub fn max_shift(&self) -> usize {
        self.terms.last().map(|(a, _)| *a).unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> &MultiPoly {
        &self.terms.last().unwrap().1
    }

    /// Left-hand side sum_j P_j(n) * g(n + a_j) for a concrete window of
    /// values (g[t] = values(t)).
    pub fn lhs_at<F>(&self, n: usize, mut values: F) -> ExactScalar
    where
        F: FnMut(usize) -> ExactScalar,
    {
        let nn = int(n as i64);
        let mut acc = ExactScalar::zero();
        for (a, p) in &self.terms {
            acc += p.eval1(&nn) * values(n + a);
        }
        acc
    }
}

/// Extend initial values to `count` terms by solving the recurrence for its
/// leading term. Values below `init.len()` are taken from `init` verbatim.
pub fn unroll_uni(
    rec: &UniPRecurrence,
    init: &[ExactScalar],
    count: usize,
) -> Result<Vec<ExactScalar>> {
    let a_m = rec.max_shift();
    let mut out: Vec<ExactScalar> = Vec::with_capacity(count);
    out.extend(init.iter().take(count).cloned());
    for t in out.len()..count {
        // solve at relation index n with n + a_m = t
        if t < a_m + rec.valid_from {
            return Err(Error::TooShort {
                needed: a_m + rec.valid_from,
                got: init.len(),
            });
        }
        let n = t - a_m;
        let nn = int(n as i64);
        let lead = rec.leading_coeff().eval1(&nn);
        if lead.is_zero() {
            return Err(Error::LeadingZero { n, index: t });
        }
        let mut acc = ExactScalar::zero();
        for (a, p) in rec.terms() {
            if *a == a_m {
                continue;
            }
            acc += p.eval1(&nn) * &out[n + a];
        }
        out.push(-acc / lead);
    }
    Ok(out)
}

/// Constant-window multivariate recurrence
/// sum_a Q_a(n_k) * f(n - a) = 0, offsets a in {-N..N}^k, with coefficients
/// polynomial in the last coordinate n_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiCoeffRecurrence {
    vars: usize,
    window: usize,
    entries: BTreeMap<Vec<i64>, MultiPoly>,
}

impl MultiCoeffRecurrence {
    pub fn new(
        vars: usize,
        window: usize,
        entries: impl IntoIterator<Item = (Vec<i64>, MultiPoly)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, MultiPoly> = BTreeMap::new();
        for (a, q) in entries {
            if a.len() != vars {
                return Err(Error::DimMismatch);
            }
            if q.vars() != 1 {
                return Err(Error::VarMismatch(1, q.vars()));
            }
            if let Some(axis) = a.iter().position(|&c| c.unsigned_abs() as usize > window) {
                return Err(Error::IndexOutOfBox {
                    axis,
                    index: a[axis].unsigned_abs() as usize,
                });
            }
            if q.is_zero() {
                continue;
            }
            let entry = map.remove(&a).map(|p| p.add(&q)).unwrap_or(q);
            if entry.is_zero() {
                map.remove(&a);
            } else {
                map.insert(a, entry);
            }
        }
        if map.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(MultiCoeffRecurrence {
            vars,
            window,
            entries: map,
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<i64>, &MultiPoly)> {
        self.entries.iter()
    }

    /// Divide every coefficient by the largest shared power of t, so that at
    /// least one coefficient has nonzero constant term. Returns the
    /// normalized recurrence together with the map a -> Q'_a(0) (zero values
    /// are kept — the support of the map is the window support, not the
    /// support of the constants).
    pub fn normalize(&self) -> (MultiCoeffRecurrence, BTreeMap<Vec<i64>, ExactScalar>) {
        let v = self
            .entries
            .values()
            .map(|q| q.valuation1())
            .min()
            .expect("nonempty by construction");
        let shared = Monomial(vec![v]);
        let entries: BTreeMap<Vec<i64>, MultiPoly> = self
            .entries
            .iter()
            .map(|(a, q)| (a.clone(), q.div_monomial(&shared).expect("valuation divides")))
            .collect();
        let constants: BTreeMap<Vec<i64>, ExactScalar> = entries
            .iter()
            .map(|(a, q)| (a.clone(), q.constant_term()))
            .collect();
        (
            MultiCoeffRecurrence {
                vars: self.vars,
                window: self.window,
                entries,
            },
            constants,
        )
    }
}

/// Check a multivariate recurrence against a coefficient prefix.
///
/// An index n is checkable when every window reference n - a lands inside
/// the box; boundary indices whose window sticks out (below zero or above
/// the box) are skipped. Errors with `BoxTooSmall` when no index at all is
/// checkable; otherwise reports whether every checkable index satisfies the
/// relation.
pub fn validate_multirec(rec: &MultiCoeffRecurrence, f: &DensePrefix) -> Result<bool> {
    if rec.vars() != f.vars() {
        return Err(Error::VarMismatch(rec.vars(), f.vars()));
    }
    let k = rec.vars();
    let mut checked = 0usize;
    let mut ok = true;
    'outer: for n in f.indices() {
        let mut refs: Vec<Vec<usize>> = Vec::new();
        for (a, _) in rec.entries() {
            let mut m = Vec::with_capacity(k);
            for i in 0..k {
                let s = n[i] as i64 - a[i];
                if s < 0 || s as usize >= f.dims()[i] {
                    continue 'outer;
                }
                m.push(s as usize);
            }
            refs.push(m);
        }
        checked += 1;
        let nk = int(n[k - 1] as i64);
        let mut acc = ExactScalar::zero();
        for ((_, q), m) in rec.entries().zip(&refs) {
            acc += q.eval1(&nk) * f.get(m);
        }
        if !acc.is_zero() {
            ok = false;
            break;
        }
    }
    if checked == 0 {
        return Err(Error::BoxTooSmall);
    }
    Ok(ok)
}

/// Linear differential operator sum_j P_j(x) * D^j with polynomial
/// coefficients; index j of `coeffs` holds P_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdeOperator {
    coeffs: Vec<MultiPoly>,
}

impl OdeOperator {
    pub fn new(coeffs: Vec<MultiPoly>) -> Result<Self> {
        let mut coeffs = coeffs;
        for p in &coeffs {
            if p.vars() != 1 {
                return Err(Error::VarMismatch(1, p.vars()));
            }
        }
        while coeffs.last().map(|p| p.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(OdeOperator { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }
}

/// Falling-factorial polynomial prod_{r=0}^{j-1} (t + a - r).
fn falling_factorial_poly(a: i64, j: u32) -> MultiPoly {
    let mut acc = MultiPoly::one(1);
    for r in 0..j {
        let mut lin = MultiPoly::constant(1, int(a - r as i64));
        lin.add_term(Monomial::variable(1, 0), ExactScalar::one());
        acc = acc.mul(&lin);
    }
    acc
}

/// Translate an ODE operator annihilating F = sum g(n) x^n into a
/// coefficient recurrence for g.
///
/// Extracting [x^m] of each x^i * F^(j) gives the falling-factorial factor
/// ff(m - i + j, j) * g(m - i + j); collecting by the shift against the
/// lowest referenced index yields a relation valid for every index >= the
/// returned `valid_from` (boundary relations that would reference negative
/// indices are dropped by the re-indexing, not encoded with conventions).
pub fn ode_to_recurrence(op: &OdeOperator) -> Result<UniPRecurrence> {
    // delta = j - i over all terms of all coefficients
    let mut delta_min = i64::MAX;
    for (j, p) in op.coeffs().iter().enumerate() {
        for (m, _) in p.terms() {
            delta_min = delta_min.min(j as i64 - m.0[0] as i64);
        }
    }
    let mut by_shift: BTreeMap<usize, MultiPoly> = BTreeMap::new();
    for (j, p) in op.coeffs().iter().enumerate() {
        for (m, c) in p.terms() {
            let i = m.0[0] as i64;
            let a = (j as i64 - i - delta_min) as usize;
            let ff = falling_factorial_poly(a as i64, j as u32).mul_scalar(c);
            let entry = by_shift
                .remove(&a)
                .map(|q| q.add(&ff))
                .unwrap_or(ff);
            if !entry.is_zero() {
                by_shift.insert(a, entry);
            }
        }
    }
    let valid_from = delta_min.max(0) as usize;
    UniPRecurrence::new(by_shift.into_iter().collect(), valid_from)
}
