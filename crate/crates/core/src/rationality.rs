//! Rationality machinery: eventually-periodic (Szegő-form) recovery with
//! recurrence certification, rational reconstruction of a series from a
//! dense prefix by exact linear algebra, value-set analysis for coefficient
//! recurrences, and the two-variable reconstruction pipeline that ties them
//! together. Every returned generating function is verified by re-expansion
//! before it leaves this module.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{distinct_primes, in_multiplicative_semigroup};
use crate::error::{Error, Result};
use crate::linalg::Eliminator;
use crate::poly::{Monomial, MultiPoly};
use crate::prefix::{BoxIter, DensePrefix};
use crate::precursive::{validate_multirec, MultiCoeffRecurrence, UniPRecurrence};
use crate::ratfunc::{cancel_monomial_content, series_expand, RationalGF};
use crate::scalar::{int, ExactScalar};

/// Eventually periodic sequence: preperiod a_0..a_{s-1}, then period
/// w_0..w_{m-1} repeating forever. Generating function
/// A(x) + x^s W(x)/(1 - x^m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SzegoForm {
    preperiod: Vec<ExactScalar>,
    period: Vec<ExactScalar>,
}

impl SzegoForm {
    pub fn new(preperiod: Vec<ExactScalar>, period: Vec<ExactScalar>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::NoPeriodFound);
        }
        Ok(SzegoForm { preperiod, period })
    }

    pub fn preperiod(&self) -> &[ExactScalar] {
        &self.preperiod
    }

    pub fn period(&self) -> &[ExactScalar] {
        &self.period
    }

    /// Value of the represented sequence at index n.
    pub fn value_at(&self, n: usize) -> &ExactScalar {
        let s = self.preperiod.len();
        if n < s {
            &self.preperiod[n]
        } else {
            &self.period[(n - s) % self.period.len()]
        }
    }

    /// (A(x)(1 - x^m) + x^s W(x)) / (1 - x^m).
    pub fn to_gf(&self) -> RationalGF {
        let s = self.preperiod.len();
        let m = self.period.len();
        let mut a = MultiPoly::zero(1);
        for (i, c) in self.preperiod.iter().enumerate() {
            a.add_term(Monomial(vec![i as u32]), c.clone());
        }
        let mut w_shifted = MultiPoly::zero(1);
        for (j, c) in self.period.iter().enumerate() {
            w_shifted.add_term(Monomial(vec![(s + j) as u32]), c.clone());
        }
        let mut den = MultiPoly::one(1);
        den.add_term(Monomial(vec![m as u32]), int(-1));
        let num = a.mul(&den).add(&w_shifted);
        RationalGF::new(num, den).expect("denominator 1 - x^m has constant term 1")
    }
}

/// Find the minimal eventually-periodic structure of a sequence prefix:
/// smallest period m <= max_period, then smallest preperiod s <=
/// max_preperiod, with seq(n+m) = seq(n) for all s <= n <= len-m-1.
pub fn detect_szego(
    seq: &[ExactScalar],
    max_preperiod: usize,
    max_period: usize,
) -> Result<SzegoForm> {
    let needed = max_preperiod + 3 * max_period;
    if seq.len() < needed {
        return Err(Error::TooShort {
            needed,
            got: seq.len(),
        });
    }
    for m in 1..=max_period {
        for s in 0..=max_preperiod {
            if (s..seq.len() - m).all(|n| seq[n + m] == seq[n]) {
                return SzegoForm::new(seq[..s].to_vec(), seq[s..s + m].to_vec());
            }
        }
    }
    Err(Error::NoPeriodFound)
}

/// Certify that the eventually periodic extension of `form` satisfies the
/// recurrence at every index n >= max(validity_start, rec's own start).
///
/// For n >= preperiod length s, all referenced values sit in the periodic
/// zone, so for each residue r mod m the left-hand side collapses to a fixed
/// scalar combination of the coefficient polynomials; the relation holds on
/// the whole (infinite) residue class iff that combination is the zero
/// polynomial. The finitely many indices below s are checked by direct
/// evaluation against the preperiod values.
pub fn certify_periodic(
    rec: &UniPRecurrence,
    form: &SzegoForm,
    validity_start: usize,
) -> bool {
    let s = form.preperiod().len();
    let m = form.period().len();
    let start = validity_start.max(rec.valid_from());
    // finite window: indices with preperiod values in reach
    for n in start..s {
        if !rec.lhs_at(n, |t| form.value_at(t).clone()).is_zero() {
            return false;
        }
    }
    // residue classes: n = s + mk + r ranges over all n >= max(start, s),
    // where the shifted value is period[(r + a) mod m]
    for r in 0..m {
        let mut combo = MultiPoly::zero(1);
        for (a, p) in rec.terms() {
            let c = &form.period()[(r + a) % m];
            combo = combo.add(&p.mul_scalar(c));
        }
        if !combo.is_zero() {
            return false;
        }
    }
    true
}

/// Monomials e with e <= bounds componentwise, sorted by total degree then
/// by exponent vector — the deterministic candidate order for denominators.
fn box_monomials(bounds: &[u32]) -> Vec<Monomial> {
    let dims: Vec<usize> = bounds.iter().map(|&b| b as usize + 1).collect();
    let mut all: Vec<Monomial> = BoxIter::new(&dims)
        .map(|idx| Monomial(idx.iter().map(|&e| e as u32).collect()))
        .collect();
    all.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| a.0.cmp(&b.0))
    });
    all
}

/// Reconstruct a rational function P/Q from a dense coefficient prefix.
///
/// Unknowns are Q's coefficients over a monomial support; each valid-region
/// index n outside the numerator box imposes sum_e q_e f(n-e) = 0. Supports
/// are tried in order of increasing total denominator degree; for each
/// support the constraint nullspace is computed exactly (guess on a leading
/// batch of rows, then certify against every remaining row, growing the
/// system on any violation). The first nullspace vector with nonzero
/// constant coefficient is normalized to Q(0) = 1; P is read off as the
/// numerator-box part of Q * F. The returned GF re-expands to the prefix on
/// its whole valid region — enforced, not assumed.
pub fn rational_fit(
    prefix: &DensePrefix,
    num_box: &[u32],
    den_box: &[u32],
    verify_margin: usize,
) -> Result<RationalGF> {
    let d = prefix.vars();
    if num_box.len() != d || den_box.len() != d {
        return Err(Error::DimMismatch);
    }
    let bounds = prefix.valid().to_vec();
    for i in 0..d {
        if bounds[i] <= num_box[i] as usize + den_box[i] as usize + verify_margin {
            return Err(Error::BoxTooSmall);
        }
    }
    let in_num_box =
        |n: &[usize]| n.iter().zip(num_box).all(|(&ni, &bi)| ni <= bi as usize);
    let pool = box_monomials(den_box);
    let t_max: u32 = den_box.iter().sum();
    let mut prev = 0usize;
    for t in 0..=t_max {
        let support: Vec<Monomial> = pool
            .iter()
            .filter(|m| m.total_degree() <= t)
            .cloned()
            .collect();
        if support.len() == prev {
            continue;
        }
        prev = support.len();
        if let Some(gf) = fit_with_support(prefix, &bounds, &support, &in_num_box)? {
            return Ok(gf);
        }
    }
    Err(Error::NoFit)
}

fn constraint_row(
    prefix: &DensePrefix,
    support: &[Monomial],
    n: &[usize],
) -> Vec<ExactScalar> {
    support
        .iter()
        .map(|e| {
            let mut src = Vec::with_capacity(n.len());
            for (&ni, &ei) in n.iter().zip(&e.0) {
                let ei = ei as usize;
                if ni < ei {
                    return ExactScalar::zero();
                }
                src.push(ni - ei);
            }
            prefix.get(&src).clone()
        })
        .collect()
}

fn fit_with_support(
    prefix: &DensePrefix,
    bounds: &[usize],
    support: &[Monomial],
    in_num_box: &dyn Fn(&[usize]) -> bool,
) -> Result<Option<RationalGF>> {
    let cols = support.len();
    debug_assert!(support[0].is_constant(), "constant monomial leads the pool");
    let mut elim = Eliminator::new(cols);
    // guess phase: feed an initial batch of nonzero constraint rows
    let batch_target = 3 * cols + 16;
    let mut fed = 0usize;
    let mut saturated = false;
    for n in BoxIter::new(bounds) {
        if in_num_box(&n) {
            continue;
        }
        let row = constraint_row(prefix, support, &n);
        if row.iter().all(|c| c.is_zero()) {
            continue;
        }
        elim.add_row(row);
        fed += 1;
        if elim.rank() == cols {
            saturated = true;
            break;
        }
        if fed >= batch_target {
            break;
        }
    }
    if saturated {
        return Ok(None); // only the trivial nullspace
    }
    // certify phase: candidate must annihilate every constraint row; each
    // violation strictly grows the rank, so the loop ends within `cols` turns
    'candidates: loop {
        let candidate = match elim
            .nullspace_basis()
            .into_iter()
            .find(|v| !v[0].is_zero())
        {
            Some(v) => v,
            None => return Ok(None),
        };
        for n in BoxIter::new(bounds) {
            if in_num_box(&n) {
                continue;
            }
            let row = constraint_row(prefix, support, &n);
            let dot: ExactScalar = row.iter().zip(&candidate).map(|(a, b)| a * b).sum();
            if !dot.is_zero() {
                elim.add_row(row);
                if elim.rank() == cols {
                    return Ok(None);
                }
                continue 'candidates;
            }
        }
        // normalize Q(0) = 1 and read off the numerator
        let q0 = candidate[0].clone();
        let den = MultiPoly::from_terms(
            prefix.vars(),
            support
                .iter()
                .zip(&candidate)
                .map(|(m, c)| (m.clone(), c / &q0)),
        );
        let mut num = MultiPoly::zero(prefix.vars());
        for n in BoxIter::new(bounds) {
            if !in_num_box(&n) {
                continue;
            }
            let row = constraint_row(prefix, support, &n);
            let dot: ExactScalar =
                row.iter().zip(&candidate).map(|(a, b)| a * b).sum();
            num.add_term(
                Monomial(n.iter().map(|&v| v as u32).collect()),
                dot / &q0,
            );
        }
        let gf = RationalGF::new(num, den)?;
        // enforced postcondition: the fit re-expands to the prefix
        let expanded = series_expand(&gf, bounds)?;
        let mut agree = true;
        for n in BoxIter::new(bounds) {
            if expanded.get(&n) != prefix.get(&n) {
                agree = false;
                break;
            }
        }
        if !agree {
            return Ok(None);
        }
        return Ok(Some(gf));
    }
}

/// The finite value set Γ = { sum_a q(a) s(a) : s(a) in Δ ∪ {0} }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    values: Vec<ExactScalar>,
}

impl GammaSet {
    pub fn values(&self) -> &[ExactScalar] {
        &self.values
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        self.values.binary_search(x).is_ok()
    }
}

/// Dynamic-programming sumset accumulation: one pass per table entry, never
/// the |Δ+1|^(table size) brute force.
pub fn gamma_set(
    qtable: &BTreeMap<Vec<i64>, ExactScalar>,
    delta: &[ExactScalar],
) -> GammaSet {
    let mut choices: BTreeSet<ExactScalar> = delta.iter().cloned().collect();
    choices.insert(ExactScalar::zero());
    let mut acc: BTreeSet<ExactScalar> = BTreeSet::new();
    acc.insert(ExactScalar::zero());
    for q in qtable.values() {
        if q.is_zero() {
            continue;
        }
        let mut next = BTreeSet::new();
        for base in &acc {
            for s in &choices {
                next.insert(base + q * s);
            }
        }
        acc = next;
    }
    GammaSet {
        values: acc.into_iter().collect(),
    }
}

/// Finite prime set P such that x ∈ nR forces every prime of n into P,
/// for the subring R = ℤ[generators] of the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSupportCertificate {
    primes: Vec<BigInt>,
}

impl PrimeSupportCertificate {
    pub fn from_primes(primes: impl IntoIterator<Item = BigInt>) -> Self {
        let set: BTreeSet<BigInt> = primes.into_iter().collect();
        PrimeSupportCertificate {
            primes: set.into_iter().collect(),
        }
    }

    pub fn primes(&self) -> &[BigInt] {
        &self.primes
    }

    /// Is n a product of certificate primes (1 counts)?
    pub fn admits(&self, n: &BigInt) -> bool {
        in_multiplicative_semigroup(n, &self.primes)
    }
}

/// Primes that can divide n when x ∈ nR, R = ℤ[generators].
///
/// Adjoining p/q to ℤ yields ℤ[1/q] (p/q and 1/q generate each other over ℤ
/// given gcd(p,q)=1), so R = ℤ[1/p : p ∈ D] with D the primes of the
/// generators' denominators. If x = u/v in lowest terms lies in nR, then
/// n·w/d = u/v for some integer w and some d supported on D, so every prime
/// of n outside D must divide u. Hence D ∪ primes(numerator(x)) suffices.
pub fn allowed_primes(
    generators: &[ExactScalar],
    x: &ExactScalar,
) -> Result<PrimeSupportCertificate> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for g in generators {
        primes.extend(distinct_primes(g.denom()));
    }
    primes.extend(distinct_primes(x.numer()));
    Ok(PrimeSupportCertificate {
        primes: primes.into_iter().collect(),
    })
}

/// Denominator primes D of the subring ℤ[generators] — the test-side dual of
/// `allowed_primes`: x ∈ R iff the primes of x's denominator lie in D.
pub fn subring_denominator_primes(generators: &[ExactScalar]) -> Vec<BigInt> {
    let mut primes: BTreeSet<BigInt> = BTreeSet::new();
    for g in generators {
        primes.extend(distinct_primes(g.denom()));
    }
    primes.into_iter().collect()
}

/// Is x an element of R = ℤ[generators]?
pub fn in_subring(x: &ExactScalar, denominator_primes: &[BigInt]) -> bool {
    in_multiplicative_semigroup(x.denom(), denominator_primes)
}

/// Multiply the prefix by the window polynomial sum_a q(a) x^(N+a): the
/// standard positive-exponent encoding of the recurrence's left-hand side.
/// The product's coefficient at any index with all coordinates >= 2N equals
/// the recurrence LHS at a fully interior index, so it vanishes wherever the
/// recurrence holds; boundary shells keep partial sums.
pub fn build_g(
    f: &DensePrefix,
    qtable: &BTreeMap<Vec<i64>, ExactScalar>,
    window: usize,
) -> Result<DensePrefix> {
    let k = f.vars();
    let n = window as i64;
    for i in 0..k {
        if f.dims()[i] <= 2 * window {
            return Err(Error::BoxTooSmall);
        }
    }
    let mut qhat = MultiPoly::zero(k);
    for (a, q) in qtable {
        if a.len() != k {
            return Err(Error::DimMismatch);
        }
        if a.iter().any(|&c| c.abs() > n) {
            return Err(Error::IndexOutOfBox {
                axis: a.iter().position(|&c| c.abs() > n).unwrap(),
                index: window,
            });
        }
        if q.is_zero() {
            continue;
        }
        qhat.add_term(
            Monomial(a.iter().map(|&c| (n + c) as u32).collect()),
            q.clone(),
        );
    }
    f.mul_poly(&qhat)
}

/// The (d-1)-dimensional coefficient slice of g at axis-coordinate i.
/// Valid region: the other axes keep theirs when i itself is within the
/// valid range; otherwise nothing in the slice is trustworthy.
pub fn slice_extract(g: &DensePrefix, axis: usize, i: usize) -> Result<DensePrefix> {
    let d = g.vars();
    if axis >= d || i >= g.dims()[axis] {
        return Err(Error::IndexOutOfBox { axis, index: i });
    }
    let sub_dims: Vec<usize> = g
        .dims()
        .iter()
        .enumerate()
        .filter(|(ax, _)| *ax != axis)
        .map(|(_, &v)| v)
        .collect();
    let mut out = DensePrefix::zeros(&sub_dims);
    for sub in BoxIter::new(&sub_dims) {
        let mut full = Vec::with_capacity(d);
        let mut it = sub.iter();
        for ax in 0..d {
            if ax == axis {
                full.push(i);
            } else {
                full.push(*it.next().unwrap());
            }
        }
        out.set(&sub, g.get(&full).clone());
    }
    let sub_valid: Vec<usize> = if i < g.valid()[axis] {
        g.valid()
            .iter()
            .enumerate()
            .filter(|(ax, _)| *ax != axis)
            .map(|(_, &v)| v)
            .collect()
    } else {
        vec![0; d - 1]
    };
    out.restrict_valid(&sub_valid);
    Ok(out)
}

/// Pointwise (Hadamard) product of equal-shaped prefixes; valid region is
/// the intersection.
pub fn hadamard(a: &DensePrefix, b: &DensePrefix) -> Result<DensePrefix> {
    if a.dims() != b.dims() {
        return Err(Error::DimMismatch);
    }
    let mut out = DensePrefix::zeros(a.dims());
    for idx in out.indices() {
        out.set(&idx, a.get(&idx) * b.get(&idx));
    }
    let valid: Vec<usize> = a
        .valid()
        .iter()
        .zip(b.valid())
        .map(|(&x, &y)| x.min(y))
        .collect();
    out.restrict_valid(&valid);
    Ok(out)
}

/// Does the recurrence LHS vanish at every in-box index whose coordinate on
/// `axis` is at least 1 and outside the multiplicative semigroup of the
/// certificate primes? Window references below zero count as zero
/// coefficients; indices whose window pokes out above the box are skipped
/// (nothing is known about those series values).
pub fn vanishing_test(
    f: &DensePrefix,
    qtable: &BTreeMap<Vec<i64>, ExactScalar>,
    cert: &PrimeSupportCertificate,
    axis: usize,
) -> bool {
    let k = f.vars();
    'outer: for idx in f.indices() {
        let t = idx[axis];
        if t == 0 || cert.admits(&BigInt::from(t)) {
            continue;
        }
        let mut acc = ExactScalar::zero();
        for (a, q) in qtable {
            let mut src = Vec::with_capacity(k);
            let mut in_range = true;
            for i in 0..k {
                let s = idx[i] as i64 - a[i];
                if s < 0 {
                    in_range = false; // reference below zero: contributes 0
                    break;
                }
                if s as usize >= f.dims()[i] {
                    continue 'outer; // unknown value above the box
                }
                src.push(s as usize);
            }
            if in_range {
                acc += q * f.get(&src);
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

/// Everything the two-variable pipeline produced along the way, plus the
/// verified generating function.
#[derive(Debug, Clone)]
pub struct PipelineReport {
    pub gf: RationalGF,
    /// Axis the product prefix was sliced along.
    pub axis: usize,
    /// Largest slice index with a nonzero coefficient (None: product prefix
    /// is identically zero on its valid region).
    pub m_bound: Option<usize>,
    pub gamma: GammaSet,
    pub cert: PrimeSupportCertificate,
}

/// Reconstruct the rational generating function of a two-variable series
/// from a coefficient prefix and a recurrence it satisfies; the inferred
/// value alphabet can be overridden.
pub fn main_theorem_d2(f: &DensePrefix, rec: &MultiCoeffRecurrence) -> Result<PipelineReport> {
    main_theorem_d2_with(f, rec, None)
}

/// The pipeline: validate the recurrence on the prefix, normalize away the
/// shared t-power, form the value set Γ and its prime-support certificate,
/// multiply f by the window polynomial to get a product prefix G with
/// finitely many nonzero slices, fit each slice univariately, reassemble,
/// divide the window polynomial back out, and verify the result against the
/// entire input prefix. An unverifiable reassembly is an error, never a
/// return value.
pub fn main_theorem_d2_with(
    f: &DensePrefix,
    rec: &MultiCoeffRecurrence,
    alphabet: Option<&[ExactScalar]>,
) -> Result<PipelineReport> {
    if f.vars() != 2 || rec.vars() != 2 {
        return Err(Error::DimMismatch);
    }
    if !validate_multirec(rec, f)? {
        return Err(Error::RecurrenceUnsatisfied);
    }
    let (recn, qtable) = rec.normalize();
    let delta: Vec<ExactScalar> = match alphabet {
        Some(d) => d.to_vec(),
        None => {
            let set: BTreeSet<ExactScalar> = f.data().iter().cloned().collect();
            set.into_iter().collect()
        }
    };
    let gamma = gamma_set(&qtable, &delta);
    let mut generators: BTreeSet<ExactScalar> = delta.iter().cloned().collect();
    for (_, qpoly) in recn.entries() {
        for (_, c) in qpoly.terms() {
            generators.insert(c.clone());
        }
    }
    let generators: Vec<ExactScalar> = generators.into_iter().collect();
    let mut cert_primes: BTreeSet<BigInt> = BTreeSet::new();
    for gam in gamma.values() {
        if !gam.is_zero() {
            cert_primes.extend(
                allowed_primes(&generators, gam)?
                    .primes()
                    .iter()
                    .cloned(),
            );
        }
    }
    let cert = PrimeSupportCertificate::from_primes(cert_primes);

    let g = build_g(f, &qtable, rec.window())?;

    // choose a slicing axis with an observed vanishing tail; prefer the last
    let axis = pick_bounded_axis(&g).ok_or_else(|| {
        Error::PipelineUnsound("no axis has a vanishing tail of slices in the valid region".into())
    })?;
    let other = 1 - axis;
    let m_bound = max_nonzero_slice(&g, axis);

    let qhat = window_poly(&qtable, rec.window());
    let (num_raw, den_raw) = match m_bound {
        None => (MultiPoly::zero(2), MultiPoly::one(2)),
        Some(m) => {
            let mut acc_num = MultiPoly::zero(2);
            let mut acc_den = MultiPoly::one(2);
            for i in 0..=m {
                let slice = slice_extract(&g, axis, i)?;
                let l = slice.valid()[0];
                let margin = 3usize;
                if l <= margin + 1 {
                    return Err(Error::BoxTooSmall);
                }
                let budget = ((l - margin - 1) / 2) as u32;
                let slice_gf = rational_fit(&slice, &[budget], &[budget], margin)?;
                if slice_gf.is_zero() {
                    continue;
                }
                let mut shift = vec![0u32; 2];
                shift[axis] = i as u32;
                let num_i = lift_to_axis(slice_gf.num(), other)
                    .mul_term(&Monomial(shift), &ExactScalar::one());
                let den_i = lift_to_axis(slice_gf.den(), other);
                // acc_num/acc_den + num_i/den_i
                acc_num = acc_num.mul(&den_i).add(&num_i.mul(&acc_den));
                acc_den = acc_den.mul(&den_i);
            }
            (acc_num, acc_den.mul(&qhat))
        }
    };

    let (num, den) = normalize_fraction(num_raw, den_raw)?;
    let gf = RationalGF::new(num, den).map_err(|e| match e {
        Error::ZeroConstantTerm | Error::ZeroDenominator => Error::PipelineUnsound(
            "window polynomial could not be divided back out".into(),
        ),
        other => other,
    })?;

    // verify against the entire input prefix
    let expanded = series_expand(&gf, f.dims())?;
    if &expanded != f {
        return Err(Error::PipelineUnsound(
            "reassembled generating function does not reproduce the input prefix".into(),
        ));
    }
    Ok(PipelineReport {
        gf,
        axis,
        m_bound,
        gamma,
        cert,
    })
}

/// sum_a q(a) x^(N+a) as a polynomial.
fn window_poly(qtable: &BTreeMap<Vec<i64>, ExactScalar>, window: usize) -> MultiPoly {
    let n = window as i64;
    let k = qtable.keys().next().map(|a| a.len()).unwrap_or(0);
    let mut qhat = MultiPoly::zero(k);
    for (a, q) in qtable {
        if q.is_zero() {
            continue;
        }
        qhat.add_term(
            Monomial(a.iter().map(|&c| (n + c) as u32).collect()),
            q.clone(),
        );
    }
    qhat
}

/// Largest axis-index of a nonzero entry within the valid region.
fn max_nonzero_slice(g: &DensePrefix, axis: usize) -> Option<usize> {
    let mut best = None;
    for idx in g.valid_indices() {
        if !g.get(&idx).is_zero() {
            best = Some(best.map_or(idx[axis], |b: usize| b.max(idx[axis])));
        }
    }
    best
}

/// Prefer the last axis; fall back to the first when the last shows no
/// vanishing tail inside the valid region (the input recurrence may bound
/// the product's support in either direction).
fn pick_bounded_axis(g: &DensePrefix) -> Option<usize> {
    for axis in [1usize, 0] {
        if g.valid()[axis] == 0 {
            continue;
        }
        match max_nonzero_slice(g, axis) {
            None => return Some(axis),
            Some(m) if m + 1 < g.valid()[axis] => return Some(axis),
            _ => {}
        }
    }
    None
}

/// Embed a univariate polynomial into two variables on the given axis.
fn lift_to_axis(p: &MultiPoly, axis: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(2);
    for (m, c) in p.terms() {
        let mut e = vec![0u32; 2];
        e[axis] = m.0[0];
        out.add_term(Monomial(e), c.clone());
    }
    out
}

/// Cancel shared monomial content, then rescue denominators with zero
/// constant term by exact division in either direction.
fn normalize_fraction(num: MultiPoly, den: MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    if den.is_zero() {
        return Err(Error::PipelineUnsound("zero denominator after reassembly".into()));
    }
    if num.is_zero() {
        return Ok((num, MultiPoly::one(den.vars())));
    }
    let (num, den) = cancel_monomial_content(&num, &den);
    if !den.constant_term().is_zero() {
        return Ok((num, den));
    }
    if let Ok(q) = num.divexact(&den) {
        let one = MultiPoly::one(q.vars());
        return Ok((q, one));
    }
    if let Ok(q) = den.divexact(&num) {
        if !q.constant_term().is_zero() {
            return Ok((MultiPoly::one(q.vars()), q));
        }
    }
    Err(Error::PipelineUnsound(
        "window polynomial could not be divided back out".into(),
    ))
}
