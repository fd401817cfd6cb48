//! Generating functions of nonnegative integer point sets: solution sets of
//! linear Diophantine systems (with a direct product form for free solution
//! monoids), plane-curve zero sets assembled from classified factors, a
//! three-variable surface demo, and an exact factorial-growth comparator.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MultiPoly};
use crate::prefix::{BoxIter, DensePrefix};
use crate::ratfunc::{series_expand, RationalGF};
use crate::rationality::rational_fit;
use crate::scalar::{int, scalar_pow, ExactScalar};
use crate::semilinear::{gf_semilinear, LinearSet, SemilinearSet};

/// Per-row comparison against zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// sum_i a_i n_i + b = 0
    Eq,
    /// sum_i a_i n_i + b >= 0
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SysRow {
    pub coeffs: Vec<i64>,
    pub rel: Relation,
    pub offset: i64,
}

/// Integer linear constraints over ℕ^d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    vars: usize,
    rows: Vec<SysRow>,
}

impl LinearSystem {
    pub fn new(vars: usize, rows: Vec<SysRow>) -> Result<Self> {
        if rows.iter().any(|r| r.coeffs.len() != vars) {
            return Err(Error::DimMismatch);
        }
        Ok(LinearSystem { vars, rows })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[SysRow] {
        &self.rows
    }

    /// All rows are equalities with zero offset.
    pub fn is_homogeneous(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.rel == Relation::Eq && r.offset == 0)
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        assert_eq!(p.len(), self.vars, "point arity mismatch");
        self.rows.iter().all(|r| {
            let lhs: i128 = r
                .coeffs
                .iter()
                .zip(p)
                .map(|(&a, &n)| a as i128 * n as i128)
                .sum::<i128>()
                + r.offset as i128;
            match r.rel {
                Relation::Eq => lhs == 0,
                Relation::Ge => lhs >= 0,
            }
        })
    }
}

/// All componentwise-minimal nonzero solutions of a homogeneous equality
/// system with coordinates <= bound, by exhaustive scan. The scan order is
/// lexicographic, so any dominating earlier solution is seen before the
/// points it dominates.
pub fn minimal_solutions(sys: &LinearSystem, bound: usize) -> Result<BTreeSet<Monomial>> {
    if !sys.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let dims = vec![bound + 1; sys.vars()];
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for p in BoxIter::new(&dims) {
        if p.iter().all(|&c| c == 0) || !sys.contains(&p) {
            continue;
        }
        if minimal
            .iter()
            .any(|m| m.iter().zip(&p).all(|(&mi, &pi)| mi <= pi))
        {
            continue;
        }
        minimal.push(p);
    }
    Ok(minimal
        .into_iter()
        .map(|p| Monomial(p.iter().map(|&c| c as u32).collect()))
        .collect())
}

/// Rational generating function of the solution set, as a verified fit of
/// the indicator prefix on `fit_box`. Homogeneous equality systems first try
/// the product 1/prod_h (1 - x^h) over the minimal solutions; it is returned
/// only when its expansion matches the indicator on the box (free monoid),
/// otherwise the generic fit runs.
pub fn linear_system_gf(sys: &LinearSystem, fit_box: &[usize]) -> Result<RationalGF> {
    if fit_box.len() != sys.vars() {
        return Err(Error::DimMismatch);
    }
    let indicator = DensePrefix::from_fn(fit_box, |p| {
        if sys.contains(p) {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        }
    });
    if sys.is_homogeneous() {
        let bound = fit_box.iter().copied().max().unwrap_or(0);
        let gens = minimal_solutions(sys, bound)?;
        let mut den = MultiPoly::one(sys.vars());
        for h in &gens {
            let mut factor = MultiPoly::one(sys.vars());
            factor.add_term(h.clone(), int(-1));
            den = den.mul(&factor);
        }
        let product = RationalGF::new(MultiPoly::one(sys.vars()), den)?;
        let expanded = series_expand(&product, fit_box)?;
        if expanded.data() == indicator.data() {
            return Ok(product);
        }
    }
    let margin = 2usize;
    let budget: Vec<u32> = fit_box
        .iter()
        .map(|&l| (l.saturating_sub(margin + 1) / 2) as u32)
        .collect();
    rational_fit(&indicator, &budget, &budget, margin)
}

/// How a single plane-curve factor was classified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorClass {
    /// The factor is a scalar multiple of a*y - b*x - c (primitive integer
    /// triple, first nonzero entry positive).
    IntegerLinear { a: i64, b: i64, c: i64 },
    /// All ℕ²-roots, certified empirically (stabilized count over nested
    /// boxes) or by sign-definiteness.
    FiniteRoots { points: BTreeSet<(usize, usize)> },
    /// Neither a bounded-coefficient line nor stably finite up to the bound.
    Unresolved { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFactor {
    pub poly: MultiPoly,
    pub classification: FactorClass,
}

/// Classify one nonzero factor in two variables.
pub fn classify_factor(
    q: &MultiPoly,
    coeff_bound: u64,
    root_bound: usize,
) -> Result<CurveFactor> {
    if q.vars() != 2 {
        return Err(Error::DimMismatch);
    }
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if q.total_degree() <= 1 {
        let alpha = q.coeff(&Monomial(vec![1, 0]));
        let beta = q.coeff(&Monomial(vec![0, 1]));
        let gamma = q.constant_term();
        if !(alpha.is_zero() && beta.is_zero()) {
            if let Some((a, b, c)) = primitive_triple(&beta, &(-&alpha), &(-&gamma), coeff_bound)
            {
                return Ok(CurveFactor {
                    poly: q.clone(),
                    classification: FactorClass::IntegerLinear { a, b, c },
                });
            }
        }
    }
    // sign-definite polynomials have no roots at all
    if is_sign_definite(q) {
        return Ok(CurveFactor {
            poly: q.clone(),
            classification: FactorClass::FiniteRoots {
                points: BTreeSet::new(),
            },
        });
    }
    // nested-box stabilization: same root count in the half box and the full
    // box is the empirical finiteness certificate
    let points = roots_in_box(q, root_bound);
    let hb = root_bound / 2;
    let half = points.iter().filter(|&&(x, y)| x <= hb && y <= hb).count();
    if points.len() == half {
        Ok(CurveFactor {
            poly: q.clone(),
            classification: FactorClass::FiniteRoots { points },
        })
    } else {
        Ok(CurveFactor {
            poly: q.clone(),
            classification: FactorClass::Unresolved { bound: root_bound },
        })
    }
}

/// Scale (a, b, c) to a primitive integer triple with positive leading
/// nonzero entry; None when a coefficient exceeds the bound.
fn primitive_triple(
    a: &ExactScalar,
    b: &ExactScalar,
    c: &ExactScalar,
    coeff_bound: u64,
) -> Option<(i64, i64, i64)> {
    let lcm = [a, b, c]
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = [a, b, c]
        .iter()
        .map(|v| (*v * ExactScalar::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    debug_assert!(!g.is_zero(), "not all of a, b, c are zero");
    let mut prim: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
    if prim.iter().find(|v| !v.is_zero())?.is_negative() {
        for v in &mut prim {
            *v = -&*v;
        }
    }
    let bound = BigInt::from(coeff_bound);
    if prim.iter().any(|v| v.abs() > bound) {
        return None;
    }
    Some((
        prim[0].to_i64().unwrap(),
        prim[1].to_i64().unwrap(),
        prim[2].to_i64().unwrap(),
    ))
}

/// All coefficients share one sign and the constant term is nonzero: the
/// polynomial cannot vanish on ℕ².
fn is_sign_definite(q: &MultiPoly) -> bool {
    let c0 = q.constant_term();
    if c0.is_zero() {
        return false;
    }
    if c0.is_positive() {
        q.terms().all(|(_, c)| c.is_positive())
    } else {
        q.terms().all(|(_, c)| c.is_negative())
    }
}

fn roots_in_box(q: &MultiPoly, bound: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for p in BoxIter::new(&[bound + 1, bound + 1]) {
        let point = [int(p[0] as i64), int(p[1] as i64)];
        if q.eval(&point).is_zero() {
            out.insert((p[0], p[1]));
        }
    }
    out
}

/// ℕ² solutions of a*y - b*x = c.
enum LinePoints {
    /// Infinite arithmetic progression: base plus multiples of one period.
    Progression(LinearSet),
    /// At most finitely many points (mixed-sign direction or no solution).
    Finite(BTreeSet<Vec<usize>>),
}

fn line_lattice_points(a: i64, b: i64, c: i64) -> LinePoints {
    debug_assert!(a != 0 || b != 0);
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let ext = a.extended_gcd(&b);
    let g = ext.gcd; // positive since (a, b) != (0, 0)
    if c.rem_euclid(g) != 0 {
        return LinePoints::Finite(BTreeSet::new());
    }
    // particular solution of a*y0 - b*x0 = c from a*u + b*v = g
    let scale = c / g;
    let mut y0 = ext.x * scale;
    let mut x0 = -ext.y * scale;
    // integer direction of the solution line
    let mut dx = a / g;
    let mut dy = b / g;
    if dx < 0 || (dx == 0 && dy < 0) {
        dx = -dx;
        dy = -dy;
    }
    if dy >= 0 {
        // same-sign direction: shift to the componentwise-least ℕ² point
        let mut k_min = i128::MIN;
        for (pos, step) in [(x0, dx), (y0, dy)] {
            if step == 0 {
                if pos < 0 {
                    return LinePoints::Finite(BTreeSet::new());
                }
            } else {
                k_min = k_min.max(Integer::div_ceil(&-pos, &step));
            }
        }
        x0 += k_min * dx;
        y0 += k_min * dy;
        let base = vec![x0 as usize, y0 as usize];
        let period = vec![dx as usize, dy as usize];
        LinePoints::Progression(
            LinearSet::new(base, vec![period]).expect("nonzero period by construction"),
        )
    } else {
        // dx > 0, dy < 0: x grows while y shrinks, finitely many ℕ² points
        let k_lo = Integer::div_ceil(&-x0, &dx);
        let k_hi = Integer::div_floor(&y0, &-dy);
        let mut pts = BTreeSet::new();
        let mut k = k_lo;
        while k <= k_hi {
            pts.insert(vec![(x0 + k * dx) as usize, (y0 + k * dy) as usize]);
            k += 1;
        }
        LinePoints::Finite(pts)
    }
}

#[derive(Debug, Clone)]
pub enum CurveOutcome {
    Rational(RationalGF),
    /// Some factor resisted classification; its zero set may be infinite yet
    /// not a union of lines, which blocks rationality.
    NotRationalSuspected { witness: MultiPoly },
}

#[derive(Debug, Clone)]
pub struct CurveReport {
    pub factors: Vec<CurveFactor>,
    pub outcome: CurveOutcome,
    pub verified: bool,
    pub verify_dims: Vec<usize>,
}

/// Generating function of the common zero set of a factored plane curve.
///
/// Every factor with infinitely many ℕ²-roots must classify as an integer
/// line; each line contributes one arithmetic progression (or a finite
/// segment), assembled as a semilinear set. Double counting is corrected by
/// inclusion–exclusion over pairwise line intersections and finite points —
/// sufficient at any depth, since a point covered k times lies on k parts
/// pairwise. The result is compared against direct enumeration of the
/// factors' zeros on the verification box; mismatches surface as
/// `verified: false`, never as a silently wrong function.
pub fn curve_gf(factors: &[MultiPoly], verify_dims: &[usize]) -> Result<CurveReport> {
    if verify_dims.len() != 2 {
        return Err(Error::DimMismatch);
    }
    let coeff_bound = 1_000_000u64;
    let root_bound = (2 * verify_dims.iter().copied().max().unwrap_or(0)).max(8);
    let mut classified = Vec::with_capacity(factors.len());
    for q in factors {
        classified.push(classify_factor(q, coeff_bound, root_bound)?);
    }
    let unresolved = classified
        .iter()
        .find(|f| matches!(f.classification, FactorClass::Unresolved { .. }))
        .map(|f| f.poly.clone());
    if let Some(witness) = unresolved {
        return Ok(CurveReport {
            factors: classified,
            outcome: CurveOutcome::NotRationalSuspected { witness },
            verified: false,
            verify_dims: verify_dims.to_vec(),
        });
    }
    let mut lines: BTreeSet<(i64, i64, i64)> = BTreeSet::new();
    let mut finite: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in &classified {
        match &f.classification {
            FactorClass::IntegerLinear { a, b, c } => {
                lines.insert((*a, *b, *c));
            }
            FactorClass::FiniteRoots { points } => {
                finite.extend(points.iter().map(|&(x, y)| vec![x, y]));
            }
            FactorClass::Unresolved { .. } => unreachable!("filtered above"),
        }
    }
    let mut parts: Vec<LinearSet> = Vec::new();
    for &(a, b, c) in &lines {
        match line_lattice_points(a, b, c) {
            LinePoints::Progression(ls) => parts.push(ls),
            LinePoints::Finite(pts) => finite.extend(pts),
        }
    }
    let set = SemilinearSet::new(finite.iter().cloned(), parts.clone())?;
    let (gf_sum, _) = gf_semilinear(&set, verify_dims)?;

    // overlap candidates: pairwise line intersections plus finite points
    let mut candidates: BTreeSet<Vec<usize>> = finite.clone();
    let line_list: Vec<(i64, i64, i64)> = lines.iter().copied().collect();
    for i in 0..line_list.len() {
        for j in i + 1..line_list.len() {
            if let Some(p) = line_intersection(line_list[i], line_list[j]) {
                candidates.insert(p);
            }
        }
    }
    let mut correction = MultiPoly::zero(2);
    for p in &candidates {
        let mu = parts.iter().filter(|l| l.contains(p)).count()
            + usize::from(finite.contains(p));
        if mu >= 2 {
            correction.add_term(
                Monomial(p.iter().map(|&c| c as u32).collect()),
                int(1 - mu as i64),
            );
        }
    }
    let gf = gf_sum.add(&RationalGF::from_poly(correction));

    // verification: the factors' enumerated zero set is the ground truth
    let expanded = series_expand(&gf, verify_dims)?;
    let mut verified = true;
    for idx in BoxIter::new(verify_dims) {
        let point = [int(idx[0] as i64), int(idx[1] as i64)];
        let is_zero_of_p = factors.iter().any(|q| q.eval(&point).is_zero());
        let coeff = expanded.get(&idx);
        let expect = if is_zero_of_p {
            ExactScalar::one()
        } else {
            ExactScalar::zero()
        };
        if coeff != &expect {
            verified = false;
            break;
        }
    }
    Ok(CurveReport {
        factors: classified,
        outcome: CurveOutcome::Rational(gf),
        verified,
        verify_dims: verify_dims.to_vec(),
    })
}

/// Rational intersection point of two lines a*y - b*x = c, kept only when
/// integral and in ℕ².
fn line_intersection(l1: (i64, i64, i64), l2: (i64, i64, i64)) -> Option<Vec<usize>> {
    let (a1, b1, c1) = (l1.0 as i128, l1.1 as i128, l1.2 as i128);
    let (a2, b2, c2) = (l2.0 as i128, l2.1 as i128, l2.2 as i128);
    let det = a1 * b2 - a2 * b1;
    if det == 0 {
        return None;
    }
    let x_num = c1 * a2 - c2 * a1;
    let y_num = b2 * c1 - b1 * c2;
    if x_num % det != 0 || y_num % det != 0 {
        return None;
    }
    let x = x_num / det;
    let y = y_num / det;
    if x < 0 || y < 0 {
        return None;
    }
    Some(vec![x as usize, y as usize])
}

#[derive(Debug, Clone)]
pub struct Np3Report {
    pub zeros: BTreeSet<Vec<usize>>,
    /// The enumerated zero set is exactly {(n, n, 0)}.
    pub zeros_are_diagonal: bool,
    /// Verified fit of the zero-set indicator (None when the box is too
    /// small to attempt one).
    pub gf: Option<RationalGF>,
    /// Fitted GF equals 1/(1 - x*y) (three variables, z unused).
    pub gf_matches_diagonal: bool,
    /// Fitted GF equals 1/((1 - x)(1 - y)) — the product form does NOT match
    /// the diagonal zero set; reported so the discrepancy is visible.
    pub gf_matches_product: bool,
}

/// Enumerate the ℕ³ zeros of x - y + 2z² + z·y² up to `bound` per axis,
/// check they form the diagonal {(n, n, 0)}, and fit their generating
/// function. For z >= 1 and y >= 1 the terms 2z² + z·y² already exceed y, and
/// y = 0 forces x + 2z² = 0, so only z = 0, x = y survives.
pub fn np3_demo(bound: usize) -> Result<Np3Report> {
    let p = MultiPoly::from_terms(
        3,
        [
            (Monomial(vec![1, 0, 0]), int(1)),
            (Monomial(vec![0, 1, 0]), int(-1)),
            (Monomial(vec![0, 0, 2]), int(2)),
            (Monomial(vec![0, 2, 1]), int(1)),
        ],
    );
    let dims = vec![bound + 1; 3];
    let mut zeros = BTreeSet::new();
    for idx in BoxIter::new(&dims) {
        let point: Vec<ExactScalar> = idx.iter().map(|&c| int(c as i64)).collect();
        if p.eval(&point).is_zero() {
            zeros.insert(idx);
        }
    }
    let expected: BTreeSet<Vec<usize>> = (0..=bound).map(|n| vec![n, n, 0]).collect();
    let zeros_are_diagonal = zeros == expected;

    let fit_budget = [2u32, 2, 2];
    let margin = 2usize;
    let gf = if dims.iter().all(|&l| l > 2 * 2 + margin) {
        let indicator = DensePrefix::from_fn(&dims, |idx| {
            if zeros.contains(idx) {
                ExactScalar::one()
            } else {
                ExactScalar::zero()
            }
        });
        rational_fit(&indicator, &fit_budget, &fit_budget, margin).ok()
    } else {
        None
    };
    let diagonal_form = RationalGF::new(
        MultiPoly::one(3),
        MultiPoly::from_terms(
            3,
            [
                (Monomial(vec![0, 0, 0]), int(1)),
                (Monomial(vec![1, 1, 0]), int(-1)),
            ],
        ),
    )?;
    let product_form = RationalGF::new(
        MultiPoly::one(3),
        MultiPoly::from_terms(
            3,
            [
                (Monomial(vec![0, 0, 0]), int(1)),
                (Monomial(vec![1, 0, 0]), int(-1)),
                (Monomial(vec![0, 1, 0]), int(-1)),
                (Monomial(vec![1, 1, 0]), int(1)),
            ],
        ),
    )?;
    let gf_matches_diagonal = gf
        .as_ref()
        .map(|g| crate::ratfunc::rf_equal(g, &diagonal_form))
        .unwrap_or(false);
    let gf_matches_product = gf
        .as_ref()
        .map(|g| crate::ratfunc::rf_equal(g, &product_form))
        .unwrap_or(false);
    Ok(Np3Report {
        zeros,
        zeros_are_diagonal,
        gf,
        gf_matches_diagonal,
        gf_matches_product,
    })
}

/// Least index m <= horizon from which values[m] > (m!)^c holds at every
/// later sampled index; None when the last sample still fails. With c = p/q
/// the comparison is values[m]^q > (m!)^p, exact in big integers.
pub fn mahler_growth_witness(
    values: &[ExactScalar],
    c: &ExactScalar,
    horizon: usize,
) -> Option<usize> {
    assert!(c.is_positive(), "exponent must be positive");
    if values.is_empty() {
        return None;
    }
    let p = c.numer().to_u32().expect("exponent numerator fits u32");
    let q = c.denom().to_u32().expect("exponent denominator fits u32");
    let end = horizon.min(values.len() - 1);
    let mut last_fail: Option<usize> = None;
    for m in 0..=end {
        debug_assert!(!values[m].is_negative(), "values must be nonnegative");
        let lhs = scalar_pow(&values[m], q);
        let rhs = scalar_pow(&ExactScalar::from_integer(factorial(m)), p);
        if lhs <= rhs {
            last_fail = Some(m);
        }
    }
    match last_fail {
        None => Some(0),
        Some(f) if f == end => None,
        Some(f) => Some(f + 1),
    }
}
