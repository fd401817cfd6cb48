//! Sparse multivariate polynomials over the exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order —
//! and therefore every derived computation and printout — is deterministic.
//! The map never stores a zero coefficient.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{format_scalar, parse_scalar, scalar_pow, ExactScalar};

/// Exponent vector; its length is the ambient variable count.
///
/// The derived `Ord` (lexicographic on the exponent vector) is a valid
/// monomial order: it is total, multiplicative, and has no infinite
/// descending chains on naturals, which is all `divexact` needs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    /// The constant monomial (all exponents zero).
    pub fn constant(vars: usize) -> Self {
        Monomial(vec![0; vars])
    }

    /// The single variable x_i.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn vars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise sum.
    pub fn mul(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Does self divide other (componentwise <=)?
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; caller must ensure other divides self.
    pub fn div(&self, other: &Self) -> Self {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl MultiPoly {
    pub fn zero(vars: usize) -> Self {
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, ExactScalar::one())
    }

    pub fn constant(vars: usize, c: ExactScalar) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::constant(vars), c);
        p
    }

    /// The single variable x_i as a polynomial.
    pub fn variable(vars: usize, i: usize) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial::variable(vars, i), ExactScalar::one());
        p
    }

    /// c * x^m as a polynomial.
    pub fn monomial(m: Monomial, c: ExactScalar) -> Self {
        let mut p = Self::zero(m.vars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ExactScalar)>,
    {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Add c * x^m, dropping the entry if the sum cancels to zero.
    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        debug_assert_eq!(m.vars(), self.vars);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    /// Coefficient of x^m (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    pub fn constant_term(&self) -> ExactScalar {
        self.coeff(&Monomial::constant(self.vars))
    }

    /// Largest exponent of x_axis across all terms (0 for the zero polynomial).
    pub fn degree_on_axis(&self, axis: usize) -> u32 {
        self.terms.keys().map(|m| m.0[axis]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent over the support — the largest monomial
    /// dividing every term. Zero vector for the zero polynomial.
    pub fn content_monomial(&self) -> Monomial {
        let mut c: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            match &mut c {
                None => c = Some(m.0.clone()),
                Some(v) => {
                    for (ci, mi) in v.iter_mut().zip(&m.0) {
                        *ci = (*ci).min(*mi);
                    }
                }
            }
        }
        Monomial(c.unwrap_or_else(|| vec![0; self.vars]))
    }

    /// Leading term under the monomial order (max key). Panics on zero.
    fn leading_term(&self) -> (&Monomial, &ExactScalar) {
        self.terms.iter().next_back().expect("zero polynomial")
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c))
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_scalar(&self, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    /// Multiply by the single term c * x^m.
    pub fn mul_term(&self, m: &Monomial, c: &ExactScalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.vars);
        }
        MultiPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division: returns q with self = q * divisor, or `NotDivisible`.
    ///
    /// Leading-term reduction under the monomial order. Over an integral
    /// domain lt(q * b) = lt(q) * lt(b), so whenever self is a true multiple
    /// the leading term of the running remainder is always reducible and the
    /// remainder strictly decreases; a stuck leading term proves
    /// indivisibility.
    pub fn divexact(&self, divisor: &MultiPoly) -> Result<MultiPoly> {
        if self.vars != divisor.vars {
            return Err(Error::VarMismatch(self.vars, divisor.vars));
        }
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        let (bm, bc) = divisor.leading_term();
        let (bm, bc) = (bm.clone(), bc.clone());
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(self.vars);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term();
            if !bm.divides(rm) {
                return Err(Error::NotDivisible);
            }
            let qm = rm.div(&bm);
            let qc = rc / &bc;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            q.add_term(qm, qc);
        }
        Ok(q)
    }

    /// Exact division by x^m; fails if any term lacks the factor.
    pub fn div_monomial(&self, m: &Monomial) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.vars);
        for (k, c) in &self.terms {
            if !m.divides(k) {
                return Err(Error::NotDivisible);
            }
            out.add_term(k.div(m), c.clone());
        }
        Ok(out)
    }

    /// Evaluate at a point (one scalar per variable).
    pub fn eval(&self, point: &[ExactScalar]) -> ExactScalar {
        assert_eq!(point.len(), self.vars, "point arity mismatch");
        let mut acc = ExactScalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= scalar_pow(x, e);
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluate a univariate polynomial at a single scalar.
    pub fn eval1(&self, x: &ExactScalar) -> ExactScalar {
        assert_eq!(self.vars, 1, "eval1 needs a univariate polynomial");
        self.eval(std::slice::from_ref(x))
    }

    /// For univariate p, the composition p(n + delta) expanded as a polynomial.
    pub fn shift_arg(&self, delta: i64) -> MultiPoly {
        assert_eq!(self.vars, 1, "shift_arg needs a univariate polynomial");
        let base = {
            // n + delta
            let mut b = MultiPoly::constant(1, crate::scalar::int(delta));
            b.add_term(Monomial::variable(1, 0), ExactScalar::one());
            b
        };
        let mut out = MultiPoly::zero(1);
        for (m, c) in &self.terms {
            out = out.add(&base.pow(m.0[0]).mul_scalar(c));
        }
        out
    }

    /// Minimum exponent of the (single) variable across terms; zero poly -> 0.
    pub fn valuation1(&self) -> u32 {
        assert_eq!(self.vars, 1);
        self.terms.keys().map(|m| m.0[0]).min().unwrap_or(0)
    }

    /// Render with the default variable names (x, y, z for up to three
    /// variables; x1..xd beyond).
    pub fn to_text(&self) -> String {
        self.to_text_with(&default_var_names(self.vars))
    }

    /// Render with caller-chosen variable names.
    pub fn to_text_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.vars, "one name per variable");
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // Display order: total degree ascending, then earlier variables first.
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            a.total_degree()
                .cmp(&b.total_degree())
                .then_with(|| b.0.cmp(&a.0))
        });
        let mut out = String::new();
        for (pos, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c < &ExactScalar::zero();
            let mag = if neg { -c } else { c.clone() };
            if pos == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_constant() {
                factors.push(format_scalar(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        MultiPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly::neg(self)
    }
}

/// Default variable names: x | x,y | x,y,z | x1..xd.
pub fn default_var_names(vars: usize) -> Vec<String> {
    match vars {
        0 => Vec::new(),
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        d => (1..=d).map(|i| format!("x{i}")).collect(),
    }
}

/// Parse a polynomial given explicit variable names. In addition to the
/// provided names, the canonical names `x1..xd` are always accepted.
///
/// Grammar: a sum of terms; each term is a `*`-joined product of integer or
/// `p/q` coefficients and `name^exp` powers (implicit `*` between adjacent
/// factors is tolerated). No parentheses.
pub fn parse_poly_named(input: &str, names: &[&str]) -> Result<MultiPoly> {
    let vars = names.len();
    let toks = tokenize(input)?;
    let mut p = Parser { toks, pos: 0 };
    let poly = p.parse_sum(vars, names)?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at token {}",
            p.pos + 1
        )));
    }
    Ok(poly)
}

/// Parse with the default variable names for the given arity.
pub fn parse_poly(input: &str, vars: usize) -> Result<MultiPoly> {
    let names = default_var_names(vars);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    parse_poly_named(input, &refs)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                it.next();
            }
            '+' => {
                it.next();
                out.push(Tok::Plus);
            }
            '-' | '\u{2212}' => {
                it.next();
                out.push(Tok::Minus);
            }
            '*' => {
                it.next();
                out.push(Tok::Star);
            }
            '^' => {
                it.next();
                out.push(Tok::Caret);
            }
            '/' => {
                it.next();
                out.push(Tok::Slash);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() => {
                let mut w = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        w.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(w));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character `{other}` in polynomial"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_sum(&mut self, vars: usize, names: &[&str]) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(vars);
        if self.toks.is_empty() {
            return Ok(acc); // empty input is the zero polynomial
        }
        let mut first = true;
        loop {
            let mut sign = 1i32;
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                }
                Some(Tok::Minus) => {
                    self.next();
                    sign = -1;
                }
                None if !first => break,
                None => return Err(Error::Parse("empty polynomial term".into())),
                _ if first => {}
                _ => return Err(Error::Parse("expected `+` or `-` between terms".into())),
            }
            let term = self.parse_term(vars, names)?;
            acc = if sign < 0 {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
            first = false;
            match self.peek() {
                None => break,
                Some(Tok::Plus) | Some(Tok::Minus) => continue,
                Some(t) => {
                    return Err(Error::Parse(format!(
                        "expected `+` or `-` between terms, found {t:?}"
                    )))
                }
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self, vars: usize, names: &[&str]) -> Result<MultiPoly> {
        let mut coeff = ExactScalar::one();
        let mut expo = vec![0u32; vars];
        let mut any = false;
        loop {
            match self.peek() {
                Some(Tok::Num(_)) => {
                    let n = match self.next() {
                        Some(Tok::Num(n)) => n,
                        _ => unreachable!(),
                    };
                    let mut lit = n;
                    if matches!(self.peek(), Some(Tok::Slash)) {
                        self.next();
                        match self.next() {
                            Some(Tok::Num(d)) => {
                                lit.push('/');
                                lit.push_str(&d);
                            }
                            _ => {
                                return Err(Error::Parse(
                                    "expected integer after `/` in coefficient".into(),
                                ))
                            }
                        }
                    }
                    coeff *= parse_scalar(&lit)?;
                    any = true;
                }
                Some(Tok::Ident(_)) => {
                    let name = match self.next() {
                        Some(Tok::Ident(w)) => w,
                        _ => unreachable!(),
                    };
                    let idx = resolve_var(&name, names)?;
                    let e: u32 = if matches!(self.peek(), Some(Tok::Caret)) {
                        self.next();
                        match self.next() {
                            Some(Tok::Num(d)) => d.parse().map_err(|_| {
                                Error::Parse(format!("exponent `{d}` out of range"))
                            })?,
                            _ => {
                                return Err(Error::Parse(
                                    "expected integer exponent after `^`".into(),
                                ))
                            }
                        }
                    } else {
                        1
                    };
                    expo[idx] += e;
                    any = true;
                }
                _ => break,
            }
            // optional explicit `*` between factors
            if matches!(self.peek(), Some(Tok::Star)) {
                self.next();
                // after `*` a factor must follow
                match self.peek() {
                    Some(Tok::Num(_)) | Some(Tok::Ident(_)) => {}
                    _ => return Err(Error::Parse("dangling `*` in term".into())),
                }
            }
        }
        if !any {
            return Err(Error::Parse("empty polynomial term".into()));
        }
        Ok(MultiPoly::monomial(Monomial(expo), coeff))
    }
}

fn resolve_var(name: &str, names: &[&str]) -> Result<usize> {
    if let Some(i) = names.iter().position(|n| *n == name) {
        return Ok(i);
    }
    // canonical x<k> fallback
    if let Some(rest) = name.strip_prefix('x') {
        if let Ok(k) = rest.parse::<usize>() {
            if k >= 1 && k <= names.len() {
                return Ok(k - 1);
            }
        }
    }
    Err(Error::Parse(format!(
        "unknown variable `{name}` (expected one of {names:?} or x1..x{})",
        names.len()
    )))
}
