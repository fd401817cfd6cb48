//! JSON interchange for every externally visible object: scalars as exact
//! integer or `p/q` strings (never floats), polynomials as text, and the
//! structured inputs (prefixes, recurrences, semilinear sets, linear
//! systems). Syntax errors carry serde's line/column; semantic errors name
//! the offending field.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::poly::{parse_poly, parse_poly_named, MultiPoly};
use crate::precursive::{MultiCoeffRecurrence, UniPRecurrence};
use crate::prefix::DensePrefix;
use crate::ratfunc::RationalGF;
use crate::scalar::{format_scalar, parse_scalar, ExactScalar};
use crate::semilinear::{LinearSet, SemilinearSet};
use crate::varieties::{LinearSystem, Relation, SysRow};

/// Parse a JSON document, reporting syntax errors with line and column.
pub fn parse_json(text: &str) -> Result<Value> {
    // serde's message already ends with "at line L column C"
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field `{name}`")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array")))
}

fn as_str<'a>(v: &'a Value, what: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::Parse(format!("{what}: expected a string")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("{what}: expected a nonnegative integer")))
}

fn as_i64(v: &Value, what: &str) -> Result<i64> {
    v.as_i64()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an integer")))
}

fn usize_vec(v: &Value, what: &str) -> Result<Vec<usize>> {
    as_array(v, what)?
        .iter()
        .map(|x| as_usize(x, what))
        .collect()
}

/// Accepts `"p/q"`, `"n"`, or a plain JSON integer.
pub fn scalar_from_value(v: &Value) -> Result<ExactScalar> {
    match v {
        Value::String(s) => parse_scalar(s),
        Value::Number(n) => {
            let i = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("non-integer number {n}")))?;
            Ok(crate::scalar::int(i))
        }
        other => Err(Error::Parse(format!("expected a scalar, got {other}"))),
    }
}

pub fn scalar_to_value(x: &ExactScalar) -> Value {
    Value::String(format_scalar(x))
}

pub fn scalar_seq_from_value(v: &Value) -> Result<Vec<ExactScalar>> {
    as_array(v, "sequence")?.iter().map(scalar_from_value).collect()
}

pub fn scalar_seq_to_value(seq: &[ExactScalar]) -> Value {
    Value::Array(seq.iter().map(scalar_to_value).collect())
}

/// `{"dims": [...], "data": ["1", "2/3", ...], "valid": [...]?}` with data in
/// row-major order (last axis fastest).
pub fn prefix_from_value(v: &Value) -> Result<DensePrefix> {
    let dims = usize_vec(field(v, "dims")?, "dims")?;
    let data = scalar_seq_from_value(field(v, "data")?)?;
    let mut p = DensePrefix::from_data(&dims, data)?;
    if let Some(valid) = v.get("valid") {
        let valid = usize_vec(valid, "valid")?;
        if valid.len() != dims.len() || valid.iter().zip(&dims).any(|(&v, &d)| v > d) {
            return Err(Error::Parse(
                "valid: must give one bound per axis, each within dims".into(),
            ));
        }
        p.restrict_valid(&valid);
    }
    Ok(p)
}

pub fn prefix_to_value(p: &DensePrefix) -> Value {
    json!({
        "dims": p.dims(),
        "valid": p.valid(),
        "data": scalar_seq_to_value(p.data()),
    })
}

/// `{"shifts": [0, 1], "coeffs": ["-1", "n + 1"], "valid_from": 0?}` —
/// coefficient polynomials in the variable `n`, paired with shifts.
pub fn unirec_from_value(v: &Value) -> Result<UniPRecurrence> {
    let shifts = usize_vec(field(v, "shifts")?, "shifts")?;
    let coeffs = as_array(field(v, "coeffs")?, "coeffs")?;
    if shifts.len() != coeffs.len() {
        return Err(Error::Parse(
            "shifts and coeffs must have the same length".into(),
        ));
    }
    let mut terms = Vec::with_capacity(shifts.len());
    for (a, c) in shifts.iter().zip(coeffs) {
        let poly = parse_poly_named(as_str(c, "coeffs entry")?, &["n"])?;
        terms.push((*a, poly));
    }
    let valid_from = match v.get("valid_from") {
        Some(x) => as_usize(x, "valid_from")?,
        None => 0,
    };
    UniPRecurrence::new(terms, valid_from)
}

pub fn unirec_to_value(rec: &UniPRecurrence) -> Value {
    json!({
        "shifts": rec.terms().iter().map(|(a, _)| *a).collect::<Vec<_>>(),
        "coeffs": rec
            .terms()
            .iter()
            .map(|(_, p)| Value::String(p.to_text_with(&["n".to_string()])))
            .collect::<Vec<_>>(),
        "valid_from": rec.valid_from(),
    })
}

/// `{"window": 1, "entries": [{"offset": [0, 0], "q": "t - 1"}, ...]}` —
/// offsets are lattice vectors, coefficients are polynomials in `t`.
pub fn multirec_from_value(v: &Value) -> Result<MultiCoeffRecurrence> {
    let window = as_usize(field(v, "window")?, "window")?;
    let entries_json = as_array(field(v, "entries")?, "entries")?;
    if entries_json.is_empty() {
        return Err(Error::Parse("entries: must be nonempty".into()));
    }
    let mut entries = Vec::with_capacity(entries_json.len());
    let mut vars = None;
    for e in entries_json {
        let offset_json = as_array(field(e, "offset")?, "offset")?;
        let offset: Vec<i64> = offset_json
            .iter()
            .map(|x| as_i64(x, "offset entry"))
            .collect::<Result<_>>()?;
        let v = *vars.get_or_insert(offset.len());
        if offset.len() != v {
            return Err(Error::Parse("offset: inconsistent arity".into()));
        }
        let q = parse_poly_named(as_str(field(e, "q")?, "q")?, &["t"])?;
        entries.push((offset, q));
    }
    MultiCoeffRecurrence::new(vars.unwrap(), window, entries)
}

pub fn multirec_to_value(rec: &MultiCoeffRecurrence) -> Value {
    json!({
        "window": rec.window(),
        "entries": rec
            .entries()
            .map(|(a, q)| {
                json!({
                    "offset": a,
                    "q": Value::String(q.to_text_with(&["t".to_string()])),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// `{"finite": [[0, 3], ...], "parts": [{"base": [1, 1], "periods": [[1, 1]]}]}`
pub fn semilinear_from_value(v: &Value) -> Result<SemilinearSet> {
    let finite: Vec<Vec<usize>> = match v.get("finite") {
        Some(f) => as_array(f, "finite")?
            .iter()
            .map(|p| usize_vec(p, "finite point"))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };
    let mut parts = Vec::new();
    if let Some(ps) = v.get("parts") {
        for p in as_array(ps, "parts")? {
            let base = usize_vec(field(p, "base")?, "base")?;
            let periods: Vec<Vec<usize>> = as_array(field(p, "periods")?, "periods")?
                .iter()
                .map(|q| usize_vec(q, "period"))
                .collect::<Result<_>>()?;
            parts.push(LinearSet::new(base, periods)?);
        }
    }
    SemilinearSet::new(finite, parts)
}

pub fn semilinear_to_value(s: &SemilinearSet) -> Value {
    json!({
        "finite": s.finite().iter().cloned().collect::<Vec<_>>(),
        "parts": s
            .parts()
            .iter()
            .map(|l| json!({"base": l.base(), "periods": l.periods()}))
            .collect::<Vec<_>>(),
    })
}

/// `{"vars": 2, "rows": [{"coeffs": [1, -1], "rel": "eq", "offset": 0}]}`
pub fn linsys_from_value(v: &Value) -> Result<LinearSystem> {
    let vars = as_usize(field(v, "vars")?, "vars")?;
    let mut rows = Vec::new();
    if let Some(rs) = v.get("rows") {
        for r in as_array(rs, "rows")? {
            let coeffs: Vec<i64> = as_array(field(r, "coeffs")?, "coeffs")?
                .iter()
                .map(|x| as_i64(x, "coeffs entry"))
                .collect::<Result<_>>()?;
            let rel = match as_str(field(r, "rel")?, "rel")? {
                "eq" => Relation::Eq,
                "ge" => Relation::Ge,
                other => {
                    return Err(Error::Parse(format!(
                        "rel: expected \"eq\" or \"ge\", got \"{other}\""
                    )))
                }
            };
            let offset = match r.get("offset") {
                Some(x) => as_i64(x, "offset")?,
                None => 0,
            };
            rows.push(SysRow { coeffs, rel, offset });
        }
    }
    LinearSystem::new(vars, rows)
}

pub fn linsys_to_value(sys: &LinearSystem) -> Value {
    json!({
        "vars": sys.vars(),
        "rows": sys
            .rows()
            .iter()
            .map(|r| {
                json!({
                    "coeffs": r.coeffs,
                    "rel": match r.rel { Relation::Eq => "eq", Relation::Ge => "ge" },
                    "offset": r.offset,
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// `{"num": "1", "den": "1 - x*y", "vars": 2}` — polynomial text in the
/// default variable names for the arity.
pub fn gf_from_value(v: &Value) -> Result<RationalGF> {
    let vars = as_usize(field(v, "vars")?, "vars")?;
    let num = parse_poly(as_str(field(v, "num")?, "num")?, vars)?;
    let den = parse_poly(as_str(field(v, "den")?, "den")?, vars)?;
    RationalGF::new(num, den)
}

pub fn gf_to_value(gf: &RationalGF) -> Value {
    json!({
        "vars": gf.vars(),
        "num": gf.num().to_text(),
        "den": gf.den().to_text(),
        "text": gf.to_text(),
    })
}

pub fn poly_to_value(p: &MultiPoly) -> Value {
    Value::String(p.to_text())
}

/// Stable key order for rendered objects (serde_json with preserve_order off
/// sorts maps, which is already deterministic; this helper documents intent
/// for hand-built reports).
pub fn sorted_object(pairs: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in pairs {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn scalar_round_trip() {
        for s in [int(0), int(-7), frac(2, 3), frac(-9, 4)] {
            let v = scalar_to_value(&s);
            assert_eq!(scalar_from_value(&v).unwrap(), s);
        }
        assert_eq!(scalar_from_value(&json!(5)).unwrap(), int(5));
        assert!(scalar_from_value(&json!(1.5)).is_err());
        assert!(scalar_from_value(&json!("1.5")).is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_json("{\n  \"dims\": [2,\n}").unwrap_err();
        let Error::Parse(msg) = err else {
            panic!("expected a parse error");
        };
        assert!(msg.contains("line 3"), "{msg}");
    }

    #[test]
    fn prefix_round_trip() {
        let p = DensePrefix::from_fn(&[2, 3], |i| int((i[0] * 3 + i[1]) as i64));
        let v = prefix_to_value(&p);
        assert_eq!(prefix_from_value(&v).unwrap(), p);
        // explicit valid region survives
        let mut q = p.clone();
        q.restrict_valid(&[2, 2]);
        let v = prefix_to_value(&q);
        assert_eq!(prefix_from_value(&v).unwrap().valid(), &[2, 2]);
    }

    #[test]
    fn prefix_rejects_bad_shapes() {
        assert!(prefix_from_value(&json!({"dims": [2], "data": ["1"]})).is_err());
        assert!(prefix_from_value(&json!({
            "dims": [2], "data": ["1", "2"], "valid": [3]
        }))
        .is_err());
        assert!(prefix_from_value(&json!({"data": ["1"]})).is_err());
    }

    #[test]
    fn unirec_round_trip() {
        let v = json!({
            "shifts": [0, 1],
            "coeffs": ["-1", "n + 1"],
            "valid_from": 0,
        });
        let rec = unirec_from_value(&v).unwrap();
        assert_eq!(rec.max_shift(), 1);
        let back = unirec_to_value(&rec);
        assert_eq!(unirec_from_value(&back).unwrap(), rec);
    }

    #[test]
    fn multirec_round_trip() {
        let v = json!({
            "window": 1,
            "entries": [
                {"offset": [0, 0], "q": "1"},
                {"offset": [1, 1], "q": "-1"},
            ],
        });
        let rec = multirec_from_value(&v).unwrap();
        assert_eq!(rec.vars(), 2);
        assert_eq!(rec.window(), 1);
        let back = multirec_to_value(&rec);
        assert_eq!(multirec_from_value(&back).unwrap(), rec);
        // inconsistent offset arity
        let bad = json!({
            "window": 1,
            "entries": [
                {"offset": [0, 0], "q": "1"},
                {"offset": [1], "q": "-1"},
            ],
        });
        assert!(multirec_from_value(&bad).is_err());
    }

    #[test]
    fn semilinear_round_trip() {
        let v = json!({
            "finite": [[0, 3]],
            "parts": [{"base": [1, 1], "periods": [[1, 1], [2, 0]]}],
        });
        let s = semilinear_from_value(&v).unwrap();
        assert_eq!(s.finite().len(), 1);
        assert_eq!(s.parts().len(), 1);
        let back = semilinear_to_value(&s);
        assert_eq!(semilinear_from_value(&back).unwrap(), s);
    }

    #[test]
    fn linsys_round_trip() {
        let v = json!({
            "vars": 3,
            "rows": [
                {"coeffs": [1, 1, -1], "rel": "eq", "offset": 0},
                {"coeffs": [1, 0, 0], "rel": "ge", "offset": -2},
            ],
        });
        let sys = linsys_from_value(&v).unwrap();
        assert_eq!(sys.vars(), 3);
        assert!(sys.contains(&[2, 1, 3]));
        assert!(!sys.contains(&[1, 1, 3]));
        let back = linsys_to_value(&sys);
        assert_eq!(linsys_from_value(&back).unwrap(), sys);
        // unknown relation tag
        let bad = json!({
            "vars": 1,
            "rows": [{"coeffs": [1], "rel": "le", "offset": 0}],
        });
        assert!(linsys_from_value(&bad).is_err());
    }

    #[test]
    fn gf_round_trip() {
        let v = json!({"vars": 2, "num": "1", "den": "1 - x*y"});
        let gf = gf_from_value(&v).unwrap();
        assert_eq!(gf.to_text(), "1 / (1 - x*y)");
        let back = gf_to_value(&gf);
        assert_eq!(gf_from_value(&back).unwrap(), gf);
    }
}
