//! Job files: a JSON object with a ring descriptor and a payload.
//!
//! Every error carries the JSON pointer of the offending value.

use std::fmt;

use pfaffian_core::complexes::{FreeComplex, GradedFreeModule, GradedMap, PresentedModule};
use pfaffian_core::pfaffian::SkewMatrix;
use pfaffian_core::{Error, Field, Polynomial, Ring, TermOrder};
use serde_json::Value;

#[derive(Debug)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let path = if self.path.is_empty() { "/" } else { &self.path };
        write!(f, "{path}: {}", self.message)
    }
}

pub type Parsed<T> = Result<T, InputError>;

fn join(path: &str, key: impl fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{path}/{key}")
}

pub fn field<'a>(v: &'a Value, path: &str, key: &str) -> Parsed<&'a Value> {
    let obj = v.as_object().ok_or_else(|| InputError::new(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| InputError::new(join(path, key), "missing field"))
}

pub fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.as_object().and_then(|o| o.get(key))
}

pub fn int(v: &Value, path: &str) -> Parsed<i64> {
    v.as_i64().ok_or_else(|| InputError::new(path, "expected an integer"))
}

pub fn uint(v: &Value, path: &str) -> Parsed<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| InputError::new(path, "expected a non-negative integer"))
}

fn array<'a>(v: &'a Value, path: &str) -> Parsed<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| InputError::new(path, "expected an array"))
}

pub fn twists(v: &Value, path: &str) -> Parsed<Vec<i64>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| int(x, &join(path, i))).collect()
}

/// The ring descriptor `{"vars": [...], "char": p, "order": "grevlex"}`.
#[derive(Clone, Debug)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub characteristic: u64,
    pub order: TermOrder,
}

impl RingSpec {
    pub fn parse(doc: &Value) -> Parsed<Self> {
        let r = field(doc, "", "ring")?;
        let vars_v = field(r, "/ring", "vars")?;
        let vars = array(vars_v, "/ring/vars")?
            .iter()
            .enumerate()
            .map(|(i, x)| {
                x.as_str().map(str::to_string).ok_or_else(|| InputError::new(join("/ring/vars", i), "expected a string"))
            })
            .collect::<Parsed<Vec<_>>>()?;
        let characteristic = match opt_field(r, "char") {
            None => 0,
            Some(c) => c.as_u64().ok_or_else(|| InputError::new("/ring/char", "expected 0 or a prime"))?,
        };
        let order = match opt_field(r, "order") {
            None => TermOrder::GrevLex,
            Some(o) => match o.as_str() {
                Some("grevlex") => TermOrder::GrevLex,
                Some("deglex") => TermOrder::DegLex,
                Some("lex") => TermOrder::Lex,
                _ => return Err(InputError::new("/ring/order", "expected \"grevlex\", \"deglex\" or \"lex\"")),
            },
        };
        Ok(RingSpec { vars, characteristic, order })
    }

    pub fn build<K: Field>(&self) -> Parsed<Ring<K>> {
        Ring::new(&self.vars, self.order).map_err(|e| InputError::new("/ring/vars", e.to_string()))
    }
}

pub fn poly<K: Field>(ring: &Ring<K>, v: &Value, path: &str) -> Parsed<Polynomial<K>> {
    match v {
        Value::String(s) => ring.parse(s).map_err(|e| InputError::new(path, e.to_string())),
        Value::Number(n) => n
            .as_i64()
            .map(|n| ring.int(n))
            .ok_or_else(|| InputError::new(path, "numeric entries must be integers")),
        _ => Err(InputError::new(path, "expected a polynomial string")),
    }
}

pub fn polys<K: Field>(ring: &Ring<K>, v: &Value, path: &str) -> Parsed<Vec<Polynomial<K>>> {
    array(v, path)?.iter().enumerate().map(|(i, x)| poly(ring, x, &join(path, i))).collect()
}

pub fn matrix<K: Field>(ring: &Ring<K>, v: &Value, path: &str) -> Parsed<Vec<Vec<Polynomial<K>>>> {
    let rows = array(v, path)?;
    let parsed: Vec<Vec<Polynomial<K>>> =
        rows.iter().enumerate().map(|(i, row)| polys(ring, row, &join(path, i))).collect::<Parsed<_>>()?;
    if let Some(first) = parsed.first() {
        if let Some(i) = parsed.iter().position(|r| r.len() != first.len()) {
            return Err(InputError::new(join(path, i), format!("row has {} entries, expected {}", parsed[i].len(), first.len())));
        }
    }
    Ok(parsed)
}

/// Attaches a core error to the pointer it concerns; entry-level errors
/// point into `matrix_path`.
pub fn core_error(e: Error, path: &str, matrix_path: &str) -> InputError {
    match &e {
        Error::DegreeMismatch { row, col, .. } => InputError::new(join(&join(matrix_path, row), col), e.to_string()),
        _ => InputError::new(path, e.to_string()),
    }
}

/// `{"matrix": [...], "twists": [...], "t": int}`.
pub fn skew<K: Field>(ring: &Ring<K>, doc: &Value) -> Parsed<SkewMatrix<K>> {
    let entries = matrix(ring, field(doc, "", "matrix")?, "/matrix")?;
    let e = twists(field(doc, "", "twists")?, "/twists")?;
    let t = int(field(doc, "", "t")?, "/t")?;
    SkewMatrix::new(ring, e, t, entries).map_err(|e| core_error(e, "/matrix", "/matrix"))
}

/// `{"source": [...], "target": [...], "matrix": [...]}`, where the twist
/// lists `(a_j)` stand for `⊕ S(-a_j)`.
pub fn graded_map<K: Field>(ring: &Ring<K>, v: &Value, path: &str) -> Parsed<GradedMap<K>> {
    let source = twists(field(v, path, "source")?, &join(path, "source"))?;
    let target = twists(field(v, path, "target")?, &join(path, "target"))?;
    let mpath = join(path, "matrix");
    let entries = matrix(ring, field(v, path, "matrix")?, &mpath)?;
    GradedMap::new(GradedFreeModule::new(ring, source), GradedFreeModule::new(ring, target), entries)
        .map_err(|e| core_error(e, path, &mpath))
}

/// A complex payload `{"lo": int, "maps": [d_{lo+1}, d_{lo+2}, ...]}`.
/// An inner `Err(k)` reports that `d_k ∘ d_{k+1} ≠ 0`.
pub fn complex<K: Field>(ring: &Ring<K>, doc: &Value) -> Parsed<Result<FreeComplex<K>, i64>> {
    let c = field(doc, "", "complex")?;
    let lo = match opt_field(c, "lo") {
        None => 0,
        Some(v) => int(v, "/complex/lo")?,
    };
    let maps_v = array(field(c, "/complex", "maps")?, "/complex/maps")?;
    let maps = maps_v
        .iter()
        .enumerate()
        .map(|(i, m)| graded_map(ring, m, &join("/complex/maps", i)))
        .collect::<Parsed<Vec<_>>>()?;
    match FreeComplex::new(lo, maps) {
        Ok(c) => Ok(Ok(c)),
        Err(Error::NotAComplex { index }) => Ok(Err(index)),
        Err(e) => Err(InputError::new("/complex/maps", e.to_string())),
    }
}

/// A module payload: `"ideal": [...]` for `S/I`, or `"module"` holding a
/// presentation map onto the generators.
pub fn module<K: Field>(ring: &Ring<K>, doc: &Value) -> Parsed<PresentedModule<K>> {
    if let Some(ideal) = opt_field(doc, "ideal") {
        let gens = polys(ring, ideal, "/ideal")?;
        return PresentedModule::cyclic(ring, &gens).map_err(|e| InputError::new("/ideal", e.to_string()));
    }
    if let Some(m) = opt_field(doc, "module") {
        return Ok(PresentedModule::new(graded_map(ring, m, "/module")?));
    }
    Err(InputError::new("", "expected an \"ideal\" or \"module\" payload"))
}
