//! Graded polynomial rings `k[x_0, ..., x_N]` and their elements.

mod monomial;
mod parse;
mod poly;

use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

pub use monomial::{Monomial, TermOrder};
pub use poly::{DegreeStatus, Polynomial};

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    order: TermOrder,
}

/// A polynomial ring over the field `K`. Cheap to clone; equality compares
/// variable names and term order.
pub struct Ring<K> {
    data: Arc<RingData>,
    _field: PhantomData<fn() -> K>,
}

impl<K> Clone for Ring<K> {
    fn clone(&self) -> Self {
        Ring { data: Arc::clone(&self.data), _field: PhantomData }
    }
}

impl<K> PartialEq for Ring<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl<K> Eq for Ring<K> {}

impl<K: Field> fmt::Debug for Ring<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match K::CHARACTERISTIC {
            0 => "QQ".to_string(),
            p => format!("GF({p})"),
        };
        write!(f, "{}[{}] ({:?})", field, self.data.vars.join(","), self.data.order)
    }
}

impl<K: Field> Ring<K> {
    pub fn new<S: AsRef<str>>(vars: &[S], order: TermOrder) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring { data: Arc::new(RingData { vars, order }), _field: PhantomData })
    }

    /// `k[x0, ..., x{n-1}]` in grevlex.
    pub fn with_vars(n: usize) -> Self {
        let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        Self::new(&vars, TermOrder::GrevLex).expect("generated names are valid")
    }

    pub fn from_names(names: &str) -> Self {
        let vars: Vec<&str> = names.split(',').map(str::trim).collect();
        Self::new(&vars, TermOrder::GrevLex).expect("invalid variable list")
    }

    pub fn nvars(&self) -> usize {
        self.data.vars.len()
    }

    /// `N` such that this is the homogeneous coordinate ring of `P^N`.
    pub fn projective_dim(&self) -> usize {
        self.nvars() - 1
    }

    pub fn vars(&self) -> &[String] {
        &self.data.vars
    }

    pub fn order(&self) -> TermOrder {
        self.data.order
    }

    pub fn characteristic(&self) -> u64 {
        K::CHARACTERISTIC
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.data.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> Polynomial<K> {
        Polynomial::zero(self)
    }

    pub fn one(&self) -> Polynomial<K> {
        Polynomial::constant(self, K::one())
    }

    pub fn constant(&self, c: K) -> Polynomial<K> {
        Polynomial::constant(self, c)
    }

    pub fn int(&self, n: i64) -> Polynomial<K> {
        Polynomial::constant(self, K::from_i64(n))
    }

    pub fn var(&self, i: usize) -> Polynomial<K> {
        Polynomial::from_terms(self, vec![(Monomial::var(self.nvars(), i), K::one())])
    }

    pub fn gens(&self) -> Vec<Polynomial<K>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<K>> {
        parse::parse_poly(text, self)
    }

    /// Parse, panicking on error. Meant for tests and literals.
    pub fn p(&self, text: &str) -> Polynomial<K> {
        self.parse(text).unwrap_or_else(|e| panic!("bad polynomial literal {text:?}: {e}"))
    }

    /// Number of monomials of degree `d`, i.e. `dim_k S_d`.
    pub fn monomial_count(&self, d: i64) -> u64 {
        if d < 0 {
            0
        } else {
            binomial_u64(d as u64 + self.nvars() as u64 - 1, self.nvars() as u64 - 1)
        }
    }

    /// All monomials of total degree `d`, in decreasing term order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let n = self.nvars();
        let mut out = Vec::new();
        let mut cur = vec![0u16; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
            if i + 1 == cur.len() {
                cur[i] = left as u16;
                out.push(Monomial::from_exponents(cur));
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e as u16;
                rec(i + 1, left - e, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        let order = self.order();
        out.sort_by(|a, b| b.cmp_with(a, order));
        out
    }
}

pub(crate) fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
