use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use super::{Monomial, Ring};
use crate::error::{Error, Result};
use crate::field::Field;

/// Degree report for a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// Sparse polynomial; terms are sorted strictly decreasing in the ring's term
/// order and carry nonzero coefficients.
#[derive(Clone)]
pub struct Polynomial<K> {
    ring: Ring<K>,
    terms: Vec<(Monomial, K)>,
}

impl<K: Field> PartialEq for Polynomial<K> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl<K: Field> Eq for Polynomial<K> {}

impl<K: Field> std::hash::Hash for Polynomial<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<K: Field> Polynomial<K> {
    pub fn zero(ring: &Ring<K>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring<K>, c: K) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn monomial(ring: &Ring<K>, m: Monomial, c: K) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms: duplicates are merged, zero
    /// coefficients dropped, and terms sorted.
    pub fn from_terms(ring: &Ring<K>, terms: Vec<(Monomial, K)>) -> Self {
        let mut acc: FxHashMap<Monomial, K> = FxHashMap::default();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity does not match the ring");
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| b.0.cmp_with(&a.0, order));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, K)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, K)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_value(&self) -> Option<K> {
        match self.terms.as_slice() {
            [] => Some(K::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, K)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&K> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn degree_status(&self) -> DegreeStatus {
        let mut it = self.terms.iter();
        let Some((m, _)) = it.next() else {
            return DegreeStatus::Zero;
        };
        let d = m.degree();
        if it.all(|(m, _)| m.degree() == d) {
            DegreeStatus::Homogeneous(d)
        } else {
            DegreeStatus::Inhomogeneous
        }
    }

    /// Degree of a nonzero homogeneous polynomial; `None` for zero.
    pub fn total_degree(&self) -> Option<std::result::Result<u32, DegreeStatus>> {
        match self.degree_status() {
            DegreeStatus::Zero => None,
            DegreeStatus::Homogeneous(d) => Some(Ok(d)),
            s @ DegreeStatus::Inhomogeneous => Some(Err(s)),
        }
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree_status() != DegreeStatus::Inhomogeneous
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp_with(&b[j].0, order) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        a[i].1.clone() - b[j].1.clone()
                    } else {
                        a[i].1.clone() + b[j].1.clone()
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate_other { -c.clone() } else { c.clone() }));
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.checked_mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.checked_mul_term(m, c);
        }
        let mut acc: FxHashMap<Monomial, K> = FxHashMap::default();
        acc.reserve(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(Error::ExponentOverflow)?;
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| b.0.cmp_with(&a.0, order));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn checked_mul_term(&self, m: &Monomial, c: &K) -> Result<Self> {
        if c.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (t, d) in &self.terms {
            terms.push((t.checked_mul(m).ok_or(Error::ExponentOverflow)?, d.clone() * c.clone()));
        }
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn mul_term(&self, m: &Monomial, c: &K) -> Self {
        self.checked_mul_term(m, c).expect("exponent overflow")
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, d)| (m.clone(), d.clone() * c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        assert!(self.ring == d.ring, "ring mismatch");
        let (dm, dc) = d.lead()?;
        let dc_inv = dc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = c * dc_inv.clone();
            rem = rem.merge(&d.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Substitute `images[i]` for `x_i`.
    pub fn substitute(&self, images: &[Polynomial<K>]) -> Polynomial<K> {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images.first().map(|p| p.ring.clone()).unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(&target);
        let mut cache: Vec<Vec<Polynomial<K>>> = images.iter().map(|p| vec![target.one(), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluate at a point of `K^{N+1}`.
    pub fn evaluate(&self, point: &[K]) -> K {
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    v *= x.clone();
                }
            }
            acc += v;
        }
        acc
    }

    /// Same terms over another ring with the same variables.
    pub fn rebase(&self, ring: &Ring<K>) -> Self {
        assert_eq!(ring.nvars(), self.ring.nvars());
        Self::from_terms(ring, self.terms.clone())
    }
}

impl<K: Field> Add for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: Self) -> Polynomial<K> {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<K: Field> Sub for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: Self) -> Polynomial<K> {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<K: Field> Mul for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: Self) -> Polynomial<K> {
        self.checked_mul(rhs).expect("ring mismatch or exponent overflow")
    }
}

impl<K: Field> Neg for &Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl<K: Field> Add for Polynomial<K> {
    type Output = Polynomial<K>;
    fn add(self, rhs: Self) -> Polynomial<K> {
        &self + &rhs
    }
}

impl<K: Field> Sub for Polynomial<K> {
    type Output = Polynomial<K>;
    fn sub(self, rhs: Self) -> Polynomial<K> {
        &self - &rhs
    }
}

impl<K: Field> Mul for Polynomial<K> {
    type Output = Polynomial<K>;
    fn mul(self, rhs: Self) -> Polynomial<K> {
        &self * &rhs
    }
}

impl<K: Field> Neg for Polynomial<K> {
    type Output = Polynomial<K>;
    fn neg(self) -> Polynomial<K> {
        -&self
    }
}

impl<K: Field> fmt::Display for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                m.fmt_with(self.ring.vars(), f)?;
            }
        }
        Ok(())
    }
}

impl<K: Field> fmt::Debug for Polynomial<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn additive_inverse_is_zero() {
        let r = Ring::<Q>::from_names("x,y");
        let x = r.var(0);
        assert!((&x + &(-&x)).is_zero());
        assert_eq!((&x + &(-&x)).to_string(), "0");
    }

    #[test]
    fn difference_of_squares() {
        let r = Ring::<Q>::from_names("x,y");
        let (x, y) = (r.var(0), r.var(1));
        let prod = &(&x + &y) * &(&x - &y);
        assert_eq!(prod, r.p("x^2 - y^2"));
        assert_eq!(prod.degree_status(), DegreeStatus::Homogeneous(2));
    }

    #[test]
    fn characteristic_two_cancels() {
        let r = Ring::<Fp<2>>::from_names("x,y");
        let x = r.var(0);
        assert!((&x + &x).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r = Ring::<Q>::from_names("x,y");
        let s = Ring::<Q>::from_names("x,z");
        assert_eq!(r.var(0).checked_add(&s.var(0)), Err(Error::RingMismatch));
    }

    #[test]
    fn degrees() {
        let r = Ring::<Q>::from_names("x,y");
        assert_eq!(r.p("x^2*y").total_degree(), Some(Ok(3)));
        assert_eq!(r.zero().total_degree(), None);
        assert_eq!(r.p("x + x^2").total_degree(), Some(Err(DegreeStatus::Inhomogeneous)));
    }

    #[test]
    fn exact_division() {
        let r = Ring::<Q>::from_names("x,y,z");
        let a = r.p("x^2 - y*z");
        let b = r.p("x*y + z^2 - 3*x*z");
        let ab = &a * &b;
        assert_eq!(ab.exact_div(&a), Some(b.clone()));
        assert_eq!(ab.exact_div(&b), Some(a));
        assert_eq!(r.p("x^2 + y").exact_div(&r.p("x")), None);
    }

    #[test]
    fn substitution() {
        let r = Ring::<Q>::from_names("x,y");
        let f = r.p("x^2 + x*y");
        let g = f.substitute(&[r.p("x + y"), r.p("y")]);
        assert_eq!(g, r.p("x^2 + 3*x*y + 2*y^2"));
    }
}
