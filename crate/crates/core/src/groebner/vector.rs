use std::cmp::Ordering;

use crate::field::Field;
use crate::ring::{Monomial, Polynomial, Ring, TermOrder};

/// How components are compared against monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scheme {
    /// Weighted degree, then monomial, then position.
    #[default]
    TermOverPosition,
    /// Position, then monomial.
    PositionOverTerm,
}

/// A monomial order on a graded free module `⊕ S(-w_i)`.
///
/// Components are grouped into blocks; every term in block `b` is larger
/// than every term in a block `b' > b`. Inside a block terms are compared
/// according to `scheme`, lower component index winning ties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub term_order: TermOrder,
    pub weights: Vec<i64>,
    pub blocks: Vec<u8>,
    pub scheme: Scheme,
}

impl ModuleOrder {
    pub fn new(term_order: TermOrder, weights: Vec<i64>) -> Self {
        let blocks = vec![0; weights.len()];
        ModuleOrder { term_order, weights, blocks, scheme: Scheme::default() }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        let (ca, ma) = (a.0 as usize, a.1);
        let (cb, mb) = (b.0 as usize, b.1);
        let block = self.blocks[cb].cmp(&self.blocks[ca]);
        if block != Ordering::Equal {
            return block;
        }
        match self.scheme {
            Scheme::TermOverPosition => {
                let da = ma.degree() as i64 + self.weights[ca];
                let db = mb.degree() as i64 + self.weights[cb];
                da.cmp(&db)
                    .then_with(|| ma.cmp_with(mb, self.term_order))
                    .then_with(|| cb.cmp(&ca))
            }
            Scheme::PositionOverTerm => cb.cmp(&ca).then_with(|| ma.cmp_with(mb, self.term_order)),
        }
    }
}

/// A sparse element of a free module: terms `(component, monomial, coeff)`
/// sorted decreasingly with respect to some [`ModuleOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<K> {
    pub(crate) terms: Vec<(u32, Monomial, K)>,
}

impl<K: Field> Vector<K> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<(u32, Monomial, K)>, order: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| order.cmp((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<(u32, Monomial, K)> = Vec::with_capacity(terms.len());
        for (c, m, k) in terms {
            match out.last_mut() {
                Some(last) if last.0 == c && last.1 == m => last.2 += k,
                _ => out.push((c, m, k)),
            }
        }
        out.retain(|t| !t.2.is_zero());
        Vector { terms: out }
    }

    /// Column vector of polynomials.
    pub fn from_polys(entries: &[Polynomial<K>], order: &ModuleOrder) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((i as u32, m.clone(), c.clone()));
            }
        }
        Self::from_terms(terms, order)
    }

    /// Column vector placed at an offset in a larger free module.
    pub fn from_polys_at(entries: &[Polynomial<K>], offset: usize, order: &ModuleOrder) -> Self {
        let mut terms = Vec::new();
        for (i, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push(((i + offset) as u32, m.clone(), c.clone()));
            }
        }
        Self::from_terms(terms, order)
    }

    pub fn to_polys(&self, ring: &Ring<K>, rank: usize) -> Vec<Polynomial<K>> {
        self.to_polys_range(ring, 0, rank)
    }

    /// Entries for components `start..start + len`.
    pub fn to_polys_range(&self, ring: &Ring<K>, start: usize, len: usize) -> Vec<Polynomial<K>> {
        let mut buckets: Vec<Vec<(Monomial, K)>> = vec![Vec::new(); len];
        for (c, m, k) in &self.terms {
            let c = *c as usize;
            if c >= start && c < start + len {
                buckets[c - start].push((m.clone(), k.clone()));
            }
        }
        buckets.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u32, Monomial, K)] {
        &self.terms
    }

    pub fn lead(&self) -> Option<&(u32, Monomial, K)> {
        self.terms.first()
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self, order: &ModuleOrder) -> Option<i64> {
        self.lead().map(|(c, m, _)| m.degree() as i64 + order.weights[*c as usize])
    }

    pub fn is_homogeneous(&self, order: &ModuleOrder) -> bool {
        match self.degree(order) {
            None => true,
            Some(d) => self.terms.iter().all(|(c, m, _)| m.degree() as i64 + order.weights[*c as usize] == d),
        }
    }

    pub fn monic(mut self) -> Self {
        if let Some(lc) = self.terms.first().map(|t| t.2.clone()) {
            if !lc.is_one() {
                let inv = lc.inv().expect("nonzero");
                for t in &mut self.terms {
                    t.2 *= inv.clone();
                }
            }
        }
        self
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Vector { terms: self.terms.iter().map(|(i, m, k)| (*i, m.clone(), k.clone() * c.clone())).collect() }
    }

    /// `self - c * m * other`, where the product is assumed to fit the order.
    pub fn sub_mul(&self, other: &Self, m: &Monomial, c: &K, order: &ModuleOrder) -> Self {
        sub_mul_slices(&self.terms, &other.terms, m, c, order)
    }

    pub fn add(&self, other: &Self, order: &ModuleOrder) -> Self {
        let minus_one = -K::one();
        sub_mul_slices(&self.terms, &other.terms, &Monomial::one(self.nvars_hint(other)), &minus_one, order)
    }

    fn nvars_hint(&self, other: &Self) -> usize {
        self.terms.first().or(other.terms.first()).map(|t| t.1.nvars()).unwrap_or(0)
    }

    /// Restrict to components in `start..end`, renumbered from zero.
    pub fn project(&self, start: usize, end: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(c, _, _)| (*c as usize) >= start && (*c as usize) < end)
            .map(|(c, m, k)| (*c - start as u32, m.clone(), k.clone()))
            .collect();
        Vector { terms }
    }
}

/// Merge `a - c * m * b` (both slices sorted decreasingly).
pub(crate) fn sub_mul_slices<K: Field>(
    a: &[(u32, Monomial, K)],
    b: &[(u32, Monomial, K)],
    m: &Monomial,
    c: &K,
    order: &ModuleOrder,
) -> Vector<K> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(comp, mono, k)| (*comp, mono.mul(m), k.clone() * c.clone())).peekable();
    while i < a.len() {
        let Some(next) = bi.peek() else { break };
        match order.cmp((a[i].0, &a[i].1), (next.0, &next.1)) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (comp, mono, k) = bi.next().expect("peeked");
                out.push((comp, mono, -k));
            }
            Ordering::Equal => {
                let (comp, mono, k) = bi.next().expect("peeked");
                let v = a[i].2.clone() - k;
                if !v.is_zero() {
                    out.push((comp, mono, v));
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bi.map(|(comp, mono, k)| (comp, mono, -k)));
    Vector { terms: out }
}
