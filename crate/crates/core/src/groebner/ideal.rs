use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Polynomial, Ring};

use super::{buchberger, GroebnerBasis, HilbertSeries};

/// Krull dimension of `S/I` and codimension of `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Dimension {
    pub dim: usize,
    pub codim: usize,
}

/// A homogeneous ideal with a lazily computed Gröbner basis.
pub struct Ideal<K> {
    ring: Ring<K>,
    gens: Vec<Polynomial<K>>,
    gb: OnceLock<GroebnerBasis<K>>,
}

impl<K: Field> Clone for Ideal<K> {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb: self.gb.clone() }
    }
}

impl<K: Field> fmt::Debug for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for Ideal<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<K: Field> Ideal<K> {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring<K>, gens: Vec<Polynomial<K>>) -> Result<Self> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    pub fn parse(ring: &Ring<K>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<K>] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis<K> {
        self.gb.get_or_init(|| buchberger(&self.ring, &self.gens).expect("generators checked homogeneous"))
    }

    pub fn contains(&self, f: &Polynomial<K>) -> bool {
        self.groebner().contains_poly(f)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal<K>) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality checked by membership in both directions.
    pub fn same_ideal(&self, other: &Ideal<K>) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().polys().iter().any(|p| p.constant_value().is_some())
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        self.groebner().quotient_hilbert_series()
    }

    /// Dimension of `S/I`; the unit ideal is reported as an empty scheme.
    pub fn dimension(&self) -> Result<Dimension> {
        let n = self.ring.nvars();
        match self.hilbert_series().dimension() {
            None => Err(Error::EmptyScheme),
            Some(dim) => Ok(Dimension { dim, codim: n - dim }),
        }
    }
}
