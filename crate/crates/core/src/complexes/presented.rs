use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{image_and_syzygies, module_groebner, GroebnerBasis, HilbertSeries};
use crate::ring::{Polynomial, Ring};

use super::{GradedFreeModule, GradedMap};

/// The graded module `coker(P: F_1 → F_0)`.
pub struct PresentedModule<K> {
    presentation: GradedMap<K>,
    gb: OnceLock<GroebnerBasis<K>>,
}

impl<K: Field> Clone for PresentedModule<K> {
    fn clone(&self) -> Self {
        PresentedModule { presentation: self.presentation.clone(), gb: self.gb.clone() }
    }
}

impl<K: Field> fmt::Debug for PresentedModule<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker {}", self.presentation)
    }
}

impl<K: Field> PresentedModule<K> {
    pub fn new(presentation: GradedMap<K>) -> Self {
        PresentedModule { presentation, gb: OnceLock::new() }
    }

    /// The free module itself.
    pub fn free(module: GradedFreeModule<K>) -> Self {
        let ring = module.ring().clone();
        Self::new(GradedMap::zero(GradedFreeModule::zero(&ring), module))
    }

    /// `S/I` for homogeneous generators of `I`.
    pub fn cyclic(ring: &Ring<K>, gens: &[Polynomial<K>]) -> Result<Self> {
        let target = GradedFreeModule::new(ring, vec![0]);
        let mut twists = Vec::with_capacity(gens.len());
        for g in gens {
            match g.total_degree() {
                None => twists.push(0),
                Some(Ok(d)) => twists.push(d as i64),
                Some(Err(_)) => return Err(Error::Inhomogeneous(g.to_string())),
            }
        }
        let map = GradedMap::new(GradedFreeModule::new(ring, twists), target, vec![gens.to_vec()])?;
        Ok(Self::new(map))
    }

    /// The residue field `S/𝔪`, generated in degree `d`.
    pub fn residue_field(ring: &Ring<K>, d: i64) -> Self {
        let map = GradedMap::new(
            GradedFreeModule::new(ring, vec![d + 1; ring.nvars()]),
            GradedFreeModule::new(ring, vec![d]),
            vec![ring.gens()],
        )
        .expect("variables are linear");
        Self::new(map)
    }

    pub fn ring(&self) -> &Ring<K> {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &GradedMap<K> {
        &self.presentation
    }

    /// The free module of generators, `F_0`.
    pub fn generators(&self) -> &GradedFreeModule<K> {
        self.presentation.target()
    }

    pub fn groebner(&self) -> &GroebnerBasis<K> {
        self.gb.get_or_init(|| module_groebner(&self.presentation).expect("presentation maps are homogeneous"))
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        self.groebner().quotient_hilbert_series()
    }

    /// `dim_k M_t`.
    pub fn hilbert_function(&self, t: i64) -> u64 {
        self.hilbert_series().value(t) as u64
    }

    /// Krull dimension, `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        self.hilbert_series().dimension()
    }

    pub fn is_zero(&self) -> bool {
        self.hilbert_series().is_zero()
    }

    pub fn is_finite_length(&self) -> bool {
        matches!(self.dimension(), None | Some(0))
    }

    /// `M(t)`, so that `M(t)_d = M_{t+d}`.
    pub fn twist(&self, t: i64) -> Self {
        Self::new(self.presentation.twist(-t))
    }

    /// An isomorphic presentation with minimally many generators and relations.
    pub fn pruned(&self) -> Self {
        let mut p = self.presentation.clone();
        while let Some((i, j)) = p.find_unit() {
            p = split_unit(&p, i, j);
        }
        let (cols, _) = image_and_syzygies(&p);
        Self::new(p.select_columns(&cols))
    }
}

/// Removes generator `i` of the target and relation `j` of the source, where
/// entry `(i, j)` is a unit, adjusting the remaining entries.
pub(crate) fn split_unit<K: Field>(p: &GradedMap<K>, i: usize, j: usize) -> GradedMap<K> {
    let u = p.entry(i, j).constant_value().expect("unit entry");
    let uinv = u.inv().expect("nonzero");
    let rows: Vec<usize> = (0..p.nrows()).filter(|&r| r != i).collect();
    let cols: Vec<usize> = (0..p.ncols()).filter(|&c| c != j).collect();
    let entries = rows
        .iter()
        .map(|&r| {
            let f = p.entry(r, j).scale(&uinv);
            cols.iter()
                .map(|&c| {
                    let pic = p.entry(i, c);
                    if f.is_zero() || pic.is_zero() {
                        p.entry(r, c).clone()
                    } else {
                        p.entry(r, c) - &(&f * pic)
                    }
                })
                .collect()
        })
        .collect();
    let source = GradedFreeModule::new(p.ring(), cols.iter().map(|&c| p.source().twists()[c]).collect());
    let target = GradedFreeModule::new(p.ring(), rows.iter().map(|&r| p.target().twists()[r]).collect());
    GradedMap::new_unchecked(source, target, entries)
}
