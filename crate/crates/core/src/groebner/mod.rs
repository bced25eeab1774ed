//! Gröbner bases of homogeneous ideals and graded submodules, with normal
//! forms, syzygies, a lifting solver and Hilbert series.

mod engine;
mod hilbert;
mod ideal;
mod module;
mod vector;

use crate::complexes::{GradedFreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Monomial, Polynomial, Ring};

use engine::Engine;

pub use hilbert::HilbertSeries;
pub use ideal::{Dimension, Ideal};
pub use module::{lift_solve, minimal_generators, syzygies, LiftSolver};
pub use vector::{ModuleOrder, Scheme, Vector};

pub(crate) use module::image_and_syzygies;

/// A reduced Gröbner basis of a graded submodule of a free module (an ideal
/// when the rank is one).
#[derive(Clone)]
pub struct GroebnerBasis<K> {
    ring: Ring<K>,
    engine: Engine<K>,
}

impl<K: Field> GroebnerBasis<K> {
    pub(crate) fn compute(ring: &Ring<K>, order: ModuleOrder, inputs: &[Vector<K>]) -> Result<Self> {
        for v in inputs {
            if !v.is_homogeneous(&order) {
                return Err(Error::Inhomogeneous(format!("{} terms", v.len())));
            }
        }
        let mut engine = Engine::new(order);
        engine.run(inputs);
        engine.interreduce();
        Ok(GroebnerBasis { ring: ring.clone(), engine })
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.engine.order
    }

    pub fn rank(&self) -> usize {
        self.engine.order.rank()
    }

    pub fn len(&self) -> usize {
        self.engine.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.engine.basis.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Vector<K>> {
        self.engine.basis.iter().map(|e| &e.v)
    }

    /// Basis elements of an ideal as polynomials, sorted by leading monomial.
    pub fn polys(&self) -> Vec<Polynomial<K>> {
        let mut out: Vec<Polynomial<K>> =
            self.elements().map(|v| v.to_polys(&self.ring, 1).pop().expect("rank one")).collect();
        let order = self.ring.order();
        out.sort_by(|a, b| {
            let (x, y) = (a.lead_monomial().expect("nonzero"), b.lead_monomial().expect("nonzero"));
            y.cmp_with(x, order)
        });
        out
    }

    /// Leading terms `(component, monomial)`.
    pub fn lead_terms(&self) -> Vec<(u32, Monomial)> {
        self.engine.basis.iter().map(|e| (e.comp, e.lead.clone())).collect()
    }

    /// Remainder of full reduction; zero exactly when `v` lies in the span.
    pub fn normal_form(&self, v: &Vector<K>) -> Vector<K> {
        self.engine.reduce(v.clone())
    }

    pub fn normal_form_poly(&self, f: &Polynomial<K>) -> Polynomial<K> {
        let v = Vector::from_polys(std::slice::from_ref(f), &self.engine.order);
        self.normal_form(&v).to_polys(&self.ring, 1).pop().expect("rank one")
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_poly(&self, f: &Polynomial<K>) -> bool {
        self.normal_form_poly(f).is_zero()
    }

    /// Hilbert series of the quotient of the ambient free module.
    pub fn quotient_hilbert_series(&self) -> HilbertSeries {
        let n = self.ring.nvars();
        let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); self.rank()];
        for e in &self.engine.basis {
            per_comp[e.comp as usize].push(e.lead.clone());
        }
        per_comp.iter().enumerate().fold(HilbertSeries::zero(n), |acc, (i, gens)| {
            acc.add(&HilbertSeries::of_monomial_quotient(gens, n, self.engine.order.weights[i]))
        })
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<K: Field>(ring: &Ring<K>, gens: &[Polynomial<K>]) -> Result<GroebnerBasis<K>> {
    let order = ModuleOrder::new(ring.order(), vec![0]);
    let mut inputs = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(g.to_string()));
        }
        inputs.push(Vector::from_polys(std::slice::from_ref(g), &order));
    }
    GroebnerBasis::compute(ring, order, &inputs)
}

/// Reduced Gröbner basis of the column span of `map` inside its target.
pub fn module_groebner<K: Field>(map: &GradedMap<K>) -> Result<GroebnerBasis<K>> {
    submodule_groebner(map.target(), map, map.target().order())
}

/// As [`module_groebner`], with an explicit module order.
pub fn submodule_groebner<K: Field>(
    target: &GradedFreeModule<K>,
    map: &GradedMap<K>,
    order: ModuleOrder,
) -> Result<GroebnerBasis<K>> {
    if map.target() != target {
        return Err(Error::Shape("map target differs from the ambient module".into()));
    }
    let inputs = map.column_vectors(&order);
    GroebnerBasis::compute(target.ring(), order, &inputs)
}
