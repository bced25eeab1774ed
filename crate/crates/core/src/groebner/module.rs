//! Syzygies, minimal generators and the lifting solver, all read off one
//! Gröbner basis of the graph of a map.

use crate::complexes::{GradedFreeModule, GradedMap};
use crate::field::Field;
use crate::ring::{Monomial, Polynomial};

use super::engine::{Engine, Origin};
use super::vector::{ModuleOrder, Vector};

/// Module order on `G ⊕ F` for a map `F → G`, eliminating the `G` block.
fn graph_order<K: Field>(map: &GradedMap<K>) -> ModuleOrder {
    let m = map.nrows();
    let mut weights = map.target().twists().to_vec();
    weights.extend_from_slice(map.source().twists());
    let mut order = ModuleOrder::new(map.ring().order(), weights);
    for b in order.blocks.iter_mut().skip(m) {
        *b = 1;
    }
    order
}

fn graph_inputs<K: Field>(map: &GradedMap<K>, order: &ModuleOrder) -> Vec<Vector<K>> {
    let m = map.nrows();
    let n = map.ring().nvars();
    (0..map.ncols())
        .map(|j| {
            let mut terms: Vec<(u32, Monomial, K)> = Vec::new();
            for i in 0..m {
                for (mono, c) in map.entry(i, j).terms() {
                    terms.push((i as u32, mono.clone(), c.clone()));
                }
            }
            terms.push(((m + j) as u32, Monomial::one(n), K::one()));
            Vector::from_terms(terms, order)
        })
        .collect()
}

fn run_graph<K: Field>(map: &GradedMap<K>) -> Engine<K> {
    let order = graph_order(map);
    let inputs = graph_inputs(map, &order);
    let mut engine = Engine::new(order);
    engine.run(&inputs);
    engine
}

/// Indices of columns forming a minimal generating set of the image, and a
/// minimal generating set of the syzygies of all columns.
pub(crate) fn image_and_syzygies<K: Field>(map: &GradedMap<K>) -> (Vec<usize>, GradedMap<K>) {
    let engine = run_graph(map);
    let m = map.nrows() as u32;
    let ring = map.ring();
    let mut mingens = Vec::new();
    let mut twists = Vec::new();
    let mut columns: Vec<Vec<Polynomial<K>>> = Vec::new();
    for e in &engine.basis {
        let in_graph = e.comp >= m;
        match (e.origin, in_graph) {
            (Origin::Input(j), false) => mingens.push(j),
            (Origin::Pair(c), true) if c >= m => {}
            (_, true) => {
                twists.push(e.deg);
                let v = e.v.project(m as usize, m as usize + map.ncols());
                columns.push(v.to_polys(ring, map.ncols()));
            }
            _ => {}
        }
    }
    mingens.sort_unstable();
    let source = GradedFreeModule::new(ring, twists);
    let entries = (0..map.ncols()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    (mingens, GradedMap::new_unchecked(source, map.source().clone(), entries))
}

/// A map onto the kernel of `map`: its columns minimally generate the
/// syzygy module of the columns of `map`.
pub fn syzygies<K: Field>(map: &GradedMap<K>) -> GradedMap<K> {
    image_and_syzygies(map).1
}

/// Indices of a minimal generating subset of the columns.
pub fn minimal_generators<K: Field>(map: &GradedMap<K>) -> Vec<usize> {
    image_and_syzygies(map).0
}

/// Solves `A X = b` column by column against one Gröbner basis of the graph of `A`.
pub struct LiftSolver<K> {
    map: GradedMap<K>,
    engine: Engine<K>,
}

impl<K: Field> LiftSolver<K> {
    pub fn new(map: &GradedMap<K>) -> Self {
        let mut engine = run_graph(map);
        engine.interreduce();
        LiftSolver { map: map.clone(), engine }
    }

    /// Some `x` with `A x = b`, or `None` when `b` is not in the image.
    pub fn solve(&self, b: &[Polynomial<K>]) -> Option<Vec<Polynomial<K>>> {
        let m = self.map.nrows();
        let v = Vector::from_polys(b, &self.engine.order);
        let r = self.engine.reduce(v);
        if r.terms().iter().any(|(c, _, _)| (*c as usize) < m) {
            return None;
        }
        let x = r.project(m, m + self.map.ncols()).scale(&-K::one());
        Some(x.to_polys(self.map.ring(), self.map.ncols()))
    }

    pub fn contains(&self, b: &[Polynomial<K>]) -> bool {
        self.solve(b).is_some()
    }
}

/// `X` with `A ∘ X = B`, when every column of `B` lies in the image of `A`.
pub fn lift_solve<K: Field>(a: &GradedMap<K>, b: &GradedMap<K>) -> Option<GradedMap<K>> {
    if a.target() != b.target() {
        return None;
    }
    let solver = LiftSolver::new(a);
    let mut cols = Vec::with_capacity(b.ncols());
    for j in 0..b.ncols() {
        cols.push(solver.solve(&b.column(j))?);
    }
    let entries = (0..a.ncols()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    GradedMap::new(b.source().clone(), a.source().clone(), entries).ok()
}
