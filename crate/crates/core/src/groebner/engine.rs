//! Homogeneous Buchberger algorithm on graded free modules.
//!
//! Pairs are processed degree by degree (for homogeneous input the sugar of
//! a pair is its degree), pruned with the Gebauer–Möller criteria, and
//! Buchberger's coprimality criterion when the module has rank one. Because
//! every S-pair of degree `d` is reduced before any input generator of
//! degree `d`, an input that survives reduction is a minimal generator.

use crate::field::Field;
use crate::ring::Monomial;

use super::vector::{sub_mul_slices, ModuleOrder, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Origin {
    Input(usize),
    /// Reduction of an S-pair whose leading terms sit in this component.
    Pair(u32),
}

#[derive(Clone)]
pub(crate) struct Elem<K> {
    pub v: Vector<K>,
    pub comp: u32,
    pub lead: Monomial,
    pub mask: u64,
    pub deg: i64,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    deg: i64,
}

#[derive(Clone)]
pub(crate) struct Engine<K> {
    pub order: ModuleOrder,
    coprime_criterion: bool,
    pub basis: Vec<Elem<K>>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
}

impl<K: Field> Engine<K> {
    pub fn new(order: ModuleOrder) -> Self {
        Engine {
            coprime_criterion: order.rank() == 1,
            basis: Vec::new(),
            by_comp: vec![Vec::new(); order.rank()],
            order,
            pairs: Vec::new(),
        }
    }

    /// Runs Buchberger on homogeneous `inputs`; zero inputs are ignored.
    pub fn run(&mut self, inputs: &[Vector<K>]) {
        let mut queue: Vec<(i64, usize)> = inputs
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (v.degree(&self.order).expect("nonzero"), k))
            .collect();
        queue.sort();
        let mut next_input = 0;
        loop {
            let pair_deg = self.pairs.iter().map(|p| p.deg).min();
            let input_deg = queue.get(next_input).map(|q| q.0);
            let d = match (pair_deg, input_deg) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            let mut batch = Vec::new();
            self.pairs.retain(|p| {
                if p.deg == d {
                    batch.push(p.clone());
                    false
                } else {
                    true
                }
            });
            let order = &self.order;
            // pairs in lower-priority blocks first, so that elements generated
            // by lower-degree ones are known before new ones are judged
            batch.sort_by(|a, b| {
                order.blocks[b.comp as usize]
                    .cmp(&order.blocks[a.comp as usize])
                    .then_with(|| order.cmp((a.comp, &a.lcm), (b.comp, &b.lcm)))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            });
            for p in batch {
                let s = self.spoly(&p);
                let r = self.reduce(s);
                if !r.is_zero() {
                    self.insert(r.monic(), Origin::Pair(p.comp));
                }
            }
            while next_input < queue.len() && queue[next_input].0 == d {
                let k = queue[next_input].1;
                next_input += 1;
                let r = self.reduce(inputs[k].clone());
                if !r.is_zero() {
                    self.insert(r.monic(), Origin::Input(k));
                }
            }
        }
    }

    fn spoly(&self, p: &Pair) -> Vector<K> {
        let a = &self.basis[p.i];
        let b = &self.basis[p.j];
        let ma = a.lead.quotient_of(&p.lcm);
        let mb = b.lead.quotient_of(&p.lcm);
        let a_shift: Vec<_> = a.v.terms[1..].iter().map(|(c, m, k)| (*c, m.mul(&ma), k.clone())).collect();
        sub_mul_slices(&a_shift, &b.v.terms[1..], &mb, &K::one(), &self.order)
    }

    pub fn find_reducer(&self, comp: u32, m: &Monomial) -> Option<usize> {
        let mask = m.support_mask();
        self.by_comp[comp as usize]
            .iter()
            .copied()
            .find(|&r| {
                let e = &self.basis[r];
                e.mask & !mask == 0 && e.lead.divides(m)
            })
    }

    /// Full reduction (leading and tail terms).
    pub fn reduce(&self, v: Vector<K>) -> Vector<K> {
        let mut rest = v.terms;
        let mut pos = 0;
        let mut done = Vec::new();
        while pos < rest.len() {
            let (comp, m, k) = &rest[pos];
            match self.find_reducer(*comp, m) {
                Some(r) => {
                    let e = &self.basis[r];
                    let q = e.lead.quotient_of(m);
                    let k = k.clone();
                    rest = sub_mul_slices(&rest[pos + 1..], &e.v.terms[1..], &q, &k, &self.order).terms;
                    pos = 0;
                }
                None => {
                    done.push(rest[pos].clone());
                    pos += 1;
                }
            }
        }
        Vector { terms: done }
    }

    fn insert(&mut self, v: Vector<K>, origin: Origin) {
        let (comp, lead) = {
            let t = v.lead().expect("nonzero");
            (t.0, t.1.clone())
        };
        let deg = v.degree(&self.order).expect("nonzero");
        let h = self.basis.len();
        self.update_pairs(h, comp, &lead);
        self.basis.push(Elem { mask: lead.support_mask(), v, comp, lead, deg, origin });
        self.by_comp[comp as usize].push(h);
    }

    fn update_pairs(&mut self, h: usize, comp: u32, lead: &Monomial) {
        let weight = self.order.weights[comp as usize];
        let cands: Vec<(usize, Monomial, bool)> = self.by_comp[comp as usize]
            .iter()
            .map(|&g| {
                let gl = &self.basis[g].lead;
                (g, gl.lcm(lead), self.coprime_criterion && gl.is_coprime(lead))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l, disjoint)) in cands.iter().enumerate() {
            let dominated = cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l))
                || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if *disjoint || !dominated {
                kept.push((*g, l.clone(), *disjoint));
            }
        }
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.comp != comp || !lead.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead.lcm(lead);
            let lj = basis[p.j].lead.lcm(lead);
            li == p.lcm || lj == p.lcm
        });
        for (g, l, disjoint) in kept {
            if !disjoint {
                let deg = l.degree() as i64 + weight;
                self.pairs.push(Pair { i: g, j: h, lcm: l, comp, deg });
            }
        }
    }

    /// Tail-reduce every element by the others, producing the reduced basis
    /// (leading terms are already minimal for homogeneous runs).
    pub fn interreduce(&mut self) {
        for idx in 0..self.basis.len() {
            let terms = std::mem::take(&mut self.basis[idx].v.terms);
            let head = terms[0].clone();
            let tail = Vector { terms: terms[1..].to_vec() };
            let reduced = self.reduce(tail);
            let mut t = Vec::with_capacity(reduced.terms.len() + 1);
            t.push(head);
            t.extend(reduced.terms);
            self.basis[idx].v.terms = t;
        }
    }
}
