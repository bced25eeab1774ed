use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{ModuleOrder, Vector};
use crate::ring::{DegreeStatus, Polynomial, Ring};

/// The graded free module `⊕ S(-a_j)` given by its twist list.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedFreeModule<K> {
    ring: Ring<K>,
    twists: Vec<i64>,
}

impl<K: Field> GradedFreeModule<K> {
    pub fn new(ring: &Ring<K>, twists: Vec<i64>) -> Self {
        GradedFreeModule { ring: ring.clone(), twists }
    }

    pub fn zero(ring: &Ring<K>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    /// `dim_k` of the degree-`t` piece.
    pub fn hilbert_function(&self, t: i64) -> u64 {
        self.twists.iter().map(|&a| self.ring.monomial_count(t - a)).sum()
    }

    /// `Hom(self, S(-e))`, the twisted dual `⊕ S(-(e - a_j))`.
    pub fn dual(&self, e: i64) -> Self {
        Self::new(&self.ring, self.twists.iter().map(|a| e - a).collect())
    }

    /// Module order whose weights are the twists.
    pub fn order(&self) -> ModuleOrder {
        ModuleOrder::new(self.ring.order(), self.twists.clone())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        Self::new(&self.ring, twists)
    }
}

impl<K: Field> fmt::Debug for GradedFreeModule<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for GradedFreeModule<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twists.is_empty() {
            return write!(f, "0");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.twists.len() {
            let a = self.twists[i];
            let mut j = i;
            while j < self.twists.len() && self.twists[j] == a {
                j += 1;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a == 0 {
                write!(f, "S")?;
            } else {
                write!(f, "S({})", -a)?;
            }
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// A degree-preserving map of graded free modules, stored as a polynomial
/// matrix with one row per target generator and one column per source
/// generator. Entry `(i, j)` is zero or homogeneous of degree `a_j - b_i`.
#[derive(Clone)]
pub struct GradedMap<K> {
    source: GradedFreeModule<K>,
    target: GradedFreeModule<K>,
    entries: Vec<Vec<Polynomial<K>>>,
}

impl<K: Field> PartialEq for GradedMap<K> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.entries == other.entries
    }
}

impl<K: Field> Eq for GradedMap<K> {}

impl<K: Field> GradedMap<K> {
    pub fn new(
        source: GradedFreeModule<K>,
        target: GradedFreeModule<K>,
        entries: Vec<Vec<Polynomial<K>>>,
    ) -> Result<Self> {
        if source.ring != target.ring {
            return Err(Error::RingMismatch);
        }
        if entries.len() != target.rank() {
            return Err(Error::Shape(format!("{} rows for a target of rank {}", entries.len(), target.rank())));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != source.rank() {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries for a source of rank {}",
                    row.len(),
                    source.rank()
                )));
            }
            for (j, p) in row.iter().enumerate() {
                if p.ring() != &source.ring {
                    return Err(Error::RingMismatch);
                }
                let expected = source.twists[j] - target.twists[i];
                match p.degree_status() {
                    DegreeStatus::Zero => {}
                    DegreeStatus::Homogeneous(d) if d as i64 == expected => {}
                    DegreeStatus::Homogeneous(d) => {
                        return Err(Error::DegreeMismatch { row: i, col: j, expected, found: d as i64 })
                    }
                    DegreeStatus::Inhomogeneous => {
                        return Err(Error::Inhomogeneous(format!("entry ({i}, {j}) = {p}")))
                    }
                }
            }
        }
        Ok(GradedMap { source, target, entries })
    }

    pub(crate) fn new_unchecked(
        source: GradedFreeModule<K>,
        target: GradedFreeModule<K>,
        entries: Vec<Vec<Polynomial<K>>>,
    ) -> Self {
        debug_assert!(Self::new(source.clone(), target.clone(), entries.clone()).is_ok());
        GradedMap { source, target, entries }
    }

    /// Build a map from a matrix, choosing the source twists from the
    /// column degrees (zero columns get twist `default_twist`).
    pub fn from_columns_with_target(
        target: GradedFreeModule<K>,
        entries: Vec<Vec<Polynomial<K>>>,
        default_twist: i64,
    ) -> Result<Self> {
        let ncols = entries.first().map_or(0, |r| r.len());
        let mut twists = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut tw = None;
            for (i, row) in entries.iter().enumerate() {
                if let Some(Ok(d)) = row.get(j).and_then(|p| p.total_degree()) {
                    tw = Some(d as i64 + target.twists[i]);
                    break;
                }
            }
            twists.push(tw.unwrap_or(default_twist));
        }
        let source = GradedFreeModule::new(&target.ring, twists);
        Self::new(source, target, entries)
    }

    pub fn zero(source: GradedFreeModule<K>, target: GradedFreeModule<K>) -> Self {
        let z = source.ring.zero();
        let entries = vec![vec![z; source.rank()]; target.rank()];
        GradedMap { source, target, entries }
    }

    pub fn identity(module: &GradedFreeModule<K>) -> Self {
        let ring = &module.ring;
        let n = module.rank();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        GradedMap { source: module.clone(), target: module.clone(), entries }
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.source.ring
    }

    pub fn source(&self) -> &GradedFreeModule<K> {
        &self.source
    }

    pub fn target(&self) -> &GradedFreeModule<K> {
        &self.target
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial<K> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial<K>>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Vec<Polynomial<K>>> {
        self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial<K>> {
        self.entries.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// All entries lie in the irrelevant ideal (no nonzero constants).
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero() || p.constant_value().is_none())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap<K>) -> Result<GradedMap<K>> {
        if other.target != self.source {
            return Err(Error::Shape(format!(
                "cannot compose: target {} differs from source {}",
                other.target, self.source
            )));
        }
        let ring = self.ring();
        let mut entries = vec![vec![ring.zero(); other.ncols()]; self.nrows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (k, a) in self.entries[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, out) in row.iter_mut().enumerate() {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        *out = &*out + &(a * b);
                    }
                }
            }
        }
        Ok(GradedMap { source: other.source.clone(), target: self.target.clone(), entries })
    }

    pub fn add(&self, other: &GradedMap<K>) -> Result<GradedMap<K>> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GradedMap<K>) -> Result<GradedMap<K>> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &GradedMap<K>,
        f: impl Fn(&Polynomial<K>, &Polynomial<K>) -> Polynomial<K>,
    ) -> Result<GradedMap<K>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Shape("maps have different source or target".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect())
            .collect();
        Ok(GradedMap { source: self.source.clone(), target: self.target.clone(), entries })
    }

    pub fn neg(&self) -> GradedMap<K> {
        self.map_entries(|p| -p)
    }

    pub fn scale(&self, c: &K) -> GradedMap<K> {
        self.map_entries(|p| p.scale(c))
    }

    pub(crate) fn map_entries(&self, f: impl Fn(&Polynomial<K>) -> Polynomial<K>) -> GradedMap<K> {
        let entries = self.entries.iter().map(|r| r.iter().map(&f).collect()).collect();
        GradedMap { source: self.source.clone(), target: self.target.clone(), entries }
    }

    /// Plain transpose as a map `target^∨(-e) → source^∨(-e)`.
    pub fn dual(&self, e: i64) -> GradedMap<K> {
        let entries = (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        GradedMap { source: self.target.dual(e), target: self.source.dual(e), entries }
    }

    /// Keep the listed columns (source generators).
    pub fn select_columns(&self, cols: &[usize]) -> GradedMap<K> {
        let source = GradedFreeModule::new(self.ring(), cols.iter().map(|&j| self.source.twists[j]).collect());
        let entries = self.entries.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
        GradedMap { source, target: self.target.clone(), entries }
    }

    /// Keep the listed rows (target generators).
    pub fn select_rows(&self, rows: &[usize]) -> GradedMap<K> {
        let target = GradedFreeModule::new(self.ring(), rows.iter().map(|&i| self.target.twists[i]).collect());
        let entries = rows.iter().map(|&i| self.entries[i].clone()).collect();
        GradedMap { source: self.source.clone(), target, entries }
    }

    /// `[self | other]` with a common target.
    pub fn hconcat(&self, other: &GradedMap<K>) -> Result<GradedMap<K>> {
        if self.target != other.target {
            return Err(Error::Shape("hconcat needs a common target".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        Ok(GradedMap { source: self.source.direct_sum(&other.source), target: self.target.clone(), entries })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &GradedMap<K>) -> GradedMap<K> {
        let ring = self.ring();
        let mut entries = Vec::with_capacity(self.nrows() + other.nrows());
        for r in &self.entries {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(ring.zero(), other.ncols()));
            entries.push(row);
        }
        for r in &other.entries {
            let mut row = vec![ring.zero(); self.ncols()];
            row.extend(r.iter().cloned());
            entries.push(row);
        }
        GradedMap {
            source: self.source.direct_sum(&other.source),
            target: self.target.direct_sum(&other.target),
            entries,
        }
    }

    /// Position of some nonzero constant entry.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        for (i, row) in self.entries.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if !p.is_zero() && p.constant_value().is_some() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Column `j` as a module vector for the target's order.
    pub fn column_vector(&self, j: usize, order: &ModuleOrder) -> Vector<K> {
        Vector::from_polys(&self.column(j), order)
    }

    pub fn column_vectors(&self, order: &ModuleOrder) -> Vec<Vector<K>> {
        (0..self.ncols()).map(|j| self.column_vector(j, order)).collect()
    }

    /// The same matrix with the source generators shifted by `t`.
    pub fn twist(&self, t: i64) -> GradedMap<K> {
        let shift = |m: &GradedFreeModule<K>| GradedFreeModule::new(m.ring(), m.twists.iter().map(|a| a + t).collect());
        GradedMap { source: shift(&self.source), target: shift(&self.target), entries: self.entries.clone() }
    }
}

impl<K: Field> fmt::Debug for GradedMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for GradedMap<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} <- {}", self.target, self.source)?;
        let cells: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        let ncols = self.ncols();
        let widths: Vec<usize> =
            (0..ncols).map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
        for row in &cells {
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, "  ")?;
                }
                write!(f, "{c:>w$}", w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
