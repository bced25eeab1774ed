use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::Ring;

use super::{GradedFreeModule, GradedMap};

/// A bounded complex of graded free modules `F_k` with differentials
/// `d_k: F_k → F_{k-1}` (homological indexing). Complexes that are
/// naturally cohomological are stored with negated indices; see
/// [`cohomological_index`].
#[derive(Clone)]
pub struct FreeComplex<K> {
    ring: Ring<K>,
    lo: i64,
    modules: Vec<GradedFreeModule<K>>,
    // maps[k] = d_{lo + k + 1}
    maps: Vec<GradedMap<K>>,
}

impl<K: Field> PartialEq for FreeComplex<K> {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo && self.modules == other.modules && self.maps == other.maps
    }
}

impl<K: Field> Eq for FreeComplex<K> {}

/// Converts between homological and cohomological indices (`F^i = F_{-i}`).
pub fn cohomological_index(k: i64) -> i64 {
    -k
}

impl<K: Field> FreeComplex<K> {
    /// Complex `F_{lo + len} → … → F_lo` from consecutive differentials,
    /// `maps[0] = d_{lo+1}`. Checks that consecutive maps compose to zero.
    pub fn new(lo: i64, maps: Vec<GradedMap<K>>) -> Result<Self> {
        let first = maps.first().ok_or_else(|| Error::InvalidArgument("no differentials given".into()))?;
        let ring = first.ring().clone();
        let mut modules = vec![first.target().clone()];
        for (k, d) in maps.iter().enumerate() {
            if d.ring() != &ring {
                return Err(Error::RingMismatch);
            }
            if d.target() != &modules[k] {
                return Err(Error::Shape(format!("d_{} does not land in F_{}", lo + k as i64 + 1, lo + k as i64)));
            }
            modules.push(d.source().clone());
        }
        let c = FreeComplex { ring, lo, modules, maps };
        c.check_square_zero()?;
        Ok(c)
    }

    /// A single module placed at index `k`.
    pub fn single(module: GradedFreeModule<K>, k: i64) -> Self {
        FreeComplex { ring: module.ring().clone(), lo: k, modules: vec![module], maps: Vec::new() }
    }

    pub fn zero(ring: &Ring<K>) -> Self {
        Self::single(GradedFreeModule::zero(ring), 0)
    }

    pub(crate) fn from_parts_unchecked(lo: i64, modules: Vec<GradedFreeModule<K>>, maps: Vec<GradedMap<K>>) -> Self {
        let ring = modules[0].ring().clone();
        FreeComplex { ring, lo, modules, maps }
    }

    fn check_square_zero(&self) -> Result<()> {
        for k in 1..self.maps.len() {
            let dd = self.maps[k - 1].compose(&self.maps[k])?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex { index: self.lo + k as i64 });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring<K> {
        &self.ring
    }

    /// Lowest index of the stored range.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest index of the stored range.
    pub fn hi(&self) -> i64 {
        self.lo + self.maps.len() as i64
    }

    /// Number of differentials in the stored range.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_k`, zero outside the stored range.
    pub fn module(&self, k: i64) -> GradedFreeModule<K> {
        if k < self.lo || k > self.hi() {
            GradedFreeModule::zero(&self.ring)
        } else {
            self.modules[(k - self.lo) as usize].clone()
        }
    }

    pub fn modules(&self) -> &[GradedFreeModule<K>] {
        &self.modules
    }

    /// `d_k: F_k → F_{k-1}`, a zero map outside the stored range.
    pub fn differential(&self, k: i64) -> GradedMap<K> {
        if k > self.lo && k <= self.hi() {
            self.maps[(k - self.lo - 1) as usize].clone()
        } else {
            GradedMap::zero(self.module(k), self.module(k - 1))
        }
    }

    pub fn differentials(&self) -> &[GradedMap<K>] {
        &self.maps
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.rank()).collect()
    }

    /// Twist lists from `F_lo` up to `F_hi`.
    pub fn twists(&self) -> Vec<Vec<i64>> {
        self.modules.iter().map(|m| m.twists().to_vec()).collect()
    }

    /// Every differential has its entries in the irrelevant ideal.
    pub fn is_minimal(&self) -> bool {
        self.maps.iter().all(|d| d.is_minimal())
    }

    /// Drops zero modules at both ends of the stored range.
    pub fn trimmed(&self) -> Self {
        let mut lo = 0;
        let mut hi = self.modules.len();
        while lo + 1 < hi && self.modules[lo].is_zero() {
            lo += 1;
        }
        while hi > lo + 1 && self.modules[hi - 1].is_zero() {
            hi -= 1;
        }
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo + lo as i64,
            modules: self.modules[lo..hi].to_vec(),
            maps: self.maps[lo..hi - 1].to_vec(),
        }
    }

    /// The same complex stored over a wider index range, padded with zeros.
    pub fn extended(&self, lo: i64, hi: i64) -> Self {
        let lo = lo.min(self.lo);
        let hi = hi.max(self.hi());
        let modules: Vec<_> = (lo..=hi).map(|k| self.module(k)).collect();
        let maps = (lo + 1..=hi).map(|k| self.differential(k)).collect();
        FreeComplex { ring: self.ring.clone(), lo, modules, maps }
    }

    /// Reindex so that `F'_k = F_{k + s}`.
    pub fn shift(&self, s: i64) -> Self {
        let mut c = self.clone();
        c.lo -= s;
        c
    }

    /// Termwise sum of two complexes.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let modules = (lo..=hi).map(|k| self.module(k).direct_sum(&other.module(k))).collect();
        let maps = (lo + 1..=hi).map(|k| self.differential(k).direct_sum(&other.differential(k))).collect();
        Ok(FreeComplex { ring: self.ring.clone(), lo, modules, maps })
    }

    /// Twist every module by `t`: `F_k(t)`.
    pub fn twist(&self, t: i64) -> Self {
        let modules = self
            .modules
            .iter()
            .map(|m| GradedFreeModule::new(&self.ring, m.twists().iter().map(|a| a - t).collect()))
            .collect();
        let maps = self.maps.iter().map(|d| d.twist(-t)).collect();
        FreeComplex { ring: self.ring.clone(), lo: self.lo, modules, maps }
    }

    /// Replace one differential, re-checking `d ∘ d = 0`.
    pub fn with_differential(&self, k: i64, d: GradedMap<K>) -> Result<Self> {
        if k <= self.lo || k > self.hi() {
            return Err(Error::InvalidArgument(format!("no differential d_{k} in range")));
        }
        let mut maps = self.maps.clone();
        maps[(k - self.lo - 1) as usize] = d;
        FreeComplex::new(self.lo, maps)
    }

    /// Betti table: rows indexed by `a - k`, columns by `k`.
    pub fn betti_table(&self) -> BettiTable {
        let mut entries = Vec::new();
        for (idx, m) in self.modules.iter().enumerate() {
            let k = self.lo + idx as i64;
            for &a in m.twists() {
                entries.push((k, a - k));
            }
        }
        BettiTable::from_entries(self.lo, self.hi(), entries)
    }
}

impl<K: Field> fmt::Debug for FreeComplex<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<K: Field> fmt::Display for FreeComplex<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (self.lo..=self.hi()).rev() {
            if !first {
                write!(f, " <- ")?;
            }
            first = false;
            write!(f, "{}", self.module(k))?;
        }
        Ok(())
    }
}

/// Graded Betti numbers `β_{k, k+j}` displayed with `k` across and `j` down.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct BettiTable {
    pub lo: i64,
    pub hi: i64,
    pub row_lo: i64,
    /// `rows[j - row_lo][k - lo]`.
    pub rows: Vec<Vec<usize>>,
}

impl BettiTable {
    fn from_entries(lo: i64, hi: i64, entries: Vec<(i64, i64)>) -> Self {
        let row_lo = entries.iter().map(|e| e.1).min().unwrap_or(0);
        let row_hi = entries.iter().map(|e| e.1).max().unwrap_or(0);
        let mut rows = vec![vec![0; (hi - lo + 1) as usize]; (row_hi - row_lo + 1) as usize];
        for (k, j) in entries {
            rows[(j - row_lo) as usize][(k - lo) as usize] += 1;
        }
        BettiTable { lo, hi, row_lo, rows }
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.rows.iter().flatten().map(|n| n.to_string().len()).max().unwrap_or(1).max(3);
        let label = self.row_lo.abs().max((self.row_lo + self.rows.len() as i64).abs()).to_string().len() + 2;
        write!(f, "{:>label$}", "")?;
        for k in self.lo..=self.hi {
            write!(f, " {k:>width$}")?;
        }
        writeln!(f)?;
        for (r, row) in self.rows.iter().enumerate() {
            write!(f, "{:>w$}:", self.row_lo + r as i64, w = label - 1)?;
            for n in row {
                if *n == 0 {
                    write!(f, " {:>width$}", ".")?;
                } else {
                    write!(f, " {n:>width$}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
