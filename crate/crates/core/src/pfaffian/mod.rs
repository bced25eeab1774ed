//! Pfaffians, skew-symmetric maps and the self-dual resolution they define.

mod certify;
mod random;

use std::collections::HashMap;
use std::fmt;

use crate::complexes::{FreeComplex, GradedFreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Polynomial, Ring};

pub use certify::{certify_pfaffian_scheme, parity_check, ParityReport, PfaffianCertificate};
pub use random::{random_form, random_skew};

/// Pfaffian of the principal submatrix on `indices`, by expansion along the
/// first row with memoisation over index subsets.
pub(crate) fn pfaffian_entries<K: Field>(a: &[Vec<Polynomial<K>>], indices: &[usize]) -> Polynomial<K> {
    let ring = a[indices[0]][indices[0]].ring().clone();
    let mut memo: HashMap<u64, Polynomial<K>> = HashMap::new();
    let mask = indices.iter().fold(0u64, |m, &i| m | (1 << i));
    pf_rec(a, mask, &ring, &mut memo)
}

fn pf_rec<K: Field>(
    a: &[Vec<Polynomial<K>>],
    mask: u64,
    ring: &Ring<K>,
    memo: &mut HashMap<u64, Polynomial<K>>,
) -> Polynomial<K> {
    if mask == 0 {
        return ring.one();
    }
    if mask.count_ones() % 2 == 1 {
        return ring.zero();
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut total = ring.zero();
    let mut sign_positive = true;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= !(1 << j);
        let entry = &a[first][j];
        if !entry.is_zero() {
            let sub = pf_rec(a, rest & !(1 << j), ring, memo);
            if !sub.is_zero() {
                let term = entry * &sub;
                total = if sign_positive { &total + &term } else { &total - &term };
            }
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, total.clone());
    total
}

fn check_skew<K: Field>(a: &[Vec<Polynomial<K>>]) -> Result<()> {
    let n = a.len();
    for (i, row) in a.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!("row {i} has {} entries in a {n}x{n} matrix", row.len())));
        }
        if !row[i].is_zero() {
            return Err(Error::NotSkew(format!("nonzero diagonal entry at ({i}, {i})")));
        }
        for j in 0..i {
            if a[i][j] != -&a[j][i] {
                return Err(Error::NotSkew(format!("entry ({i}, {j}) is not minus entry ({j}, {i})")));
            }
        }
    }
    Ok(())
}

/// Pfaffian of an even-size skew matrix, normalised by `pf([[0, a], [-a, 0]]) = a`.
pub fn pfaffian<K: Field>(a: &[Vec<Polynomial<K>>]) -> Result<Polynomial<K>> {
    check_skew(a)?;
    if a.len() % 2 == 1 {
        return Err(Error::EvenSizeRequired);
    }
    if a.is_empty() {
        return Err(Error::InvalidArgument("empty matrix".into()));
    }
    if a.len() > 62 {
        return Err(Error::InvalidArgument("matrix too large".into()));
    }
    let idx: Vec<usize> = (0..a.len()).collect();
    Ok(pfaffian_entries(a, &idx))
}

/// `g_i = (-1)^i pf(A with row and column i removed)` (zero-based `i`), so
/// that `A g = 0` and `gᵀ A = 0`.
pub fn sub_pfaffians<K: Field>(a: &[Vec<Polynomial<K>>]) -> Result<Vec<Polynomial<K>>> {
    check_skew(a)?;
    let n = a.len();
    if n % 2 == 0 {
        return Err(Error::OddSizeRequired);
    }
    if n > 63 {
        return Err(Error::InvalidArgument("matrix too large".into()));
    }
    if n == 1 {
        return Ok(vec![a[0][0].ring().one()]);
    }
    let ring = a[0][0].ring().clone();
    let mut memo: HashMap<u64, Polynomial<K>> = HashMap::new();
    let full = (1u64 << n) - 1;
    Ok((0..n)
        .map(|i| {
            let p = pf_rec(a, full & !(1 << i), &ring, &mut memo);
            if i % 2 == 0 {
                p
            } else {
                -p
            }
        })
        .collect())
}

/// A skew-symmetric map `f: 𝓔^∨(-t-s) → 𝓔(-s)` for `𝓔 = ⊕ O(e_j)` of odd
/// rank `2p + 1`, where `s = Σ e_j + p t`. Entry `(i, j)` has degree
/// `e_i + e_j + t`.
#[derive(Clone)]
pub struct SkewMatrix<K> {
    e_twists: Vec<i64>,
    t: i64,
    map: GradedMap<K>,
}

impl<K: Field> PartialEq for SkewMatrix<K> {
    fn eq(&self, other: &Self) -> bool {
        self.e_twists == other.e_twists && self.t == other.t && self.map == other.map
    }
}

impl<K: Field> Eq for SkewMatrix<K> {}

impl<K: Field> SkewMatrix<K> {
    pub fn new(ring: &Ring<K>, e_twists: Vec<i64>, t: i64, entries: Vec<Vec<Polynomial<K>>>) -> Result<Self> {
        if e_twists.len() % 2 == 0 {
            return Err(Error::OddSizeRequired);
        }
        if entries.len() != e_twists.len() {
            return Err(Error::Shape(format!("{} rows for {} twists", entries.len(), e_twists.len())));
        }
        check_skew(&entries)?;
        let s = Self::s_of(&e_twists, t);
        let source = GradedFreeModule::new(ring, e_twists.iter().map(|e| e + t + s).collect());
        let target = GradedFreeModule::new(ring, e_twists.iter().map(|e| s - e).collect());
        let map = GradedMap::new(source, target, entries)?;
        Ok(SkewMatrix { e_twists, t, map })
    }

    /// Parse entries written in the ring's polynomial grammar.
    pub fn parse(ring: &Ring<K>, e_twists: Vec<i64>, t: i64, rows: &[&[&str]]) -> Result<Self> {
        let entries =
            rows.iter().map(|r| r.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Self::new(ring, e_twists, t, entries)
    }

    fn s_of(e: &[i64], t: i64) -> i64 {
        e.iter().sum::<i64>() + (e.len() as i64 - 1) / 2 * t
    }

    pub fn ring(&self) -> &Ring<K> {
        self.map.ring()
    }

    pub fn size(&self) -> usize {
        self.e_twists.len()
    }

    /// `p`, with size `2p + 1`.
    pub fn p(&self) -> usize {
        (self.size() - 1) / 2
    }

    pub fn e_twists(&self) -> &[i64] {
        &self.e_twists
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    /// `s = c_1(𝓔) + p t`.
    pub fn s(&self) -> i64 {
        Self::s_of(&self.e_twists, self.t)
    }

    pub fn map(&self) -> &GradedMap<K> {
        &self.map
    }

    pub fn entries(&self) -> &[Vec<Polynomial<K>>] {
        self.map.entries()
    }

    pub fn sub_pfaffians(&self) -> Vec<Polynomial<K>> {
        sub_pfaffians(self.entries()).expect("validated skew matrix of odd size")
    }
}

impl<K: Field> fmt::Debug for SkewMatrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewMatrix(e = {:?}, t = {}) {}", self.e_twists, self.t, self.map)
    }
}

/// The resolution `0 → O(-t-2s) → 𝓔^∨(-t-s) → 𝓔(-s) → O` of the
/// Pfaffian subscheme, with `d_1 = gᵀ`, `d_2 = f`, `d_3 = g`.
#[derive(Clone)]
pub struct PfaffianResolution<K> {
    pub skew: SkewMatrix<K>,
    pub sub_pfaffians: Vec<Polynomial<K>>,
    pub complex: FreeComplex<K>,
}

impl<K: Field> fmt::Debug for PfaffianResolution<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PfaffianResolution({})", self.complex)
    }
}

impl<K: Field> PfaffianResolution<K> {
    pub fn s(&self) -> i64 {
        self.skew.s()
    }

    pub fn t(&self) -> i64 {
        self.skew.t()
    }

    /// `l` with `ω_X ≅ O_X(l)`: `t + 2s - N - 1`.
    pub fn l(&self) -> i64 {
        self.t() + 2 * self.s() - self.skew.ring().projective_dim() as i64 - 1
    }
}

/// Builds the resolution from the skew map; see [`PfaffianResolution`].
pub fn build_pfaffian_resolution<K: Field>(f: &SkewMatrix<K>) -> Result<PfaffianResolution<K>> {
    let ring = f.ring();
    let g = f.sub_pfaffians();
    let s = f.s();
    let f1 = f.map().target().clone();
    let f2 = f.map().source().clone();
    let d1 = GradedMap::new(f1, GradedFreeModule::new(ring, vec![0]), vec![g.clone()])?;
    let d3 = GradedMap::new(
        GradedFreeModule::new(ring, vec![f.t() + 2 * s]),
        f2,
        g.iter().map(|p| vec![p.clone()]).collect(),
    )?;
    let complex = FreeComplex::new(0, vec![d1, f.map().clone(), d3])?;
    Ok(PfaffianResolution { skew: f.clone(), sub_pfaffians: g, complex })
}

/// Convenience wrapper over [`SkewMatrix::new`] and [`build_pfaffian_resolution`].
pub fn build_from_entries<K: Field>(
    ring: &Ring<K>,
    e_twists: Vec<i64>,
    entries: Vec<Vec<Polynomial<K>>>,
    t: i64,
) -> Result<PfaffianResolution<K>> {
    build_pfaffian_resolution(&SkewMatrix::new(ring, e_twists, t, entries)?)
}
