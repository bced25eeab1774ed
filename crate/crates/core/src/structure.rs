//! Recovering a skew-symmetric presentation from the minimal resolution of a
//! Gorenstein codimension-3 ideal.
//!
//! The resolution `0 → S(-e) → F_2 → F_1 → S` carries a multiplication that
//! identifies `F_2` with `F_1^∨(-e)`; under that identification `d_2` is
//! skew-symmetric and its sub-Pfaffians generate the ideal.

use std::fmt;

use serde::Serialize;

use crate::complexes::linalg::{determinant, minor, subsets};
use crate::complexes::{
    be_exactness_certificate, minimal_free_resolution, ExactnessCertificate, FreeComplex, GradedFreeModule,
    GradedMap, PresentedModule,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{Ideal, LiftSolver};
use crate::pfaffian::SkewMatrix;
use crate::ring::{Polynomial, Ring};

/// Minimal resolution `0 → S(-e) → F_2 → F_1 → S` of `S/I`.
#[derive(Clone)]
pub struct GorensteinResolution<K> {
    pub complex: FreeComplex<K>,
    pub e: i64,
    pub exactness: ExactnessCertificate,
}

impl<K: Field> fmt::Debug for GorensteinResolution<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GorensteinResolution(e = {}, {})", self.e, self.complex)
    }
}

impl<K: Field> GorensteinResolution<K> {
    pub fn ring(&self) -> &Ring<K> {
        self.complex.ring()
    }

    pub fn d1(&self) -> GradedMap<K> {
        self.complex.differential(1)
    }

    pub fn d2(&self) -> GradedMap<K> {
        self.complex.differential(2)
    }

    pub fn d3(&self) -> GradedMap<K> {
        self.complex.differential(3)
    }

    /// Rank of `F_1`, the number of minimal generators.
    pub fn rank(&self) -> usize {
        self.complex.module(1).rank()
    }

    /// The ideal generators `d_1(e_i)`.
    pub fn generators(&self) -> Vec<Polynomial<K>> {
        self.d1().entries()[0].clone()
    }
}

/// Resolves `S/I` and checks that it has the Gorenstein codimension-3 shape.
pub fn gorenstein_shape<K: Field>(ideal: &Ideal<K>) -> Result<GorensteinResolution<K>> {
    let ring = ideal.ring();
    if ideal.is_unit() {
        return Err(Error::EmptyScheme);
    }
    let codim = ideal.dimension()?.codim;
    if codim != 3 {
        return Err(Error::NotGorenstein(format!("codimension is {codim}, expected 3")));
    }
    let quotient = PresentedModule::cyclic(ring, ideal.gens())?;
    let complex = minimal_free_resolution(&quotient, ring.nvars() + 1);
    let length = complex.hi() - complex.lo();
    if length != 3 {
        return Err(Error::NotGorenstein(format!("resolution has length {length}, expected 3")));
    }
    let top = complex.module(3);
    if top.rank() != 1 {
        return Err(Error::NotGorenstein(format!("last module has rank {}, expected 1", top.rank())));
    }
    let e = top.twists()[0];
    let exactness = be_exactness_certificate(&complex)?;
    if !exactness.exact {
        return Err(Error::Internal(format!("computed resolution fails the exactness check:\n{exactness}")));
    }
    Ok(GorensteinResolution { complex, e, exactness })
}

/// Basis `e_i ∧ e_j` (`i < j`) of `Λ²F`, in lexicographic order.
fn wedge_basis(n: usize) -> Vec<(usize, usize)> {
    subsets(n, 2).into_iter().map(|s| (s[0], s[1])).collect()
}

fn wedge_module<K: Field>(f1: &GradedFreeModule<K>) -> GradedFreeModule<K> {
    let tw = f1.twists();
    GradedFreeModule::new(f1.ring(), wedge_basis(tw.len()).iter().map(|&(i, j)| tw[i] + tw[j]).collect())
}

/// `ψ: Λ²F_1 → F_1`, `ψ(e_i ∧ e_j) = d_1(e_i) e_j - d_1(e_j) e_i`.
pub fn build_psi<K: Field>(r: &GorensteinResolution<K>) -> GradedMap<K> {
    psi_of(&r.d1())
}

fn psi_of<K: Field>(d1: &GradedMap<K>) -> GradedMap<K> {
    let ring = d1.ring();
    let g = &d1.entries()[0];
    let n = g.len();
    let basis = wedge_basis(n);
    let mut entries = vec![vec![ring.zero(); basis.len()]; n];
    for (c, &(i, j)) in basis.iter().enumerate() {
        entries[j][c] = g[i].clone();
        entries[i][c] = -&g[j];
    }
    GradedMap::new_unchecked(wedge_module(d1.source()), d1.source().clone(), entries)
}

/// `φ: Λ²F_1 → F_2` with `d_2 ∘ φ = ψ`.
pub fn lift_phi<K: Field>(r: &GorensteinResolution<K>, psi: &GradedMap<K>) -> Result<GradedMap<K>> {
    let d2 = r.d2();
    let solver = LiftSolver::new(&d2);
    let mut cols = Vec::with_capacity(psi.ncols());
    for c in 0..psi.ncols() {
        let x = solver
            .solve(&psi.column(c))
            .ok_or_else(|| Error::Internal(format!("column {c} of psi is not in the image of d_2")))?;
        cols.push(x);
    }
    let entries = (0..d2.ncols()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    GradedMap::new(psi.source().clone(), d2.source().clone(), entries)
}

/// The pairing `μ: F_1 ⊗ F_2 → S(-e)` fixed by `d_3 μ(a ⊗ b) = d_1(a) b - φ(a ∧ d_2 b)`,
/// returned as its two partial evaluations `s_1: F_1 → F_2^∨(-e)` and
/// `s_2: F_2 → F_1^∨(-e)`.
pub fn multiplication_pairing<K: Field>(
    r: &GorensteinResolution<K>,
    phi: &GradedMap<K>,
) -> Result<(GradedMap<K>, GradedMap<K>)> {
    let ring = r.ring();
    let (d2, d3) = (r.d2(), r.d3());
    let g = r.generators();
    let n = r.rank();
    let m = d2.ncols();
    let pivot = (0..d3.nrows())
        .find(|&i| !d3.entry(i, 0).is_zero())
        .ok_or_else(|| Error::Internal("d_3 is zero".into()))?;
    let wedge_index = |i: usize, j: usize| -> usize {
        // position of e_i ∧ e_j (i < j) in the lexicographic basis
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    };
    let mut mu = vec![vec![ring.zero(); m]; n];
    for a in 0..n {
        for k in 0..m {
            // v = g_a f_k - φ(e_a ∧ d_2(f_k))
            let mut v: Vec<Polynomial<K>> = d3.column(0).iter().map(|_| ring.zero()).collect();
            for (j, c) in d2.column(k).iter().enumerate() {
                if c.is_zero() || j == a {
                    continue;
                }
                let (col, sign) = if a < j { (wedge_index(a, j), false) } else { (wedge_index(j, a), true) };
                for (i, vi) in v.iter_mut().enumerate() {
                    let t = c * phi.entry(i, col);
                    *vi = if sign { &*vi + &t } else { &*vi - &t };
                }
            }
            v[k] = &v[k] + &g[a];
            let q = v[pivot]
                .exact_div(d3.entry(pivot, 0))
                .ok_or_else(|| Error::Internal(format!("pairing ({a}, {k}) is not divisible by d_3")))?;
            if (0..v.len()).any(|i| &q * d3.entry(i, 0) != v[i]) {
                return Err(Error::Internal(format!("pairing ({a}, {k}) is not in the image of d_3")));
            }
            mu[a][k] = q;
        }
    }
    let e = r.e;
    let f1 = r.complex.module(1);
    let f2 = r.complex.module(2);
    let s2 = GradedMap::new(f2.clone(), f1.dual(e), mu.clone())?;
    let s1 = GradedMap::new(f1, f2.dual(e), transpose(&mu))?;
    Ok((s1, s2))
}

fn transpose<K: Field>(a: &[Vec<Polynomial<K>>]) -> Vec<Vec<Polynomial<K>>> {
    let cols = a.first().map_or(0, |r| r.len());
    (0..cols).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn mat_mul<K: Field>(ring: &Ring<K>, a: &[Vec<Polynomial<K>>], b: &[Vec<Polynomial<K>>]) -> Vec<Vec<Polynomial<K>>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(ring.zero(), |acc, k| &acc + &(&row[k] * &b[k][j])))
                .collect()
        })
        .collect()
}

/// Adjugate and determinant of a square matrix.
fn adjugate<K: Field>(ring: &Ring<K>, a: &[Vec<Polynomial<K>>]) -> (Vec<Vec<Polynomial<K>>>, Polynomial<K>) {
    let n = a.len();
    let det = determinant(a);
    if n == 1 {
        return (vec![vec![ring.one()]], det);
    }
    let mut adj = vec![vec![ring.zero(); n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            // adj[i][j] = (-1)^{i+j} M_{j,i}
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = minor(a, &rows, &cols);
            *x = if (i + j) % 2 == 0 { m } else { -&m };
        }
    }
    (adj, det)
}

/// Outcome of the identity checks made along the way.
#[derive(Clone, Debug, Serialize)]
pub struct PfaffianizationChecks {
    /// `d_1 ∘ ψ = 0`.
    pub psi_in_kernel: bool,
    /// `d_2 ∘ φ = ψ`.
    pub phi_lifts_psi: bool,
    /// `s_2 ∘ d_3 = d_1^∨`.
    pub s2_d3: bool,
    /// `d_2^∨ ∘ s_2 = -s_1 ∘ d_2`.
    pub s2_d2: bool,
    /// `f + fᵀ = 0` with zero diagonal, before any symmetrization.
    pub skew_exact: bool,
    /// `f` was replaced by `(f - fᵀ)/2`.
    pub symmetrized: bool,
    /// `rank F_1` is odd.
    pub odd_rank: bool,
    /// The sub-Pfaffians of `f` generate the input ideal.
    pub ideal_equal: bool,
}

impl fmt::Display for PfaffianizationChecks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "ok" } else { "FAILED" };
        writeln!(f, "d1 psi = 0: {}", mark(self.psi_in_kernel))?;
        writeln!(f, "d2 phi = psi: {}", mark(self.phi_lifts_psi))?;
        writeln!(f, "s2 d3 = d1^dual: {}", mark(self.s2_d3))?;
        writeln!(f, "d2^dual s2 = -s1 d2: {}", mark(self.s2_d2))?;
        writeln!(f, "f skew: {}{}", mark(self.skew_exact), if self.symmetrized { " (symmetrized)" } else { "" })?;
        writeln!(f, "rank F1 odd: {}", mark(self.odd_rank))?;
        write!(f, "ideal equality: {}", mark(self.ideal_equal))
    }
}

/// A skew matrix whose sub-Pfaffians generate the input ideal.
#[derive(Clone)]
pub struct PfaffianizationResult<K> {
    pub skew: SkewMatrix<K>,
    pub s1: GradedMap<K>,
    pub s2: GradedMap<K>,
    pub resolution: GorensteinResolution<K>,
    pub checks: PfaffianizationChecks,
}

impl<K: Field> fmt::Debug for PfaffianizationResult<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PfaffianizationResult({:?})", self.skew)
    }
}

/// Writes `I` as the ideal of sub-Pfaffians of a skew-symmetric matrix.
pub fn pfaffianize<K: Field>(ideal: &Ideal<K>) -> Result<PfaffianizationResult<K>> {
    if K::is_char_two() {
        return Err(Error::CharacteristicTwo);
    }
    let ring = ideal.ring().clone();
    let res = gorenstein_shape(ideal)?;
    let n = res.rank();
    let (d1, d2, d3) = (res.d1(), res.d2(), res.d3());
    let psi = build_psi(&res);
    let psi_in_kernel = d1.compose(&psi)?.is_zero();
    let phi = lift_phi(&res, &psi)?;
    let phi_lifts_psi = d2.compose(&phi)? == psi;
    let (s1, s2) = multiplication_pairing(&res, &phi)?;
    let s2_d3 = s2.compose(&d3)?.entries() == d1.dual(res.e).entries();
    let s2_d2 = d2.dual(res.e).compose(&s2)? == s1.compose(&d2)?.neg();

    let (adj, det) = adjugate(&ring, s2.entries());
    let det = match det.constant_value() {
        Some(c) if !c.is_zero() => c,
        _ => return Err(Error::Internal(format!("s_2 is not invertible: det = {det}"))),
    };
    let inv_det = det.inv().expect("nonzero scalar");
    let mut f = mat_mul(&ring, d2.entries(), &adj);
    for row in f.iter_mut() {
        for x in row.iter_mut() {
            *x = x.scale(&inv_det);
        }
    }
    let skew_exact = (0..n).all(|i| f[i][i].is_zero() && (0..n).all(|j| (&f[i][j] + &f[j][i]).is_zero()));
    let symmetrized = !skew_exact;
    if symmetrized {
        let half = K::from_i64(2).inv().expect("characteristic is not 2");
        let g: Vec<Vec<Polynomial<K>>> =
            (0..n).map(|i| (0..n).map(|j| (&f[i][j] - &f[j][i]).scale(&half)).collect()).collect();
        f = g;
    }

    // f: F_1^∨(-e) → F_1 with F_1 = ⊕S(-a_j); as a skew matrix it has
    // e_j = c - a_j and t = e - 2c for c = max a_j.
    let a = res.complex.module(1).twists().to_vec();
    let c = a.iter().copied().max().unwrap_or(0);
    let e_twists: Vec<i64> = a.iter().map(|x| c - x).collect();
    let skew = SkewMatrix::new(&ring, e_twists, res.e - 2 * c, f)?;
    let pf_ideal = Ideal::new(&ring, skew.sub_pfaffians())?;
    let ideal_equal = pf_ideal.same_ideal(ideal);
    let checks = PfaffianizationChecks {
        psi_in_kernel,
        phi_lifts_psi,
        s2_d3,
        s2_d2,
        skew_exact,
        symmetrized,
        odd_rank: n % 2 == 1,
        ideal_equal,
    };
    if !(psi_in_kernel && phi_lifts_psi && s2_d3 && s2_d2) {
        return Err(Error::Internal(format!("structure maps fail their identities:\n{checks}")));
    }
    if !ideal_equal {
        return Err(Error::Internal(format!("sub-Pfaffians do not generate the ideal:\n{checks}")));
    }
    Ok(PfaffianizationResult { skew, s1, s2, resolution: res, checks })
}
