//! Graded Ext, local and sheaf cohomology dimensions, all computed through
//! graded local duality from a minimal free resolution.

use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::complexes::{
    minimal_free_resolution, FreeComplex, GradedFreeModule, GradedMap, PresentedModule,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::syzygies;

/// `Ext^j_S(M, S(-N-1))` for every `j = 0..=N+1`, sharing one resolution.
pub struct ExtModules<K> {
    nvars: usize,
    modules: Vec<PresentedModule<K>>,
}

impl<K: Field> ExtModules<K> {
    pub fn compute(m: &PresentedModule<K>) -> Self {
        let nvars = m.ring().nvars();
        let res = minimal_free_resolution(m, nvars + 1);
        let modules = (0..=nvars).map(|j| ext_from_resolution(&res, j, nvars as i64)).collect();
        ExtModules { nvars, modules }
    }

    pub fn get(&self, j: usize) -> &PresentedModule<K> {
        &self.modules[j]
    }

    /// `dim H^i_𝔪(M)_t = dim Ext^{N+1-i}(M, S(-N-1))_{-t}`.
    pub fn local_cohomology_dim(&self, i: usize, t: i64) -> u64 {
        if i > self.nvars {
            return 0;
        }
        self.modules[self.nvars - i].hilbert_function(-t)
    }

    /// Whether `H^i_𝔪(M) ≠ 0`.
    pub fn local_cohomology_nonzero(&self, i: usize) -> bool {
        i <= self.nvars && !self.modules[self.nvars - i].is_zero()
    }
}

/// `Ext^j_S(M, S(-N-1))` presented as a graded module.
pub fn ext_module<K: Field>(m: &PresentedModule<K>, j: usize) -> PresentedModule<K> {
    let nvars = m.ring().nvars();
    let res = minimal_free_resolution(m, nvars + 1);
    ext_from_resolution(&res, j, nvars as i64)
}

/// Cohomology at `F_j^∨(-w)` of the dual of a resolution starting at 0.
fn ext_from_resolution<K: Field>(res: &FreeComplex<K>, j: usize, w: i64) -> PresentedModule<K> {
    let ring = res.ring();
    let len = res.hi() as usize;
    if j > len {
        return PresentedModule::free(GradedFreeModule::zero(ring));
    }
    let fj = res.module(j as i64).dual(w);
    // kernel of d_{j+1}^∨ : F_j^∨ → F_{j+1}^∨
    let kernel = if j == len { GradedMap::identity(&fj) } else { syzygies(&res.differential(j as i64 + 1).dual(w)) };
    if kernel.ncols() == 0 {
        return PresentedModule::free(GradedFreeModule::zero(ring));
    }
    // image of d_j^∨ : F_{j-1}^∨ → F_j^∨
    let image = if j == 0 {
        GradedMap::zero(GradedFreeModule::zero(ring), fj.clone())
    } else {
        res.differential(j as i64).dual(w)
    };
    let both = kernel.hconcat(&image).expect("common target");
    let rows: Vec<usize> = (0..kernel.ncols()).collect();
    let relations = syzygies(&both).select_rows(&rows);
    PresentedModule::new(relations).pruned()
}

/// Rows of cohomology dimensions over a window of twists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    /// `"local"` for `H^i_𝔪(M)_t`, `"sheaf"` for `H^i(P^N, M~(t))`.
    pub kind: &'static str,
    /// Projective dimension `N` of the ambient space.
    pub n: usize,
    pub t_lo: i64,
    pub t_hi: i64,
    /// `rows[i][t - t_lo]`.
    pub rows: Vec<Vec<u64>>,
}

impl CohomologyTable {
    pub fn get(&self, i: usize, t: i64) -> u64 {
        if t < self.t_lo || t > self.t_hi {
            panic!("twist {t} outside the window {}..={}", self.t_lo, self.t_hi);
        }
        self.rows.get(i).map_or(0, |r| r[(t - self.t_lo) as usize])
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i]
    }

    pub fn window(&self) -> RangeInclusive<i64> {
        self.t_lo..=self.t_hi
    }

    /// Rows `0 < i < N` are all zero.
    pub fn intermediate_vanish(&self) -> bool {
        self.rows.iter().enumerate().filter(|(i, _)| *i > 0 && *i < self.n).all(|(_, r)| r.iter().all(|&x| x == 0))
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        let heads: Vec<String> = self.window().map(|t| t.to_string()).collect();
        let width = cells.iter().flatten().chain(&heads).map(|s| s.len()).max().unwrap_or(1);
        let label = if self.kind == "local" { "H^i_m" } else { "h^i" };
        write!(f, "{label:>6} t:")?;
        for h in &heads {
            write!(f, " {h:>width$}")?;
        }
        for (i, row) in cells.iter().enumerate() {
            write!(f, "\n{:>6}  :", format!("i={i}"))?;
            for c in row {
                write!(f, " {c:>width$}")?;
            }
        }
        Ok(())
    }
}

/// Twists from the smallest resolution twist minus `N + 2` to the largest plus `N + 2`.
pub fn default_window<K: Field>(m: &PresentedModule<K>) -> RangeInclusive<i64> {
    let nvars = m.ring().nvars();
    let res = minimal_free_resolution(m, nvars + 1);
    let all: Vec<i64> = res.twists().into_iter().flatten().collect();
    let lo = all.iter().copied().min().unwrap_or(0);
    let hi = all.iter().copied().max().unwrap_or(0);
    let pad = nvars as i64 + 1;
    (lo - pad)..=(hi + pad)
}

/// `dim H^i_𝔪(M)_t` for `0 ≤ i ≤ N + 1` over the window.
pub fn local_cohomology_dims<K: Field>(m: &PresentedModule<K>, window: RangeInclusive<i64>) -> CohomologyTable {
    let ext = ExtModules::compute(m);
    local_table(&ext, window)
}

fn local_table<K: Field>(ext: &ExtModules<K>, window: RangeInclusive<i64>) -> CohomologyTable {
    let rows = (0..=ext.nvars).map(|i| window.clone().map(|t| ext.local_cohomology_dim(i, t)).collect()).collect();
    CohomologyTable { kind: "local", n: ext.nvars - 1, t_lo: *window.start(), t_hi: *window.end(), rows }
}

/// `h^i(M~(t))` for `0 ≤ i ≤ N`, from the local cohomology of `M`.
pub fn sheaf_cohomology_table<K: Field>(m: &PresentedModule<K>, window: RangeInclusive<i64>) -> CohomologyTable {
    let ext = ExtModules::compute(m);
    sheaf_table(m, &ext, window)
}

fn sheaf_table<K: Field>(m: &PresentedModule<K>, ext: &ExtModules<K>, window: RangeInclusive<i64>) -> CohomologyTable {
    let n = ext.nvars - 1;
    let mut rows = Vec::with_capacity(n + 1);
    rows.push(
        window
            .clone()
            .map(|t| {
                let v = m.hilbert_function(t) as i64 - ext.local_cohomology_dim(0, t) as i64
                    + ext.local_cohomology_dim(1, t) as i64;
                v as u64
            })
            .collect(),
    );
    for i in 1..=n {
        rows.push(window.clone().map(|t| ext.local_cohomology_dim(i + 1, t)).collect());
    }
    CohomologyTable { kind: "sheaf", n, t_lo: *window.start(), t_hi: *window.end(), rows }
}

/// A graded module known to have finite length, with its Hilbert function.
pub struct FiniteLengthModule<K> {
    pub module: PresentedModule<K>,
    /// `(t, dim M_t)` for every `t` with `M_t ≠ 0`.
    pub hilbert: Vec<(i64, u64)>,
}

impl<K: Field> Clone for FiniteLengthModule<K> {
    fn clone(&self) -> Self {
        FiniteLengthModule { module: self.module.clone(), hilbert: self.hilbert.clone() }
    }
}

impl<K: Field> fmt::Debug for FiniteLengthModule<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteLengthModule({:?}, {:?})", self.module, self.hilbert)
    }
}

impl<K: Field> FiniteLengthModule<K> {
    pub fn new(module: PresentedModule<K>) -> Result<Self> {
        if !module.is_finite_length() {
            return Err(Error::NotFiniteLength);
        }
        let hs = module.hilbert_series();
        let hilbert = match (hs.bottom_degree(), hs.top_degree()) {
            (Some(lo), Some(hi)) => {
                (lo..=hi).map(|t| (t, module.hilbert_function(t))).filter(|&(_, d)| d > 0).collect()
            }
            _ => Vec::new(),
        };
        Ok(FiniteLengthModule { module, hilbert })
    }

    pub fn length(&self) -> u64 {
        self.hilbert.iter().map(|&(_, d)| d).sum()
    }

    pub fn hilbert_function(&self, t: i64) -> u64 {
        self.hilbert.iter().find(|&&(s, _)| s == t).map_or(0, |&(_, d)| d)
    }
}

/// The syzygy module `E = ker(F_i → F_{i-1})` of a minimal resolution of a
/// finite-length `M` over `k[x_0..x_N]`, presented by `F_{i+2} → F_{i+1}`.
/// Its sheaf has `H^i_*(E~) ≅ M` and no other intermediate cohomology.
pub fn horrocks_bundle<K: Field>(m: &FiniteLengthModule<K>, i: usize, big_n: usize) -> Result<PresentedModule<K>> {
    let ring = m.module.ring();
    if ring.projective_dim() != big_n {
        return Err(Error::InvalidArgument(format!(
            "N = {big_n} but the ring has {} variables",
            ring.nvars()
        )));
    }
    if i == 0 || i >= big_n {
        return Err(Error::InvalidArgument(format!("need 0 < i < N, got i = {i}, N = {big_n}")));
    }
    let res = minimal_free_resolution(&m.module, big_n + 2);
    let hi = res.hi() as usize;
    let target = res.module(i as i64 + 1);
    let presentation = if i + 2 <= hi {
        res.differential(i as i64 + 2)
    } else {
        GradedMap::zero(GradedFreeModule::zero(ring), target)
    };
    Ok(PresentedModule::new(presentation))
}

/// Dimension-level check of `H^i_*(F_2) ≅ H^{N-i}_*(F_1)^*` twisted by `l`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub l: i64,
    pub f2: CohomologyTable,
    pub f1: CohomologyTable,
    pub holds: bool,
    /// `(i, t)` with `h^i(F_2(t)) ≠ h^{N-i}(F_1(l - t))`.
    pub violations: Vec<(usize, i64)>,
}

impl fmt::Display for DualityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "duality (N = {}, l = {}): {}", self.n, self.l, if self.holds { "holds" } else { "FAILED" })?;
        writeln!(f, "F2:\n{}", self.f2)?;
        write!(f, "F1 (twists l - t):\n{}", self.f1)?;
        for (i, t) in &self.violations {
            write!(f, "\nviolated at i = {i}, t = {t}")?;
        }
        Ok(())
    }
}

/// Compares the full cohomology tables of the middle terms of
/// `0 → L → F_2 → F_1 → S`: `h^i(F_2(t)) = h^{N-i}(F_1(l - t))` for `t` in the window.
pub fn duality_check<K: Field>(c: &FreeComplex<K>, l: i64, window: RangeInclusive<i64>) -> Result<DualityReport> {
    if c.lo() != 0 || c.hi() != 3 || c.module(0).rank() != 1 || c.module(3).rank() != 1 {
        return Err(Error::Shape(format!(
            "expected 0 → L → F_2 → F_1 → S, got ranks {:?} from index {}",
            c.ranks(),
            c.lo()
        )));
    }
    Ok(duality_check_modules(&c.module(1), &c.module(2), l, window))
}

/// [`duality_check`] on the two middle modules directly.
pub fn duality_check_modules<K: Field>(
    f1: &GradedFreeModule<K>,
    f2: &GradedFreeModule<K>,
    l: i64,
    window: RangeInclusive<i64>,
) -> DualityReport {
    let n = f1.ring().projective_dim();
    let t2 = sheaf_cohomology_table(&PresentedModule::free(f2.clone()), window.clone());
    let reflected = (l - *window.end())..=(l - *window.start());
    let t1 = sheaf_cohomology_table(&PresentedModule::free(f1.clone()), reflected);
    let mut violations = Vec::new();
    for i in 0..=n {
        for t in window.clone() {
            if t2.get(i, t) != t1.get(n - i, l - t) {
                violations.push((i, t));
            }
        }
    }
    DualityReport { n, l, holds: violations.is_empty(), f2: t2, f1: t1, violations }
}

/// Auslander–Buchsbaum: `pd M = (N + 1) - depth M`, with depth read from
/// the first nonvanishing local cohomology.
#[derive(Clone, Debug, Serialize)]
pub struct AbBoundsReport {
    pub nvars: usize,
    pub projective_dimension: usize,
    pub depth: usize,
    pub holds: bool,
}

impl fmt::Display for AbBoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pd = {}, depth = {}, N + 1 - depth = {}: {}",
            self.projective_dimension,
            self.depth,
            self.nvars - self.depth,
            if self.holds { "ok" } else { "FAILED" }
        )
    }
}

pub fn ab_bounds_check<K: Field>(m: &PresentedModule<K>) -> Result<AbBoundsReport> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    let nvars = m.ring().nvars();
    let res = minimal_free_resolution(m, nvars + 1);
    let pd = res.hi() as usize;
    // H^i_𝔪(M) is dual to Ext^{N+1-i}(M, S(-N-1)), so the depth comes from
    // the highest nonvanishing Ext; scanning from the top stops early
    let depth = (0..=nvars)
        .find(|&i| !ext_from_resolution(&res, nvars - i, nvars as i64).is_zero())
        .unwrap_or(nvars);
    Ok(AbBoundsReport { nvars, projective_dimension: pd, depth, holds: pd + depth == nvars })
}
