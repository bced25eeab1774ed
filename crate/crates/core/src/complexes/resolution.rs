use crate::field::Field;
use crate::groebner::image_and_syzygies;
use crate::ring::{Polynomial, Ring};

use super::presented::split_unit;
use super::{FreeComplex, GradedFreeModule, GradedMap, PresentedModule};

/// Minimal graded free resolution `F_ℓ → … → F_1 → F_0 → M`, computing at
/// most `length_bound` differentials.
pub fn minimal_free_resolution<K: Field>(m: &PresentedModule<K>, length_bound: usize) -> FreeComplex<K> {
    let p = m.pruned();
    let f0 = p.generators().clone();
    if length_bound == 0 || p.presentation().ncols() == 0 {
        return FreeComplex::single(f0, 0);
    }
    let mut maps = vec![p.presentation().clone()];
    while maps.len() < length_bound {
        let (_, syz) = image_and_syzygies(maps.last().expect("nonempty"));
        if syz.ncols() == 0 {
            break;
        }
        maps.push(syz);
    }
    let mut modules = vec![f0];
    modules.extend(maps.iter().map(|d| d.source().clone()));
    FreeComplex::from_parts_unchecked(0, modules, maps)
}

/// Splits off every unit entry, giving a homotopy-equivalent minimal complex.
pub fn minimize<K: Field>(c: &FreeComplex<K>) -> FreeComplex<K> {
    let mut modules: Vec<GradedFreeModule<K>> = c.modules().to_vec();
    let mut maps: Vec<GradedMap<K>> = c.differentials().to_vec();
    loop {
        let hit = maps.iter().enumerate().find_map(|(k, d)| d.find_unit().map(|(i, j)| (k, i, j)));
        let Some((k, i, j)) = hit else { break };
        // maps[k] = d: F_{k+1} → F_k (relative indices); drop row i and column j
        let keep_col: Vec<usize> = (0..maps[k].ncols()).filter(|&c| c != j).collect();
        let keep_row: Vec<usize> = (0..maps[k].nrows()).filter(|&r| r != i).collect();
        maps[k] = split_unit(&maps[k], i, j);
        if k + 1 < maps.len() {
            maps[k + 1] = maps[k + 1].select_rows(&keep_col);
        }
        if k > 0 {
            maps[k - 1] = maps[k - 1].select_columns(&keep_row);
        }
        modules[k] = maps[k].target().clone();
        modules[k + 1] = maps[k].source().clone();
    }
    FreeComplex::from_parts_unchecked(c.lo(), modules, maps).trimmed()
}

/// `Hom(C, S(-e))`, reindexed so that `D_k = Hom(F_{lo+hi-k}, S(-e))` and
/// the result is again supported in `[lo, hi]`. The transpose of `d_j` is
/// negated when `j - lo` is even; for complexes of odd length this makes
/// the operation an involution, for even length an involution up to the
/// sign of every differential.
pub fn dual_twist<K: Field>(c: &FreeComplex<K>, e: i64) -> FreeComplex<K> {
    let (lo, hi) = (c.lo(), c.hi());
    let modules = (lo..=hi).map(|k| c.module(lo + hi - k).dual(e)).collect();
    let maps = (lo + 1..=hi)
        .map(|k| {
            let j = lo + hi - k + 1;
            let t = c.differential(j).dual(e);
            if (j - lo) % 2 == 0 {
                t.neg()
            } else {
                t
            }
        })
        .collect();
    FreeComplex::from_parts_unchecked(lo, modules, maps)
}

/// Which side of the cut [`naive_truncate`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Indices `k ≥ r`.
    AtLeast,
    /// Indices `k < r`.
    Below,
}

/// Zeroes out all terms on the other side of `r`, keeping the remaining maps.
/// Indices are those of the stored (homological) complex.
pub fn naive_truncate<K: Field>(c: &FreeComplex<K>, r: i64, side: Side) -> FreeComplex<K> {
    let keep = |k: i64| match side {
        Side::AtLeast => k >= r,
        Side::Below => k < r,
    };
    let (lo, hi) = (c.lo(), c.hi());
    let modules: Vec<_> =
        (lo..=hi).map(|k| if keep(k) { c.module(k) } else { GradedFreeModule::zero(c.ring()) }).collect();
    let maps = (lo + 1..=hi)
        .map(|k| {
            if keep(k) && keep(k - 1) {
                c.differential(k)
            } else {
                GradedMap::zero(modules[(k - lo) as usize].clone(), modules[(k - lo - 1) as usize].clone())
            }
        })
        .collect();
    FreeComplex::from_parts_unchecked(lo, modules, maps).trimmed()
}

/// `χ(O_{P^N}(e)) = C(e + N, N)` as a polynomial in `e`, valid for every integer `e`.
pub fn chi_line_bundle(n: usize, e: i64) -> i128 {
    // (e+1)(e+2)…(e+N)/N!
    let mut num: i128 = 1;
    for i in 1..=n as i128 {
        num *= e as i128 + i;
    }
    num / (1..=n as i128).product::<i128>()
}

/// `Σ_k (-1)^k Σ_j χ(O_{P^N}(m - a_{k,j}))`.
pub fn euler_characteristic<K: Field>(c: &FreeComplex<K>, m: i64) -> i128 {
    let n = c.ring().projective_dim();
    let mut total = 0i128;
    for k in c.lo()..=c.hi() {
        let s: i128 = c.module(k).twists().iter().map(|a| chi_line_bundle(n, m - a)).sum();
        if k.rem_euclid(2) == 0 {
            total += s;
        } else {
            total -= s;
        }
    }
    total
}

/// Koszul complex of `f_1, …, f_n` with basis of `Λ^k` in lexicographic
/// order and `d(e_I) = Σ_s (-1)^s f_{i_s} e_{I ∖ i_s}`.
pub fn koszul_complex<K: Field>(ring: &Ring<K>, f: &[Polynomial<K>]) -> crate::error::Result<FreeComplex<K>> {
    let n = f.len();
    let mut degs = Vec::with_capacity(n);
    for p in f {
        match p.total_degree() {
            Some(Ok(d)) => degs.push(d as i64),
            _ => return Err(crate::error::Error::Inhomogeneous(p.to_string())),
        }
    }
    if n == 0 {
        return Ok(FreeComplex::single(GradedFreeModule::new(ring, vec![0]), 0));
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=n).map(|k| super::linalg::subsets(n, k)).collect();
    let module = |k: usize| {
        GradedFreeModule::new(ring, bases[k].iter().map(|s| s.iter().map(|&i| degs[i]).sum()).collect())
    };
    let mut maps = Vec::with_capacity(n);
    for k in 1..=n {
        let rows = &bases[k - 1];
        let mut entries = vec![vec![ring.zero(); bases[k].len()]; rows.len()];
        for (j, set) in bases[k].iter().enumerate() {
            for s in 0..set.len() {
                let mut smaller = set.clone();
                smaller.remove(s);
                let i = rows.binary_search(&smaller).expect("subset present");
                entries[i][j] = if s % 2 == 0 { f[set[s]].clone() } else { -&f[set[s]] };
            }
        }
        maps.push(GradedMap::new(module(k), module(k - 1), entries)?);
    }
    FreeComplex::new(0, maps)
}
