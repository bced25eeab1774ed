//! Frobenius, the tensor square of a free module split by the swap `t = 1 + T`,
//! the second exterior and symmetric powers of complexes and of presented
//! modules, and the check of top intermediate cohomology of `Λ²E`.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::cohomology::{horrocks_bundle, sheaf_cohomology_table, CohomologyTable, FiniteLengthModule};
use crate::complexes::{FreeComplex, GradedFreeModule, GradedMap, PresentedModule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{minimal_generators, syzygies};
use crate::ring::{Polynomial, Ring};

/// Squares every entry; twists double. Characteristic 2 only.
pub fn frobenius_map<K: Field>(m: &GradedMap<K>) -> Result<GradedMap<K>> {
    if !K::is_char_two() {
        return Err(Error::CharacteristicNotTwo);
    }
    let ring = m.ring();
    let double = |f: &GradedFreeModule<K>| GradedFreeModule::new(ring, f.twists().iter().map(|a| 2 * a).collect());
    let entries = m.entries().iter().map(|r| r.iter().map(|p| p * p).collect()).collect();
    GradedMap::new(double(m.source()), double(m.target()), entries)
}

/// [`frobenius_map`] applied to every differential.
pub fn frobenius<K: Field>(c: &FreeComplex<K>) -> Result<FreeComplex<K>> {
    let maps = c.differentials().iter().map(frobenius_map).collect::<Result<Vec<_>>>()?;
    if maps.is_empty() {
        if !K::is_char_two() {
            return Err(Error::CharacteristicNotTwo);
        }
        let m = c.module(c.lo());
        return Ok(FreeComplex::single(
            GradedFreeModule::new(c.ring(), m.twists().iter().map(|a| 2 * a).collect()),
            c.lo(),
        ));
    }
    FreeComplex::new(c.lo(), maps)
}

fn pairs(n: usize, diagonal: bool) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (if diagonal { i } else { i + 1 }..n).map(move |j| (i, j))).collect()
}

/// `V ⊗ V` for `V = ⊕ S(-a_i)` with the swap `t = 1 + T` and its kernel,
/// image and cokernel. In characteristic 2, `Λ² = im t ⊂ D₂ = ker t` with
/// `D₂/Λ² ≅ F(V)` and `0 → F(V) → S₂ = coker t → Λ² → 0`; otherwise
/// `ker t = Λ²` and `im t ≅ coker t ≅ S₂`.
#[derive(Clone, Debug, Serialize)]
pub struct TensorSquareDecomposition {
    pub rank: usize,
    pub char_two: bool,
    pub tensor_twists: Vec<i64>,
    pub d2_twists: Vec<i64>,
    pub lambda2_twists: Vec<i64>,
    pub s2_twists: Vec<i64>,
    /// `D₂/Λ²` in characteristic 2, empty otherwise.
    pub frobenius_twists: Vec<i64>,
    /// Matrix of `t` on the basis `e_i ⊗ e_j` (row-major pairs).
    pub t_matrix: Vec<Vec<i64>>,
    /// Rank bookkeeping of the sequences above.
    pub exact: bool,
}

impl fmt::Display for TensorSquareDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank V = {}, characteristic {}", self.rank, if self.char_two { "2" } else { "not 2" })?;
        writeln!(f, "V⊗V: {}", self.tensor_twists.len())?;
        writeln!(f, "D2: {}", self.d2_twists.len())?;
        writeln!(f, "Lambda2: {}", self.lambda2_twists.len())?;
        writeln!(f, "S2: {}", self.s2_twists.len())?;
        if self.char_two {
            writeln!(f, "F(V): {}", self.frobenius_twists.len())?;
        }
        write!(f, "sequences exact: {}", self.exact)
    }
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

pub fn tensor_square_decomposition<K: Field>(ring: &Ring<K>, twists: &[i64]) -> TensorSquareDecomposition {
    let r = twists.len();
    let char_two = K::is_char_two();
    let tensor_twists: Vec<i64> = (0..r * r).map(|k| twists[k / r] + twists[k % r]).collect();
    let v2 = GradedFreeModule::new(ring, tensor_twists.clone());
    let mut t_int = vec![vec![0i64; r * r]; r * r];
    for i in 0..r {
        for j in 0..r {
            t_int[i * r + j][i * r + j] += 1;
            t_int[j * r + i][i * r + j] += 1;
        }
    }
    let entries =
        t_int.iter().map(|row| row.iter().map(|&c| ring.constant(K::from_i64(c))).collect()).collect();
    let t = GradedMap::new(v2.clone(), v2, entries).expect("constant entries on equal twists");
    let kernel = sorted(syzygies(&t).source().twists().to_vec());
    let image = sorted(minimal_generators(&t).iter().map(|&j| t.source().twists()[j]).collect());
    let coker = sorted(PresentedModule::new(t.clone()).pruned().generators().twists().to_vec());
    let frob_expected = sorted(twists.iter().map(|a| 2 * a).collect());
    let (d2, lambda2, s2, frobenius_twists, exact);
    if char_two {
        let mut rest = kernel.clone();
        for a in &image {
            if let Some(pos) = rest.iter().position(|b| b == a) {
                rest.remove(pos);
            }
        }
        exact = kernel.len() == image.len() + r
            && rest == frob_expected
            && coker.len() == rest.len() + image.len()
            && image.len() == r * r.saturating_sub(1) / 2;
        d2 = kernel;
        lambda2 = image;
        s2 = coker;
        frobenius_twists = rest;
    } else {
        exact = kernel.len() + image.len() == r * r && image.len() == r * (r + 1) / 2 && coker == kernel;
        lambda2 = kernel;
        d2 = image.clone();
        s2 = image;
        frobenius_twists = Vec::new();
    }
    TensorSquareDecomposition {
        rank: r,
        char_two,
        tensor_twists,
        d2_twists: d2,
        lambda2_twists: lambda2,
        s2_twists: s2,
        frobenius_twists,
        t_matrix: t_int,
        exact,
    }
}

/// What a basis block of a term of `Λ²(G*)` or `S₂(G*)` is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// `G^p ⊗ G^q` with `p < q`.
    Tensor { p: i64, q: i64 },
    /// `Λ²(G^p)`.
    Exterior { p: i64 },
    /// `S₂(G^p)`.
    Symmetric { p: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    pub offset: usize,
    pub len: usize,
}

/// `Λ²(G*)` (or `S₂(G*)`) as the `∓1`-eigenspace of the swap on `G* ⊗ G*`.
/// Cohomological degrees `i` are stored at homological index `-i`.
#[derive(Clone)]
pub struct TensorSquareComplex<K> {
    pub source: FreeComplex<K>,
    pub complex: FreeComplex<K>,
    /// `blocks[i - lo]` for cohomological degree `i` starting at `lo`.
    pub blocks: Vec<Vec<Block>>,
    pub lo: i64,
}

impl<K: Field> fmt::Debug for TensorSquareComplex<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorSquareComplex({:?}, {})", self.blocks, self.complex)
    }
}

impl<K: Field> TensorSquareComplex<K> {
    /// Rank of the term in cohomological degree `i`.
    pub fn rank(&self, i: i64) -> usize {
        self.complex.module(-i).rank()
    }
}

/// One basis vector: a `G^p ⊗ G^q` position with the lower factor first.
type Key = (i64, usize, i64, usize);

struct Layout {
    /// per degree: basis keys and the block list
    keys: Vec<Vec<Key>>,
    index: Vec<HashMap<Key, usize>>,
    blocks: Vec<Vec<Block>>,
}

/// `Λ²(G*)` for a cohomological complex `G*` (degree `q` at homological index `-q`).
pub fn lambda2_complex<K: Field>(g: &FreeComplex<K>) -> Result<TensorSquareComplex<K>> {
    square_complex(g, -1)
}

/// `S₂(G*)`, the `+1`-eigenspace.
pub fn sym2_complex<K: Field>(g: &FreeComplex<K>) -> Result<TensorSquareComplex<K>> {
    square_complex(g, 1)
}

fn square_complex<K: Field>(g: &FreeComplex<K>, eigen: i64) -> Result<TensorSquareComplex<K>> {
    if K::is_char_two() {
        return Err(Error::CharacteristicTwo);
    }
    let ring = g.ring();
    let (qlo, qhi) = (-g.hi(), -g.lo());
    let rank = |q: i64| if q < qlo || q > qhi { 0 } else { g.module(-q).rank() };
    let twist = |q: i64, a: usize| g.module(-q).twists()[a];
    let (ilo, ihi) = (2 * qlo, 2 * qhi);
    let mut layout = Layout { keys: Vec::new(), index: Vec::new(), blocks: Vec::new() };
    for i in ilo..=ihi {
        let mut keys = Vec::new();
        let mut blocks = Vec::new();
        for p in qlo..=qhi {
            let q = i - p;
            if q < p || q > qhi {
                continue;
            }
            let offset = keys.len();
            let kind = if p < q {
                for a in 0..rank(p) {
                    for b in 0..rank(q) {
                        keys.push((p, a, q, b));
                    }
                }
                BlockKind::Tensor { p, q }
            } else {
                // e_a ⊗ e_a + eigen·(-1)^p e_a ⊗ e_a survives exactly when the sign is +1
                let sym = eigen * if p % 2 == 0 { 1 } else { -1 } > 0;
                for (a, b) in pairs(rank(p), sym) {
                    keys.push((p, a, p, b));
                }
                if sym {
                    BlockKind::Symmetric { p }
                } else {
                    BlockKind::Exterior { p }
                }
            };
            blocks.push(Block { kind, offset, len: keys.len() - offset });
        }
        layout.index.push(keys.iter().enumerate().map(|(n, k)| (*k, n)).collect());
        layout.keys.push(keys);
        layout.blocks.push(blocks);
    }
    let module = |i: i64| {
        let keys = &layout.keys[(i - ilo) as usize];
        GradedFreeModule::new(ring, keys.iter().map(|&(p, a, q, b)| twist(p, a) + twist(q, b)).collect())
    };
    // d_G: G^q → G^{q+1} as entries[row in G^{q+1}][col in G^q]
    let dg = |q: i64| -> Option<GradedMap<K>> { (q + 1 <= qhi && q >= qlo).then(|| g.differential(-q)) };
    let mut maps = Vec::new();
    // homological differentials d_k : H^{-k} → H^{-k+1}, for k from -ihi+1 to -ilo
    for k in (-ihi + 1)..=(-ilo) {
        let i = -k;
        let src = module(i);
        let tgt = module(i + 1);
        let tidx = &layout.index[(i + 1 - ilo) as usize];
        let mut entries = vec![vec![ring.zero(); src.rank()]; tgt.rank()];
        for (col, &(p, a, q, b)) in layout.keys[(i - ilo) as usize].iter().enumerate() {
            // the basis vector is x_a ⊗ y_b + eigen·(-1)^{pq} y_b ⊗ x_a (one term when p = q, a = b)
            let mut terms: Vec<(i64, usize, i64, usize, i64)> = vec![(p, a, q, b, 1)];
            if !(p == q && a == b) {
                let s = eigen * if (p * q) % 2 == 0 { 1 } else { -1 };
                terms.push((q, b, p, a, s));
            }
            let mut acc: HashMap<usize, Polynomial<K>> = HashMap::new();
            for (p1, a1, q1, b1, s) in terms {
                // d(x ⊗ y) = dx ⊗ y + (-1)^{p1} x ⊗ dy
                if let Some(d) = dg(p1) {
                    for (c, coef) in d.column(a1).iter().enumerate() {
                        if !coef.is_zero() {
                            add_coordinate(&mut acc, tidx, (p1 + 1, c, q1, b1), coef, s);
                        }
                    }
                }
                if let Some(d) = dg(q1) {
                    let sign = if p1 % 2 == 0 { s } else { -s };
                    for (c, coef) in d.column(b1).iter().enumerate() {
                        if !coef.is_zero() {
                            add_coordinate(&mut acc, tidx, (p1, a1, q1 + 1, c), coef, sign);
                        }
                    }
                }
            }
            for (row, v) in acc {
                entries[row][col] = v;
            }
        }
        maps.push(GradedMap::new(src, tgt, entries)?);
    }
    let complex = if maps.is_empty() {
        FreeComplex::single(module(ilo), -ilo)
    } else {
        FreeComplex::new(-ihi, maps)?
    };
    Ok(TensorSquareComplex { source: g.clone(), complex, blocks: layout.blocks, lo: ilo })
}

/// Adds `s·coef` at the eigenspace coordinate of the tensor basis element
/// `x_{a} ⊗ y_{b}` (degrees `p`, `q`). Only positions with the lower factor
/// first (or `a ≤ b` on the diagonal) are coordinates; the others are
/// determined by the eigenvector condition and skipped.
fn add_coordinate<K: Field>(
    acc: &mut HashMap<usize, Polynomial<K>>,
    index: &HashMap<Key, usize>,
    (p, a, q, b): Key,
    coef: &Polynomial<K>,
    s: i64,
) {
    if let Some(&row) = index.get(&(p, a, q, b)) {
        let term = if s > 0 { coef.clone() } else { -coef };
        let e = acc.entry(row).or_insert_with(|| coef.ring().zero());
        *e = &*e + &term;
    }
}

fn square_of_module<K: Field>(m: &PresentedModule<K>, exterior: bool) -> PresentedModule<K> {
    let ring = m.ring();
    let phi = m.presentation();
    let f = phi.target().twists();
    let basis = pairs(f.len(), !exterior);
    let index: HashMap<(usize, usize), usize> = basis.iter().enumerate().map(|(n, &k)| (k, n)).collect();
    let target = GradedFreeModule::new(ring, basis.iter().map(|&(i, j)| f[i] + f[j]).collect());
    let mut src_twists = Vec::new();
    let mut columns: Vec<Vec<Polynomial<K>>> = Vec::new();
    for rel in 0..phi.ncols() {
        for k in 0..f.len() {
            src_twists.push(phi.source().twists()[rel] + f[k]);
            let mut col = vec![ring.zero(); basis.len()];
            for (i, c) in phi.column(rel).iter().enumerate() {
                if c.is_zero() || (exterior && i == k) {
                    continue;
                }
                let (lo, hi) = (i.min(k), i.max(k));
                let row = index[&(lo, hi)];
                col[row] = if exterior && i > k { &col[row] - c } else { &col[row] + c };
            }
            columns.push(col);
        }
    }
    let entries = (0..basis.len()).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let source = GradedFreeModule::new(ring, src_twists);
    PresentedModule::new(GradedMap::new(source, target, entries).expect("degrees add up"))
}

/// `Λ²M = coker(R ⊗ F → Λ²F)`, `r ⊗ f ↦ φ(r) ∧ f`, for `M = coker(φ: R → F)`.
pub fn exterior_square<K: Field>(m: &PresentedModule<K>) -> PresentedModule<K> {
    square_of_module(m, true)
}

/// `S₂M = coker(R ⊗ F → S₂F)`, `r ⊗ f ↦ φ(r) f`.
pub fn symmetric_square<K: Field>(m: &PresentedModule<K>) -> PresentedModule<K> {
    square_of_module(m, false)
}

/// Comparison of `H^{2r}_*(Λ²E)` with `S₂` or `Λ²` of `H^r_*(E) = M` for
/// the syzygy bundle `E` of a finite-length module `M`.
#[derive(Clone, Debug, Serialize)]
pub struct MaxCohomReport {
    pub r: usize,
    pub n: usize,
    pub char_two: bool,
    /// `"S2"` or `"Lambda2"`.
    pub expected_functor: &'static str,
    pub lambda2_table: CohomologyTable,
    /// `dim T₂(M)_t` over the window.
    pub expected_row: Vec<u64>,
    /// Rows `2r < i < N` of `Λ²E` vanish.
    pub vanishing_holds: bool,
    pub row_matches: bool,
    pub holds: bool,
}

impl fmt::Display for MaxCohomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "r = {}, N = {}, characteristic {}: row {} of Lambda2 E against {}(H^{})",
            self.r,
            self.n,
            if self.char_two { "2" } else { "not 2" },
            2 * self.r,
            self.expected_functor,
            self.r
        )?;
        writeln!(f, "{}", self.lambda2_table)?;
        writeln!(f, "expected: {:?}", self.expected_row)?;
        writeln!(f, "vanishing above 2r: {}", self.vanishing_holds)?;
        write!(f, "result: {}", if self.holds { "holds" } else { "FAILED" })
    }
}

/// Builds `E = horrocks_bundle(M, r, N)` and compares `h^{2r}(Λ²E(t))` with
/// `dim T₂(M)_t`, where `T₂ = S₂` in characteristic 2 or for odd `r`, and
/// `Λ²` for even `r` otherwise.
pub fn char2_max_cohom_check<K: Field>(
    m: &FiniteLengthModule<K>,
    r: usize,
    big_n: usize,
    window: RangeInclusive<i64>,
) -> Result<MaxCohomReport> {
    if r == 0 || 2 * r >= big_n {
        return Err(Error::InvalidArgument(format!("need 0 < r < N/2, got r = {r}, N = {big_n}")));
    }
    let e = horrocks_bundle(m, r, big_n)?;
    let lambda2 = exterior_square(&e);
    let table = sheaf_cohomology_table(&lambda2, window.clone());
    let char_two = K::is_char_two();
    let use_sym = char_two || r % 2 == 1;
    let base = m.module.pruned();
    let t2 = if use_sym { symmetric_square(&base) } else { exterior_square(&base) };
    let expected_row: Vec<u64> = window.clone().map(|t| t2.hilbert_function(t)).collect();
    let row_matches = table.row(2 * r) == expected_row.as_slice();
    let vanishing_holds = (2 * r + 1..big_n).all(|i| table.row(i).iter().all(|&x| x == 0));
    Ok(MaxCohomReport {
        r,
        n: big_n,
        char_two,
        expected_functor: if use_sym { "S2" } else { "Lambda2" },
        lambda2_table: table,
        expected_row,
        vanishing_holds,
        row_matches,
        holds: row_matches && vanishing_holds,
    })
}
