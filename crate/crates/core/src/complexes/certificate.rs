//! The Buchsbaum–Eisenbud exactness criterion with an explicit certificate.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{Field, Fp};
use crate::groebner::{image_and_syzygies, Ideal};
use crate::pfaffian::pfaffian_entries;
use crate::ring::{Polynomial, Ring};

use super::linalg::{bareiss_rank, field_rank, minor, rank_at_point, subsets};
use super::{FreeComplex, GradedFreeModule, GradedMap};

/// Grade of an ideal of minors; the unit ideal has infinite grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl Grade {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Grade::Finite(g) => g >= k,
            Grade::Infinite => true,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Grade::Finite(g) => s.serialize_u64(*g as u64),
            Grade::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Ranks and grades for `0 → F_n → … → F_0`, positions counted from the
/// bottom of the complex. Exactness is certified at positions `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessCertificate {
    pub exact: bool,
    /// Index of the bottom module in the original complex.
    pub lo: i64,
    /// `rank F_k` for `k = 0..=n`.
    pub module_ranks: Vec<usize>,
    /// `r_k = rank d_k` for `k = 1..=n`.
    pub ranks: Vec<usize>,
    /// Grade of the ideal of `r_k × r_k` minors of `d_k`.
    pub grades: Vec<Grade>,
    /// False where only a lower bound on the grade was computed.
    pub grades_exact: Vec<bool>,
    pub violations: Vec<String>,
}

impl fmt::Display for ExactnessCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "exactness: {}", if self.exact { "EXACT" } else { "NOT EXACT" })?;
        writeln!(f, "  module ranks: {:?}", self.module_ranks)?;
        writeln!(f, "  map ranks:    {:?}", self.ranks)?;
        let grades: Vec<String> = self
            .grades
            .iter()
            .zip(&self.grades_exact)
            .map(|(g, e)| if *e { g.to_string() } else { format!(">={g}") })
            .collect();
        writeln!(f, "  grades:       [{}]", grades.join(", "))?;
        for v in &self.violations {
            writeln!(f, "  violated: {v}")?;
        }
        Ok(())
    }
}

const MINOR_LIMIT: usize = 600;

/// Rank of every differential, certified exactly. Ranks at a random point
/// are lower bounds; when they already satisfy `r_k + r_{k+1} = rank F_k`
/// everywhere they are exact (because `d ∘ d = 0` gives the opposite
/// inequality); otherwise fraction-free elimination decides.
fn differential_ranks<K: Field>(c: &FreeComplex<K>) -> Vec<usize> {
    let n = c.length();
    let maps = c.differentials();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let nv = c.ring().nvars();
    let mut lower: Vec<usize> = vec![0; n];
    for _ in 0..2 {
        let point: Vec<K> = (0..nv).map(|_| K::from_i64(rng.gen_range(-10_000..=10_000))).collect();
        for (k, d) in maps.iter().enumerate() {
            lower[k] = lower[k].max(rank_at_point(d.entries(), &point));
        }
    }
    let ranks = c.ranks();
    let tight = (1..=n).all(|k| lower[k - 1] + if k < n { lower[k] } else { 0 } == ranks[k]);
    if tight {
        return lower;
    }
    maps.iter()
        .zip(&lower)
        .map(|(d, &lo)| if lo == d.nrows().min(d.ncols()) { lo } else { bareiss_rank(d.entries()) })
        .collect()
}

fn is_skew<K: Field>(d: &GradedMap<K>) -> bool {
    let n = d.nrows();
    n == d.ncols()
        && (0..n).all(|i| d.entry(i, i).is_zero() && (0..i).all(|j| d.entry(i, j) == &-d.entry(j, i)))
}

/// Grade of the ideal of `r × r` minors; the flag is false when only a
/// subset of minors was used (then the grade is a lower bound).
pub(crate) fn minor_ideal_grade<K: Field>(d: &GradedMap<K>, r: usize, needed: usize) -> (Grade, bool) {
    if r == 0 {
        return (Grade::Infinite, true);
    }
    // the minors are homogeneous, so they generate the unit ideal exactly
    // when the constant part of the matrix already has rank r
    let constants: Vec<Vec<K>> = d
        .entries()
        .iter()
        .map(|row| row.iter().map(|p| p.constant_value().unwrap_or_else(K::zero)).collect())
        .collect();
    if field_rank(&constants) >= r {
        return (Grade::Infinite, true);
    }
    let ring = d.ring();
    let nv = ring.nvars();
    if let Some(image) = reduce_mod_p(d) {
        let (g, _) = minor_ideal_grade(&image, r, needed);
        if g.at_least(needed) {
            return (g, matches!(g, Grade::Infinite) || g == Grade::Finite(nv));
        }
    }
    let grade_of = |gens: Vec<Polynomial<K>>| -> (Grade, bool) {
        let ideal = Ideal::new(ring, gens).expect("minors of a graded map are homogeneous");
        let g = match ideal.dimension() {
            Ok(dim) => Grade::Finite(dim.codim),
            Err(_) => Grade::Infinite,
        };
        (g, true)
    };
    // a skew matrix of rank r: the r×r minors and the order-r Pfaffians
    // generate ideals with the same radical
    if r % 2 == 0 && is_skew(d) && !K::is_char_two() && binomial(d.nrows(), r) <= MINOR_LIMIT as u128 {
        let gens: Vec<Polynomial<K>> = subsets(d.nrows(), r)
            .into_iter()
            .map(|s| pfaffian_entries(d.entries(), &s))
            .filter(|p| !p.is_zero())
            .collect();
        return grade_of(gens);
    }
    let total = binomial(d.nrows(), r).saturating_mul(binomial(d.ncols(), r));
    if total <= MINOR_LIMIT as u128 {
        let col_sets = subsets(d.ncols(), r);
        let mut gens = Vec::with_capacity(total as usize);
        for rs in &subsets(d.nrows(), r) {
            for cs in &col_sets {
                let m = minor(d.entries(), rs, cs);
                if !m.is_zero() {
                    gens.push(m);
                }
            }
        }
        return grade_of(gens);
    }
    // too many minors: add random ones in a fixed pseudo-random order until
    // the required grade is reached or the ideal becomes 𝔪-primary
    let mut rng = ChaCha8Rng::seed_from_u64(0x6ade);
    let mut gens = Vec::new();
    let mut used = std::collections::HashSet::new();
    for _ in 0..4 * MINOR_LIMIT {
        let mut rs = sample(&mut rng, d.nrows(), r).into_vec();
        let mut cs = sample(&mut rng, d.ncols(), r).into_vec();
        rs.sort_unstable();
        cs.sort_unstable();
        if !used.insert((rs.clone(), cs.clone())) {
            continue;
        }
        let m = minor(d.entries(), &rs, &cs);
        if m.is_zero() {
            continue;
        }
        gens.push(m);
        if gens.len() % 8 == 0 {
            let (grade, _) = grade_of(gens.clone());
            if grade.at_least(needed) || grade.at_least(nv) {
                let exact = matches!(grade, Grade::Infinite) || grade == Grade::Finite(nv);
                return (grade, exact);
            }
        }
    }
    let (grade, exact) = grade_of(gens);
    (grade, exact && used.len() as u128 == total)
}

/// Over the rationals, the reduction of `d` modulo a prime. Each component
/// of the cone cut out by the minors over `Q` specializes to a component of
/// the same dimension modulo `p` (the vertex lies on it), so grades of minor
/// ideals of the reduction are lower bounds for those over `Q`, and far
/// cheaper to compute.
fn reduce_mod_p<K: Field>(d: &GradedMap<K>) -> Option<GradedMap<Fp<MODULAR_PRIME>>> {
    if K::CHARACTERISTIC != 0 {
        return None;
    }
    let ring = d.ring();
    let target: Ring<Fp<MODULAR_PRIME>> = Ring::new(ring.vars(), ring.order()).ok()?;
    let mut entries = Vec::with_capacity(d.nrows());
    for row in d.entries() {
        let mut out = Vec::with_capacity(row.len());
        for p in row {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| c.reduce_mod(MODULAR_PRIME).map(|c| (m.clone(), Fp::new(c))))
                .collect::<Option<Vec<_>>>()?;
            out.push(Polynomial::from_terms(&target, terms));
        }
        entries.push(out);
    }
    let source = GradedFreeModule::new(&target, d.source().twists().to_vec());
    let dest = GradedFreeModule::new(&target, d.target().twists().to_vec());
    GradedMap::new(source, dest, entries).ok()
}

const MODULAR_PRIME: u64 = 32003;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Certificate for the exactness of `C` at every position above its
/// bottom module (the cokernel of the lowest map is not examined).
pub fn be_exactness_certificate<K: Field>(c: &FreeComplex<K>) -> Result<ExactnessCertificate> {
    for k in 1..c.length() {
        let dd = c.differentials()[k - 1].compose(&c.differentials()[k])?;
        if !dd.is_zero() {
            return Err(Error::NotAComplex { index: c.lo() + k as i64 });
        }
    }
    let n = c.length();
    let module_ranks = c.ranks();
    let ranks = differential_ranks(c);
    let mut violations = Vec::new();
    for k in 1..=n {
        let above = if k < n { ranks[k] } else { 0 };
        if module_ranks[k] != ranks[k - 1] + above {
            violations.push(format!(
                "rank condition at F_{}: rank {} != {} + {}",
                c.lo() + k as i64,
                module_ranks[k],
                ranks[k - 1],
                above
            ));
        }
    }
    let mut grades = Vec::with_capacity(n);
    let mut grades_exact = Vec::with_capacity(n);
    for k in 1..=n {
        let (g, exact) = minor_ideal_grade(&c.differentials()[k - 1], ranks[k - 1], k);
        if !g.at_least(k) {
            violations.push(format!(
                "grade condition at d_{}: grade of the {}x{} minors is {} < {}",
                c.lo() + k as i64,
                ranks[k - 1],
                ranks[k - 1],
                g,
                k
            ));
        }
        grades.push(g);
        grades_exact.push(exact);
    }
    Ok(ExactnessCertificate {
        exact: violations.is_empty(),
        lo: c.lo(),
        module_ranks,
        ranks,
        grades,
        grades_exact,
        violations,
    })
}

/// Certificate that `C` is exact at every index below its top module
/// (including surjectivity onto the bottom one). The top is completed by a
/// free resolution of the kernel of its differential, and a zero module is
/// appended below, so the criterion applies to the augmented complex.
pub fn exact_except_top_certificate<K: Field>(c: &FreeComplex<K>) -> Result<(ExactnessCertificate, FreeComplex<K>)> {
    let ring = c.ring().clone();
    let mut maps: Vec<GradedMap<K>> = Vec::new();
    maps.push(GradedMap::zero(c.module(c.lo()), GradedFreeModule::zero(&ring)));
    maps.extend(c.differentials().iter().cloned());
    let mut top = c.differential(c.hi());
    if c.length() == 0 {
        top = maps[0].clone();
    }
    for _ in 0..=ring.nvars() + 1 {
        let (_, syz) = image_and_syzygies(&top);
        if syz.ncols() == 0 {
            break;
        }
        maps.push(syz.clone());
        top = syz;
    }
    let augmented = FreeComplex::new(c.lo() - 1, maps)?;
    Ok((be_exactness_certificate(&augmented)?, augmented))
}
