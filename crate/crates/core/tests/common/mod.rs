#![allow(dead_code)]

use pfaffian_core::complexes::{GradedFreeModule, GradedMap};
use pfaffian_core::{Field, Monomial, Polynomial, Ring};

/// Multivariate division by a list, leading term first; returns the remainder.
pub fn divide<K: Field>(f: &Polynomial<K>, divisors: &[Polynomial<K>]) -> Polynomial<K> {
    let ring = f.ring();
    let mut p = f.clone();
    let mut rem = ring.zero();
    while let Some((m, c)) = p.lead().cloned() {
        let hit = divisors.iter().find(|g| g.lead_monomial().is_some_and(|lm| lm.divides(&m)));
        match hit {
            Some(g) => {
                let (lm, lc) = g.lead().unwrap();
                let q = lm.quotient_of(&m);
                p = &p - &g.mul_term(&q, &(c / lc.clone()));
            }
            None => {
                let t = Polynomial::monomial(ring, m, c);
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

pub fn s_polynomial<K: Field>(f: &Polynomial<K>, g: &Polynomial<K>) -> Polynomial<K> {
    let (mf, cf) = f.lead().unwrap();
    let (mg, cg) = g.lead().unwrap();
    let l = mf.lcm(mg);
    &f.mul_term(&mf.quotient_of(&l), &cf.inv().unwrap()) - &g.mul_term(&mg.quotient_of(&l), &cg.inv().unwrap())
}

/// Row echelon form in place; returns the pivot columns.
pub fn row_reduce<K: Field>(rows: &mut Vec<Vec<K>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..ncols {
                    let v = rows[r][k].clone() * f.clone();
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<K: Field>(mut rows: Vec<Vec<K>>) -> usize {
    row_reduce(&mut rows).len()
}

/// Basis of the null space of a matrix given by rows.
pub fn null_space<K: Field>(rows: Vec<Vec<K>>, ncols: usize) -> Vec<Vec<K>> {
    let mut rows = rows;
    let pivots = row_reduce(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![K::zero(); ncols];
            v[f] = K::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

/// Coefficient of `m` in `p`.
pub fn coeff<K: Field>(p: &Polynomial<K>, m: &Monomial) -> K {
    p.terms().iter().find(|(x, _)| x == m).map(|(_, c)| c.clone()).unwrap_or_else(K::zero)
}

/// Degree-`d` part of the kernel of `map`, as explicit vectors, by linear
/// algebra on monomial bases.
pub fn kernel_in_degree<K: Field>(map: &GradedMap<K>, d: i64) -> Vec<Vec<Polynomial<K>>> {
    let ring = map.ring();
    // unknowns: (column j, monomial of degree d - a_j)
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (j, &a) in map.source().twists().iter().enumerate() {
        if d - a >= 0 {
            for m in ring.monomials_of_degree((d - a) as u32) {
                unknowns.push((j, m));
            }
        }
    }
    let mut equations: Vec<(usize, Monomial)> = Vec::new();
    for (i, &b) in map.target().twists().iter().enumerate() {
        if d - b >= 0 {
            for m in ring.monomials_of_degree((d - b) as u32) {
                equations.push((i, m));
            }
        }
    }
    let rows: Vec<Vec<K>> = equations
        .iter()
        .map(|(i, m)| {
            unknowns
                .iter()
                .map(|(j, u)| {
                    let e = map.entry(*i, *j);
                    if e.is_zero() || !u.divides(m) {
                        K::zero()
                    } else {
                        coeff(e, &u.quotient_of(m))
                    }
                })
                .collect()
        })
        .collect();
    null_space(rows, unknowns.len())
        .into_iter()
        .map(|v| {
            let mut col = vec![ring.zero(); map.ncols()];
            for (k, (j, m)) in unknowns.iter().enumerate() {
                if !v[k].is_zero() {
                    col[*j] = &col[*j] + &Polynomial::monomial(ring, m.clone(), v[k].clone());
                }
            }
            col
        })
        .collect()
}

pub fn map_from<K: Field>(ring: &Ring<K>, source: &[i64], target: &[i64], rows: &[&[&str]]) -> GradedMap<K> {
    let entries = rows.iter().map(|r| r.iter().map(|s| ring.p(s)).collect()).collect();
    GradedMap::new(GradedFreeModule::new(ring, source.to_vec()), GradedFreeModule::new(ring, target.to_vec()), entries)
        .unwrap()
}

/// Dimension of `S/J` for a monomial ideal: largest set of variables that
/// supports no generator.
pub fn monomial_dimension(gens: &[Monomial], nvars: usize) -> usize {
    let mut best = 0;
    for set in 0u32..(1 << nvars) {
        let ok = gens.iter().all(|g| g.exponents().iter().enumerate().any(|(i, &e)| e > 0 && set & (1 << i) == 0));
        if ok {
            best = best.max(set.count_ones() as usize);
        }
    }
    best
}

/// Whether `b` is obtained from `a` by permuting rows and columns and
/// changing the signs of some rows and columns.
pub fn equal_up_to_signed_permutation<K: Field>(a: &GradedMap<K>, b: &GradedMap<K>) -> bool {
    let (m, n) = (a.nrows(), a.ncols());
    if (m, n) != (b.nrows(), b.ncols()) {
        return false;
    }
    let row_perms = permutations(m);
    let col_perms = permutations(n);
    for rp in &row_perms {
        for cp in &col_perms {
            // b[rp[i]][cp[j]] = r_i c_j a[i][j] with signs r, c
            let mut r: Vec<Option<bool>> = vec![None; m];
            let mut c: Vec<Option<bool>> = vec![None; n];
            let mut ok = true;
            'outer: for i in 0..m {
                for j in 0..n {
                    let x = a.entry(i, j);
                    let y = b.entry(rp[i], cp[j]);
                    let same = y == x;
                    let opposite = *y == -x;
                    if x.is_zero() {
                        if !y.is_zero() {
                            ok = false;
                            break 'outer;
                        }
                        continue;
                    }
                    if !same && !opposite {
                        ok = false;
                        break 'outer;
                    }
                    let flip = !same;
                    match (r[i], c[j]) {
                        (None, None) => {
                            r[i] = Some(false);
                            c[j] = Some(flip);
                        }
                        (Some(ri), None) => c[j] = Some(ri ^ flip),
                        (None, Some(cj)) => r[i] = Some(cj ^ flip),
                        (Some(ri), Some(cj)) => {
                            if ri ^ cj != flip {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                return true;
            }
        }
    }
    false
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

pub fn random_form<K: Field>(r: &Ring<K>, d: i64, rng: &mut impl rand::Rng, density: f64) -> Polynomial<K> {
    if d < 0 {
        return r.zero();
    }
    let mut terms = Vec::new();
    for m in r.monomials_of_degree(d as u32) {
        if rng.gen_bool(density) {
            terms.push((m, K::from_i64(rng.gen_range(-5..=5))));
        }
    }
    Polynomial::from_terms(r, terms)
}
