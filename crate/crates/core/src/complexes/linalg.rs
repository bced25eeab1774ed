//! Fraction-free linear algebra over the polynomial ring.

use crate::field::Field;
use crate::ring::Polynomial;

/// Rank over the fraction field by Bareiss elimination.
pub fn bareiss_rank<K: Field>(matrix: &[Vec<Polynomial<K>>]) -> usize {
    let mut a: Vec<Vec<Polynomial<K>>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return 0;
    }
    let ring = a[0][0].ring().clone();
    let mut prev = ring.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // pivot: nonzero entry with fewest terms
        let Some(p) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].len()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &(&a[r][c] * &a[i][j]) - &(&a[i][c] * &a[r][j]);
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = ring.zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square polynomial matrix by Bareiss elimination.
pub fn determinant<K: Field>(matrix: &[Vec<Polynomial<K>>]) -> Polynomial<K> {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        panic!("determinant of an empty matrix needs a ring");
    }
    let ring = matrix[0][0].ring().clone();
    let mut a: Vec<Vec<Polynomial<K>>> = matrix.to_vec();
    let mut prev = ring.one();
    let mut negate = false;
    for c in 0..n {
        let Some(p) = (c..n).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].len()) else {
            return ring.zero();
        };
        if p != c {
            a.swap(c, p);
            negate = !negate;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &(&a[c][c] * &a[i][j]) - &(&a[i][c] * &a[c][j]);
                a[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][c] = ring.zero();
        }
        prev = a[c][c].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank of a matrix over the field itself.
pub fn field_rank<K: Field>(matrix: &[Vec<K>]) -> usize {
    let mut a: Vec<Vec<K>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone() * inv.clone();
            for j in c..cols {
                let v = a[r][j].clone() * f.clone();
                a[i][j] -= v;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Rank after substituting `point` for the variables; a lower bound for
/// the rank over the fraction field.
pub fn rank_at_point<K: Field>(matrix: &[Vec<Polynomial<K>>], point: &[K]) -> usize {
    let values: Vec<Vec<K>> = matrix.iter().map(|r| r.iter().map(|p| p.evaluate(point)).collect()).collect();
    field_rank(&values)
}

/// Subsets of `0..n` of size `k` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The `k × k` minor on the given rows and columns.
pub fn minor<K: Field>(matrix: &[Vec<Polynomial<K>>], rows: &[usize], cols: &[usize]) -> Polynomial<K> {
    let sub: Vec<Vec<Polynomial<K>>> = rows.iter().map(|&i| cols.iter().map(|&j| matrix[i][j].clone()).collect()).collect();
    determinant(&sub)
}
