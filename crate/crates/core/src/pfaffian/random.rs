use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ring::{Polynomial, Ring};

use super::SkewMatrix;

/// A dense random form of degree `d` with coefficients drawn from
/// `-bound..=bound` (reduced into the field).
pub fn random_form<K: Field>(ring: &Ring<K>, d: i64, rng: &mut ChaCha8Rng, bound: i64) -> Polynomial<K> {
    if d < 0 {
        return ring.zero();
    }
    let terms = ring
        .monomials_of_degree(d as u32)
        .into_iter()
        .map(|m| (m, K::from_i64(rng.gen_range(-bound..=bound))))
        .collect();
    Polynomial::from_terms(ring, terms)
}

/// A seeded random skew map with the given twist data; entries are dense
/// forms of the forced degrees.
pub fn random_skew<K: Field>(ring: &Ring<K>, e_twists: &[i64], t: i64, seed: u64) -> Result<SkewMatrix<K>> {
    if e_twists.len() % 2 == 0 {
        return Err(Error::OddSizeRequired);
    }
    let n = e_twists.len();
    let bound = if K::CHARACTERISTIC == 0 { 3 } else { (K::CHARACTERISTIC as i64 - 1) / 2 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = vec![vec![ring.zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let p = random_form(ring, e_twists[i] + e_twists[j] + t, &mut rng, bound);
            entries[j][i] = -&p;
            entries[i][j] = p;
        }
    }
    SkewMatrix::new(ring, e_twists.to_vec(), t, entries)
}
