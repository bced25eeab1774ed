//! Hilbert series of quotients by monomial submodules.

use crate::ring::Monomial;

/// `Σ_k c_k t^{low + k} / (1 - t)^n`, the Hilbert series of a finitely
/// generated graded module over a polynomial ring in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    low: i64,
    coeffs: Vec<i128>,
    nvars: usize,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries { low: 0, coeffs: Vec::new(), nvars }
    }

    /// Series of `S/J` shifted to start in degree `shift`, for a monomial
    /// ideal `J` given by generators.
    pub fn of_monomial_quotient(gens: &[Monomial], nvars: usize, shift: i64) -> Self {
        let mut s = HilbertSeries { low: shift, coeffs: numerator(gens.to_vec()), nvars };
        s.trim();
        s
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.nvars, other.nvars);
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = (self.low + self.coeffs.len() as i64).max(other.low + other.coeffs.len() as i64);
        let mut coeffs = vec![0i128; (high - low) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + k] += c;
        }
        let mut s = HilbertSeries { low, coeffs, nvars: self.nvars };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| **c == 0).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Numerator coefficients and the exponent of the first one.
    pub fn numerator(&self) -> (i64, &[i128]) {
        (self.low, &self.coeffs)
    }

    /// `dim_k M_t`.
    pub fn value(&self, t: i64) -> i128 {
        let n = self.nvars as i64;
        let mut total = 0i128;
        for (k, c) in self.coeffs.iter().enumerate() {
            let d = t - self.low - k as i64;
            if d >= 0 {
                total += c * binomial_i128(d + n - 1, n - 1);
            }
        }
        total
    }

    /// Krull dimension: order of the pole at `t = 1`; `None` for the zero module.
    pub fn dimension(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            return None;
        }
        let mut q = self.coeffs.clone();
        let mut k = 0;
        while q.iter().sum::<i128>() == 0 {
            // divide by (1 - t): synthetic division with root 1
            let mut out = vec![0i128; q.len() - 1];
            let mut acc = 0i128;
            for i in 0..q.len() - 1 {
                acc += q[i];
                out[i] = acc;
            }
            q = out;
            k += 1;
        }
        Some(self.nvars - k)
    }

    /// Multiplicity (degree) of the module: reduced numerator at `t = 1`.
    pub fn multiplicity(&self) -> i128 {
        if self.coeffs.is_empty() {
            return 0;
        }
        let mut q = self.coeffs.clone();
        while q.iter().sum::<i128>() == 0 {
            let mut out = vec![0i128; q.len() - 1];
            let mut acc = 0i128;
            for i in 0..q.len() - 1 {
                acc += q[i];
                out[i] = acc;
            }
            q = out;
        }
        q.iter().sum()
    }

    /// Largest degree with nonzero value, when the module has finite length.
    pub fn top_degree(&self) -> Option<i64> {
        match self.dimension() {
            Some(0) => {
                let mut t = self.low + self.coeffs.len() as i64;
                while t >= self.low && self.value(t) == 0 {
                    t -= 1;
                }
                Some(t)
            }
            _ => None,
        }
    }

    /// Smallest degree with nonzero value.
    pub fn bottom_degree(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.low)
        }
    }
}

pub(crate) fn binomial_i128(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(d: u32) -> Vec<i128> {
    let mut v = vec![0i128; d as usize + 1];
    v[0] += 1;
    v[d as usize] -= 1;
    v
}

/// Numerator of the Hilbert series of `S/J` over `(1 - t)^n`.
fn numerator(gens: Vec<Monomial>) -> Vec<i128> {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    let nvars = gens[0].nvars();
    let mut counts = vec![0usize; nvars];
    let mut pairwise_coprime = true;
    let mut seen = 0u64;
    for m in &gens {
        let mask = m.support_mask();
        if seen & mask != 0 {
            pairwise_coprime = false;
        }
        seen |= mask;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    if pairwise_coprime && nvars <= 64 {
        return gens.iter().fold(vec![1], |acc, m| poly_mul(&acc, &one_minus_t_pow(m.degree())));
    }
    let x = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).expect("nonempty");
    let xm = Monomial::var(nvars, x);
    // N(J) = N(J + (x)) + t N(J : x), and N(J + (x)) = (1 - t) N(J') where
    // J' drops the generators divisible by x
    let rest: Vec<Monomial> = gens.iter().filter(|m| m.exponents()[x] == 0).cloned().collect();
    let colon: Vec<Monomial> =
        gens.iter().map(|m| if m.exponents()[x] > 0 { xm.quotient_of(m) } else { m.clone() }).collect();
    let a = poly_mul(&numerator(rest), &[1, -1]);
    let b = poly_mul(&numerator(colon), &[0, 1]);
    let len = a.len().max(b.len());
    (0..len).map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)).collect()
}
