use std::fmt;

use serde::Serialize;

use crate::complexes::{be_exactness_certificate, chi_line_bundle, euler_characteristic, ExactnessCertificate};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;

use super::PfaffianResolution;

/// Outcome of the parity condition on `χ(O_X(l/2))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    /// `n = N - 3`, the dimension of the subscheme.
    pub n: i64,
    pub l: i64,
    /// Whether the condition constrains this case: `l` even and
    /// `n ≡ 0 (mod 4)`, or `n` even in characteristic 2.
    pub applies: bool,
    /// `χ(O_X(l/2))` from the resolution, when `l` is even.
    pub chi: Option<i128>,
    pub even: Option<bool>,
    /// `2χ(O_P(l/2)) - 2χ(𝓔(l/2 - s))`, available when `n` is even.
    pub chi_from_bundle: Option<i128>,
    pub identity_holds: Option<bool>,
    /// True unless the condition applies and `χ` is odd (or the cross-check fails).
    pub holds: bool,
}

impl fmt::Display for ParityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parity: n = {}, l = {}, ", self.n, self.l)?;
        if !self.applies {
            write!(f, "not applicable")?;
        } else {
            write!(f, "applies")?;
        }
        if let Some(chi) = self.chi {
            write!(f, ", chi(O_X(l/2)) = {chi} ({})", if chi % 2 == 0 { "even" } else { "odd" })?;
        }
        if let Some(ok) = self.identity_holds {
            write!(f, ", bundle identity {}", if ok { "holds" } else { "FAILS" })?;
        }
        Ok(())
    }
}

fn chi_of_twists(n_proj: usize, twists: &[i64], m: i64) -> i128 {
    twists.iter().map(|a| chi_line_bundle(n_proj, m - a)).sum()
}

/// Parity report from raw twist data `𝓔 = ⊕ O(e_j)`, `t`, on `P^N`.
pub fn parity_check(e_twists: &[i64], t: i64, big_n: usize, char_two: bool) -> Result<ParityReport> {
    let n = big_n as i64 - 3;
    if n <= 0 {
        return Err(Error::InvalidArgument(format!("parity needs n = N - 3 > 0, got {n}")));
    }
    if e_twists.len() % 2 == 0 {
        return Err(Error::OddSizeRequired);
    }
    let p = (e_twists.len() as i64 - 1) / 2;
    let s = e_twists.iter().sum::<i64>() + p * t;
    let l = t + 2 * s - big_n as i64 - 1;
    let applies = l % 2 == 0 && if char_two { n % 2 == 0 } else { n % 4 == 0 };
    let (mut chi, mut even, mut chi_from_bundle, mut identity_holds) = (None, None, None, None);
    if l % 2 == 0 {
        let m = l / 2;
        // χ(O_X(m)) from the four terms of the resolution
        let f1: Vec<i64> = e_twists.iter().map(|e| s - e).collect();
        let f2: Vec<i64> = e_twists.iter().map(|e| e + t + s).collect();
        let value = chi_line_bundle(big_n, m) - chi_of_twists(big_n, &f1, m) + chi_of_twists(big_n, &f2, m)
            - chi_line_bundle(big_n, m - t - 2 * s);
        chi = Some(value);
        even = Some(value % 2 == 0);
        if n % 2 == 0 {
            let bundle: i128 = e_twists.iter().map(|e| chi_line_bundle(big_n, m - s + e)).sum();
            let other = 2 * chi_line_bundle(big_n, m) - 2 * bundle;
            chi_from_bundle = Some(other);
            identity_holds = Some(other == value);
        }
    }
    let holds = (!applies || even == Some(true)) && identity_holds != Some(false);
    Ok(ParityReport { n, l, applies, chi, even, chi_from_bundle, identity_holds, holds })
}

/// Full check of a Pfaffian resolution: exactness, codimension 3, the
/// subcanonical twist and the parity condition.
#[derive(Clone, Debug, Serialize)]
pub struct PfaffianCertificate {
    pub passed: bool,
    pub twists: Vec<Vec<i64>>,
    pub exactness: ExactnessCertificate,
    pub codim: Option<usize>,
    pub l: i64,
    pub canonical: String,
    pub parity: ParityReport,
    pub violations: Vec<String>,
}

impl fmt::Display for PfaffianCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate: {}", if self.passed { "PASS" } else { "FAILED" })?;
        let twists: Vec<String> = self.twists.iter().map(|t| format!("{t:?}")).collect();
        writeln!(f, "twists: {}", twists.join(" "))?;
        write!(f, "{}", self.exactness)?;
        match self.codim {
            Some(c) => writeln!(f, "codim: {c}")?,
            None => writeln!(f, "codim: empty scheme")?,
        }
        writeln!(f, "l = {}: {}", self.l, self.canonical)?;
        writeln!(f, "{}", self.parity)?;
        for v in &self.violations {
            writeln!(f, "violated: {v}")?;
        }
        Ok(())
    }
}

pub fn certify_pfaffian_scheme<K: Field>(res: &PfaffianResolution<K>) -> Result<PfaffianCertificate> {
    let ring = res.skew.ring();
    let big_n = ring.projective_dim();
    if big_n < 4 {
        return Err(Error::InvalidArgument(format!("certification needs N >= 4, got N = {big_n}")));
    }
    let exactness = be_exactness_certificate(&res.complex)?;
    let mut violations: Vec<String> = exactness.violations.clone();
    let ideal = Ideal::new(ring, res.sub_pfaffians.clone())?;
    let codim = ideal.dimension().ok().map(|d| d.codim);
    match codim {
        Some(3) => {}
        Some(c) => violations.push(format!("codimension of the Pfaffian ideal is {c}, not 3")),
        None => violations.push("the Pfaffian ideal is the unit ideal".into()),
    }
    let l = res.l();
    let parity = parity_check(res.skew.e_twists(), res.t(), big_n, K::is_char_two())?;
    if l % 2 == 0 {
        let direct = euler_characteristic(&res.complex, l / 2);
        if parity.chi != Some(direct) {
            violations.push(format!("Euler characteristic mismatch: {direct} vs {:?}", parity.chi));
        }
    }
    if !parity.holds {
        violations.push(format!("parity condition fails: {parity}"));
    }
    Ok(PfaffianCertificate {
        passed: violations.is_empty(),
        twists: res.complex.twists(),
        exactness,
        codim,
        l,
        canonical: format!("omega_X = O_X({l})"),
        parity,
        violations,
    })
}
