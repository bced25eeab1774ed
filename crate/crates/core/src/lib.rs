//! Exact computer algebra for Pfaffian resolutions of codimension-3
//! subschemes of projective space.

pub mod cohomology;
pub mod chartwo;
pub mod complexes;
pub mod error;
pub mod field;
pub mod groebner;
pub mod pfaffian;
pub mod ring;
pub mod structure;

pub use error::{Error, Result};
pub use field::{Field, Fp};
pub use ring::{DegreeStatus, Monomial, Polynomial, Ring, TermOrder};

/// Arbitrary-precision rationals.
pub type QQ = num_rational::BigRational;
pub type GF2 = Fp<2>;
pub type GF3 = Fp<3>;
pub type GF101 = Fp<101>;
pub type GF32003 = Fp<32003>;
