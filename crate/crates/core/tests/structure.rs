mod common;

use pfaffian_core::complexes::{koszul_complex, linalg::determinant};
use pfaffian_core::groebner::Ideal;
use pfaffian_core::pfaffian::{random_skew, SkewMatrix};
use pfaffian_core::structure::*;
use pfaffian_core::{Error, Field, Ring, GF101, QQ};
use num_traits::Zero;
use proptest::prelude::*;

fn ci_ideal() -> Ideal<QQ> {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w");
    Ideal::parse(&r, &["x^2", "y^2", "z^2"]).unwrap()
}

fn pfaffian_ideal<K: Field>(r: &Ring<K>, e: &[i64], t: i64, seed: u64) -> (SkewMatrix<K>, Ideal<K>) {
    let f = random_skew(r, e, t, seed).unwrap();
    let i = Ideal::new(r, f.sub_pfaffians()).unwrap();
    (f, i)
}

#[test]
fn shape_of_complete_intersection() {
    let res = gorenstein_shape(&ci_ideal()).unwrap();
    assert_eq!(res.complex.ranks(), vec![1, 3, 3, 1]);
    assert_eq!(res.e, 6);
    let r = ci_ideal().ring().clone();
    let koszul = koszul_complex(&r, &[r.p("x^2"), r.p("y^2"), r.p("z^2")]).unwrap();
    assert_eq!(res.complex.twists(), koszul.twists());
}

#[test]
fn shape_of_generic_linear_pfaffians() {
    let r: Ring<GF101> = Ring::with_vars(6);
    let (_, i) = pfaffian_ideal(&r, &[0; 5], 1, 7);
    let res = gorenstein_shape(&i).unwrap();
    assert_eq!(res.complex.ranks(), vec![1, 5, 5, 1]);
    assert_eq!(res.e, 5);
}

#[test]
fn shape_rejections() {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w");
    let codim2 = Ideal::parse(&r, &["x", "y"]).unwrap();
    assert!(matches!(gorenstein_shape(&codim2), Err(Error::NotGorenstein(m)) if m.contains("codimension")));
    // codimension 3 but not Gorenstein: the cube of the maximal ideal in three variables
    let cm = Ideal::parse(&r, &["x^2", "x*y", "y^2", "z"]).unwrap();
    assert!(matches!(gorenstein_shape(&cm), Err(Error::NotGorenstein(m)) if m.contains("rank")));
    // not Cohen-Macaulay: length exceeds 3
    let r5: Ring<QQ> = Ring::from_names("x,y,z,u,v");
    let nc = Ideal::parse(&r5, &["x*u", "x*v", "y*u", "y*v", "z"]).unwrap();
    assert!(matches!(gorenstein_shape(&nc), Err(Error::NotGorenstein(m)) if m.contains("length")));
    let unit = Ideal::parse(&r, &["1"]).unwrap();
    assert_eq!(gorenstein_shape(&unit).unwrap_err(), Error::EmptyScheme);
}

#[test]
fn psi_of_complete_intersection() {
    let res = gorenstein_shape(&ci_ideal()).unwrap();
    let psi = build_psi(&res);
    assert_eq!(psi.ncols(), 3);
    assert!(res.d1().compose(&psi).unwrap().is_zero());
    let g = res.generators();
    // ψ(e_0 ∧ e_1) = g_0 e_1 - g_1 e_0
    assert_eq!(psi.column(0), vec![-&g[1], g[0].clone(), g[0].ring().zero()]);
}

#[test]
fn phi_of_complete_intersection_is_invertible() {
    let res = gorenstein_shape(&ci_ideal()).unwrap();
    let psi = build_psi(&res);
    let phi = lift_phi(&res, &psi).unwrap();
    assert_eq!(res.d2().compose(&phi).unwrap(), psi);
    // Λ²F_1 ≅ F_2 for a Koszul complex: φ is a constant invertible matrix
    assert!(phi.entries().iter().flatten().all(|p| p.constant_value().is_some()));
    assert!(!determinant(phi.entries()).is_zero());
}

#[test]
fn pairing_of_complete_intersection_is_signed_permutation() {
    let res = gorenstein_shape(&ci_ideal()).unwrap();
    let phi = lift_phi(&res, &build_psi(&res)).unwrap();
    let (s1, s2) = multiplication_pairing(&res, &phi).unwrap();
    for row in s2.entries() {
        let nonzero: Vec<_> = row.iter().filter(|p| !p.is_zero()).collect();
        assert_eq!(nonzero.len(), 1);
        assert!(nonzero[0].constant_value().is_some());
    }
    assert_eq!(s1.entries().len(), s2.entries()[0].len());
}

#[test]
fn pairing_of_generic_pfaffians_is_invertible_scalar() {
    let r: Ring<GF101> = Ring::with_vars(6);
    let (_, i) = pfaffian_ideal(&r, &[0; 5], 1, 21);
    let res = gorenstein_shape(&i).unwrap();
    let psi = build_psi(&res);
    let phi = lift_phi(&res, &psi).unwrap();
    assert_eq!(res.d2().compose(&phi).unwrap(), psi);
    let (_, s2) = multiplication_pairing(&res, &phi).unwrap();
    assert!(s2.entries().iter().flatten().all(|p| p.constant_value().is_some()));
    let det = determinant(s2.entries());
    assert!(det.constant_value().is_some_and(|c| !c.is_zero()));
}

#[test]
fn pfaffianize_complete_intersection() {
    let i = ci_ideal();
    let out = pfaffianize(&i).unwrap();
    assert_eq!(out.skew.size(), 3);
    assert!(out.checks.ideal_equal && out.checks.skew_exact && out.checks.odd_rank);
    // entries are ±x², ±y², ±z² above the diagonal, as in the Koszul form
    let r = i.ring();
    let mut above: Vec<String> = (0..3)
        .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
        .map(|(a, b)| {
            let p = &out.skew.entries()[a][b];
            let q = if p.terms()[0].1.is_negative() { -p } else { p.clone() };
            q.to_string()
        })
        .collect();
    above.sort();
    let mut expected: Vec<String> = ["x^2", "y^2", "z^2"].iter().map(|s| r.p(s).to_string()).collect();
    expected.sort();
    assert_eq!(above, expected);
}

#[test]
fn pfaffianize_generic_linear() {
    let r: Ring<GF101> = Ring::with_vars(6);
    let (_, i) = pfaffian_ideal(&r, &[0; 5], 1, 5);
    let out = pfaffianize(&i).unwrap();
    assert_eq!(out.skew.size(), 5);
    assert_eq!(out.skew.t(), 1);
    let back = Ideal::new(&r, out.skew.sub_pfaffians()).unwrap();
    assert!(back.same_ideal(&i));
    assert!(out.checks.skew_exact && !out.checks.symmetrized);
}

#[test]
fn pfaffianize_mixed_twists() {
    let r: Ring<QQ> = Ring::with_vars(5);
    let (_, i) = pfaffian_ideal(&r, &[0, 0, 1], 1, 2);
    let out = pfaffianize(&i).unwrap();
    assert!(out.checks.ideal_equal);
}

#[test]
fn pfaffianize_rejects_characteristic_two() {
    let r: Ring<pfaffian_core::GF2> = Ring::from_names("x,y,z");
    let i = Ideal::parse(&r, &["x", "y", "z"]).unwrap();
    assert_eq!(pfaffianize(&i).unwrap_err(), Error::CharacteristicTwo);
}

#[test]
fn pfaffianize_rejects_codimension_two() {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w");
    let i = Ideal::parse(&r, &["x*y", "x*z", "y*z"]).unwrap();
    assert!(matches!(pfaffianize(&i), Err(Error::NotGorenstein(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn round_trip(seed in any::<u64>(), five in any::<bool>(), quad in any::<bool>()) {
        let r: Ring<GF101> = Ring::with_vars(if five { 6 } else { 4 });
        let n = if five { 5 } else { 3 };
        let t = if quad && !five { 2 } else { 1 };
        let (_, i) = pfaffian_ideal(&r, &vec![0; n], t, seed);
        // generic instances are Gorenstein of codimension 3
        prop_assume!(i.dimension().map(|d| d.codim == 3).unwrap_or(false));
        let out = pfaffianize(&i).unwrap();
        let f = out.skew.entries();
        for a in 0..n {
            prop_assert!(f[a][a].is_zero());
            for b in 0..n {
                prop_assert!((&f[a][b] + &f[b][a]).is_zero());
            }
        }
        prop_assert!(out.checks.ideal_equal);
        prop_assert!(out.checks.s2_d2 && out.checks.s2_d3);
        prop_assert_eq!(out.resolution.rank() % 2, 1);
    }
}
