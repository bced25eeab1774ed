mod common;

use common::*;
use pfaffian_core::chartwo::*;
use pfaffian_core::cohomology::FiniteLengthModule;
use pfaffian_core::complexes::{
    be_exactness_certificate, exact_except_top_certificate, linalg::bareiss_rank, koszul_complex, FreeComplex,
    GradedFreeModule, GradedMap, PresentedModule,
};
use pfaffian_core::groebner::syzygies;
use pfaffian_core::{Error, Field, Polynomial, Ring, GF101, GF2, GF3, QQ};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A Koszul complex read cohomologically: `G^q` is `Λ^{len-q}`.
fn as_cohomological<K: Field>(k: &FreeComplex<K>) -> FreeComplex<K> {
    k.shift(k.hi())
}

/// Drops the top `count` terms of a cohomological complex starting at degree 0.
fn drop_head<K: Field>(g: &FreeComplex<K>, count: usize) -> FreeComplex<K> {
    let maps: Vec<GradedMap<K>> = g.differentials()[..g.differentials().len() - count].to_vec();
    FreeComplex::new(g.lo(), maps).unwrap()
}

#[test]
fn frobenius_of_linear_form() {
    let r: Ring<GF2> = Ring::from_names("x,y");
    let m = GradedMap::new(
        GradedFreeModule::new(&r, vec![1]),
        GradedFreeModule::new(&r, vec![0]),
        vec![vec![r.p("x + y")]],
    )
    .unwrap();
    let f = frobenius_map(&m).unwrap();
    assert_eq!(f.entry(0, 0), &r.p("x^2 + y^2"));
    assert_eq!(f.source().twists(), &[2]);
    let id = GradedMap::identity(&GradedFreeModule::new(&r, vec![0, 1]));
    let fid = frobenius_map(&id).unwrap();
    assert_eq!(fid.entries(), id.entries());
    assert_eq!(fid.source().twists(), &[0, 2]);
}

#[test]
fn frobenius_requires_characteristic_two() {
    let r: Ring<GF3> = Ring::from_names("x");
    let k = koszul_complex(&r, &[r.p("x")]).unwrap();
    assert_eq!(frobenius(&k).unwrap_err(), Error::CharacteristicNotTwo);
}

#[test]
fn frobenius_of_koszul_complexes() {
    for n in 1..=4 {
        let r: Ring<GF2> = Ring::with_vars(n + 1);
        let gens: Vec<Polynomial<GF2>> = (0..n).map(|i| r.var(i)).collect();
        let k = koszul_complex(&r, &gens).unwrap();
        let fk = frobenius(&k).unwrap();
        let squares: Vec<Polynomial<GF2>> = gens.iter().map(|g| g * g).collect();
        assert_eq!(fk, koszul_complex(&r, &squares).unwrap());
        let mut augmented = fk.clone();
        // exactness of the resolution of S/(x_i²): check all positions above the bottom
        augmented = augmented.trimmed();
        assert!(be_exactness_certificate(&augmented).unwrap().exact, "n = {n}");
    }
}

#[test]
fn tensor_square_small_cases() {
    let r2: Ring<GF2> = Ring::with_vars(2);
    let d = tensor_square_decomposition(&r2, &[0]);
    assert_eq!((d.lambda2_twists.len(), d.s2_twists.len(), d.frobenius_twists.len()), (0, 1, 1));
    assert!(d.exact);
    let d = tensor_square_decomposition(&r2, &[0, 1, 3]);
    let ranks = (d.lambda2_twists.len(), d.d2_twists.len(), d.s2_twists.len(), d.frobenius_twists.len());
    assert_eq!(ranks, (3, 6, 6, 3));
    assert_eq!(d.frobenius_twists, vec![0, 2, 6]);
    assert!(d.exact);
    let rq: Ring<QQ> = Ring::with_vars(2);
    let d = tensor_square_decomposition(&rq, &[0, 0]);
    assert_eq!(d.tensor_twists.len(), 4);
    assert_eq!((d.s2_twists.len(), d.lambda2_twists.len()), (3, 1));
    assert!(d.exact);
}

#[test]
fn swap_matrix_rank_by_elimination() {
    for r in 1..=5 {
        let ring: Ring<GF2> = Ring::with_vars(1);
        let d = tensor_square_decomposition(&ring, &vec![0; r]);
        let rows: Vec<Vec<GF2>> =
            d.t_matrix.iter().map(|row| row.iter().map(|&c| GF2::from_i64(c)).collect()).collect();
        assert_eq!(rank(rows), binom(r, 2));
        let rows: Vec<Vec<GF101>> =
            d.t_matrix.iter().map(|row| row.iter().map(|&c| GF101::from_i64(c)).collect()).collect();
        assert_eq!(rank(rows), binom(r + 1, 2));
    }
}

#[test]
fn lambda2_of_single_line_bundle_vanishes() {
    let r: Ring<QQ> = Ring::with_vars(3);
    let g = FreeComplex::single(GradedFreeModule::new(&r, vec![1]), 0);
    let l = lambda2_complex(&g).unwrap();
    assert_eq!(l.complex.ranks(), vec![0]);
    let s = sym2_complex(&g).unwrap();
    assert_eq!(s.complex.ranks(), vec![1]);
    assert_eq!(s.complex.twists(), vec![vec![2]]);
}

#[test]
fn lambda2_term_formula() {
    let r: Ring<QQ> = Ring::with_vars(5);
    let gens: Vec<_> = (0..4).map(|i| r.var(i)).collect();
    let g = as_cohomological(&koszul_complex(&r, &gens).unwrap());
    let l = lambda2_complex(&g).unwrap();
    let rank_g = |q: i64| if (0..=4).contains(&q) { binom(4, 4 - q as usize) } else { 0 };
    for i in 0..=8i64 {
        let mut expected: usize = (0..=4).filter(|&q| 2 * q < i).map(|q| rank_g(q) * rank_g(i - q)).sum();
        if i % 2 == 0 {
            let m = rank_g(i / 2);
            expected += if i % 4 == 0 { binom(m, 2) } else { binom(m + 1, 2) };
        }
        assert_eq!(l.rank(i), expected, "i = {i}");
    }
    assert_eq!(l.blocks[0][0].kind, BlockKind::Exterior { p: 0 });
    assert!(l.blocks[2].iter().any(|b| b.kind == BlockKind::Symmetric { p: 1 }));
}

#[test]
fn lambda2_exact_except_degree_zero() {
    let r: Ring<QQ> = Ring::with_vars(3);
    // Koszul complex on (x0, x1, x2, 1) is exact; dropping its first terms
    // leaves a complex exact except in degree 0 with free H^0
    let gens = vec![r.var(0), r.var(1), r.var(2), r.one()];
    let full = as_cohomological(&koszul_complex(&r, &gens).unwrap());
    for drop in 1..=2 {
        let g = FreeComplex::new(drop as i64 - 4, full.differentials()[..4 - drop].to_vec()).unwrap();
        let (cert, _) = exact_except_top_certificate(&g).unwrap();
        assert!(cert.exact);
        let h0 = g.module(0).rank() - bareiss_rank(g.differential(0).entries());
        let l = lambda2_complex(&g).unwrap();
        let (cert, _) = exact_except_top_certificate(&l.complex).unwrap();
        assert!(cert.exact, "{cert}");
        let lh0 = l.complex.module(0).rank() - bareiss_rank(l.complex.differential(0).entries());
        assert_eq!(lh0, binom(h0, 2), "drop = {drop}");
    }
}

#[test]
fn lambda2_of_two_term_complex_matches_kernel() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let d = GradedMap::new(
        GradedFreeModule::new(&r, vec![1, 1]),
        GradedFreeModule::new(&r, vec![0]),
        vec![vec![r.p("x"), r.p("y")]],
    )
    .unwrap();
    let g = FreeComplex::new(-1, vec![d.clone()]).unwrap();
    let l = lambda2_complex(&g).unwrap();
    assert_eq!(l.complex.ranks(), vec![1, 2, 1]);
    let h0 = syzygies(&l.complex.differential(0));
    let kernel = PresentedModule::new(syzygies(&syzygies(&d)));
    let lambda_kernel = exterior_square(&kernel);
    for t in 0..6 {
        let from_complex = PresentedModule::free(h0.source().clone());
        assert_eq!(
            if h0.ncols() == 0 { 0 } else { from_complex.hilbert_function(t) },
            lambda_kernel.hilbert_function(t)
        );
    }
}

#[test]
fn lambda2_rejects_characteristic_two() {
    let r: Ring<GF2> = Ring::with_vars(2);
    let g = FreeComplex::single(GradedFreeModule::new(&r, vec![0, 0]), 0);
    assert_eq!(lambda2_complex(&g).unwrap_err(), Error::CharacteristicTwo);
}

#[test]
fn exterior_and_symmetric_squares_of_free_modules() {
    let r: Ring<QQ> = Ring::with_vars(2);
    let f = PresentedModule::free(GradedFreeModule::new(&r, vec![0, 0, 1]));
    let l = exterior_square(&f);
    let s = symmetric_square(&f);
    assert_eq!(l.generators().twists(), &[0, 1, 1]);
    assert_eq!(s.generators().twists(), &[0, 0, 1, 0, 1, 2]);
    let k = PresentedModule::residue_field(&r, 0);
    assert_eq!(symmetric_square(&k).hilbert_function(0), 1);
    assert!(exterior_square(&k).is_zero());
}

fn residue_field_sum<K: Field>(r: &Ring<K>, copies: usize) -> PresentedModule<K> {
    let k = PresentedModule::residue_field(r, 0);
    let mut p = k.presentation().clone();
    for _ in 1..copies {
        p = p.direct_sum(k.presentation());
    }
    PresentedModule::new(p)
}

#[test]
fn max_cohom_odd_r() {
    let r: Ring<GF101> = Ring::with_vars(4);
    let k = FiniteLengthModule::new(residue_field_sum(&r, 1)).unwrap();
    let rep = char2_max_cohom_check(&k, 1, 3, -3..=3).unwrap();
    assert!(rep.holds, "{rep}");
    assert_eq!(rep.expected_functor, "S2");
    assert_eq!(rep.lambda2_table.get(2, 0), 1);
}

#[test]
fn max_cohom_on_p5() {
    let r: Ring<GF101> = Ring::with_vars(6);
    let k = FiniteLengthModule::new(residue_field_sum(&r, 1)).unwrap();
    let rep = char2_max_cohom_check(&k, 1, 5, -1..=1).unwrap();
    assert!(rep.holds, "{rep}");
    assert_eq!(rep.lambda2_table.get(2, 0), 1);
}

#[test]
fn max_cohom_characteristic_two() {
    let r: Ring<GF2> = Ring::with_vars(4);
    let k = FiniteLengthModule::new(residue_field_sum(&r, 2)).unwrap();
    let rep = char2_max_cohom_check(&k, 1, 3, -2..=2).unwrap();
    assert!(rep.holds, "{rep}");
    assert_eq!(rep.expected_functor, "S2");
    assert_eq!(rep.lambda2_table.get(2, 0), 3);
}

#[test]
fn max_cohom_zero_module_and_errors() {
    let r: Ring<GF101> = Ring::with_vars(4);
    let zero = PresentedModule::cyclic(&r, &[r.one()]).unwrap();
    let z = FiniteLengthModule::new(zero).unwrap();
    let rep = char2_max_cohom_check(&z, 1, 3, -2..=2).unwrap();
    assert!(rep.holds);
    assert!(rep.lambda2_table.rows[1..].iter().flatten().all(|&x| x == 0));
    let k = FiniteLengthModule::new(residue_field_sum(&r, 1)).unwrap();
    assert!(matches!(char2_max_cohom_check(&k, 2, 3, 0..=0), Err(Error::InvalidArgument(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn char_two_rank_identities(twists in proptest::collection::vec(-3i64..=3, 1..=6)) {
        let r: Ring<GF2> = Ring::with_vars(1);
        let d = tensor_square_decomposition(&r, &twists);
        let n = twists.len();
        prop_assert!(d.exact);
        prop_assert_eq!(d.d2_twists.len() - d.lambda2_twists.len(), n);
        prop_assert_eq!(d.frobenius_twists.len(), n);
        prop_assert_eq!(d.lambda2_twists.len(), binom(n, 2));
        prop_assert_eq!(d.s2_twists.len(), binom(n + 1, 2));
    }

    #[test]
    fn square_ranks_add_up(seed in any::<u64>(), len in 1usize..=3) {
        let r: Ring<GF101> = Ring::with_vars(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<_> = (0..len).map(|k| random_form(&r, 1 + (k as i64) % 2, &mut rng, 0.6)).collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let g = as_cohomological(&koszul_complex(&r, &gens).unwrap());
        let l = lambda2_complex(&g).unwrap();
        let s = sym2_complex(&g).unwrap();
        for i in 0..=2 * len as i64 {
            let tensor: usize = (0..=i).map(|p| {
                let rk = |q: i64| if (0..=len as i64).contains(&q) { binom(len, len - q as usize) } else { 0 };
                rk(p) * rk(i - p)
            }).sum();
            prop_assert_eq!(l.rank(i) + s.rank(i), tensor);
        }
    }

    #[test]
    fn frobenius_preserves_exactness(seed in any::<u64>(), len in 1usize..=3) {
        let r: Ring<GF2> = Ring::with_vars(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<_> = (0..len).map(|_| random_form(&r, 1, &mut rng, 0.7)).collect();
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let k = koszul_complex(&r, &gens).unwrap();
        let cert = be_exactness_certificate(&k).unwrap();
        prop_assume!(cert.exact);
        prop_assert!(be_exactness_certificate(&frobenius(&k).unwrap()).unwrap().exact);
    }
}

#[test]
fn drop_head_helper_keeps_complex() {
    let r: Ring<QQ> = Ring::with_vars(2);
    let k = as_cohomological(&koszul_complex(&r, &[r.var(0), r.var(1)]).unwrap());
    assert_eq!(drop_head(&k, 1).length(), 1);
}
