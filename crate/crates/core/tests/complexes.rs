mod common;

use common::*;
use pfaffian_core::complexes::*;
use pfaffian_core::{Error, Ring, GF101, QQ};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cyclic<K: pfaffian_core::Field>(r: &Ring<K>, gens: &[&str]) -> PresentedModule<K> {
    let polys: Vec<_> = gens.iter().map(|s| r.p(s)).collect();
    PresentedModule::cyclic(r, &polys).unwrap()
}

#[test]
fn resolution_of_the_residue_field_is_koszul() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let res = minimal_free_resolution(&cyclic(&r, &["x", "y", "z"]), 10);
    assert_eq!(res.twists(), vec![vec![0], vec![1, 1, 1], vec![2, 2, 2], vec![3]]);
    assert!(res.is_minimal());
    let koszul = koszul_complex(&r, &[r.p("x"), r.p("y"), r.p("z")]).unwrap();
    assert_eq!(koszul.twists(), res.twists());
}

#[test]
fn free_module_resolves_itself() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let f = GradedFreeModule::new(&r, vec![0, 2]);
    let res = minimal_free_resolution(&PresentedModule::free(f.clone()), 5);
    assert_eq!(res.length(), 0);
    assert_eq!(res.module(0), f);
}

#[test]
fn principal_ideal() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let res = minimal_free_resolution(&cyclic(&r, &["x^2"]), 5);
    assert_eq!(res.twists(), vec![vec![0], vec![2]]);
}

#[test]
fn non_minimal_presentations_are_pruned() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    // generators x, y, z, x + y and a redundant unit relation
    let p = map_from(
        &r,
        &[1, 1, 1, 1, 0],
        &[0, 0],
        &[&["x", "y", "z", "x + y", "0"], &["0", "0", "0", "0", "1"]],
    );
    let res = minimal_free_resolution(&PresentedModule::new(p), 10);
    assert_eq!(res.twists(), vec![vec![0], vec![1, 1, 1], vec![2, 2, 2], vec![3]]);
}

#[test]
fn minimize_examples() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let s = GradedFreeModule::new(&r, vec![0]);
    let unit = FreeComplex::new(0, vec![GradedMap::identity(&s)]).unwrap();
    assert!(minimize(&unit).ranks().iter().all(|&n| n == 0));

    let koszul = koszul_complex(&r, &[r.p("x"), r.p("y")]).unwrap();
    assert_eq!(minimize(&koszul), koszul);

    let split = FreeComplex::new(0, vec![GradedMap::identity(&GradedFreeModule::new(&r, vec![1]))]).unwrap();
    let sum = koszul.direct_sum(&split).unwrap();
    assert_eq!(sum.ranks(), vec![2, 3, 1]);
    let m = minimize(&sum);
    assert_eq!(m.betti_table(), koszul.betti_table());
    assert!(m.is_minimal());
}

#[test]
fn dual_of_a_length_two_complex() {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w");
    let c = koszul_complex(&r, &[r.p("x"), r.p("y^2")]).unwrap();
    let e = 5;
    let d = dual_twist(&c, e);
    assert_eq!(d.twists(), vec![vec![2], vec![4, 3], vec![5]]);
    // even length: the double dual negates every differential
    let dd = dual_twist(&d, e);
    assert_eq!(dd.modules(), c.modules());
    for k in 1..=2 {
        assert_eq!(dd.differential(k), c.differential(k).neg());
    }
}

#[test]
fn dual_is_an_involution_in_odd_length() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let c = koszul_complex(&r, &[r.p("x"), r.p("y"), r.p("z^2")]).unwrap();
    assert_eq!(dual_twist(&dual_twist(&c, 7), 7), c);
}

#[test]
fn koszul_complex_is_self_dual() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let c = koszul_complex(&r, &[r.p("x"), r.p("y"), r.p("z")]).unwrap();
    let d = dual_twist(&c, 3);
    assert_eq!(d.twists(), c.twists());
    for k in 1..=3 {
        assert!(equal_up_to_signed_permutation(&d.differential(k), &c.differential(k)), "d_{k}");
    }
    let m = PresentedModule::new(d.differential(1));
    assert_eq!(minimal_free_resolution(&m, 5).betti_table(), c.betti_table());
}

#[test]
fn koszul_complex_on_four_variables_is_exact() {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w");
    let c = koszul_complex(&r, &r.gens()).unwrap();
    let cert = be_exactness_certificate(&c).unwrap();
    assert!(cert.exact, "{cert}");
    assert_eq!(cert.module_ranks, vec![1, 4, 6, 4, 1]);
    assert_eq!(cert.ranks, vec![1, 3, 3, 1]);
    // every ideal of maximal nonvanishing minors here has radical (x, y, z, w)
    assert_eq!(cert.grades, vec![Grade::Finite(4); 4]);
    for (k, g) in cert.grades.iter().enumerate() {
        assert!(g.at_least(k + 1));
    }
}

#[test]
fn exactness_certificate_small_cases() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let c = FreeComplex::new(0, vec![map_from(&r, &[1], &[0], &[&["x"]])]).unwrap();
    let cert = be_exactness_certificate(&c).unwrap();
    assert!(cert.exact);
    assert_eq!(cert.ranks, vec![1]);

    let z = FreeComplex::new(0, vec![map_from(&r, &[0], &[0], &[&["0"]])]).unwrap();
    let cert = be_exactness_certificate(&z).unwrap();
    assert!(!cert.exact);
    assert!(cert.violations[0].contains("rank condition"));
}

#[test]
fn composition_must_vanish() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let d1 = map_from(&r, &[1], &[0], &[&["x"]]);
    let d2 = map_from(&r, &[2], &[1], &[&["y"]]);
    assert_eq!(FreeComplex::new(0, vec![d1, d2]).unwrap_err(), Error::NotAComplex { index: 1 });
}

#[test]
fn non_exact_by_grade() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let d1 = map_from(&r, &[2, 2], &[0], &[&["x*z", "y*z"]]);
    // the kernel of d1 is generated by (-y, x)
    let d2 = map_from(&r, &[3], &[2, 2], &[&["-y"], &["x"]]);
    let c = FreeComplex::new(0, vec![d1.clone(), d2]).unwrap();
    let cert = be_exactness_certificate(&c).unwrap();
    assert!(cert.exact, "{cert}");
    assert_eq!(cert.grades, vec![Grade::Finite(1), Grade::Finite(2)]);
    // z (-y, x) only reaches part of the kernel
    let d2 = map_from(&r, &[4], &[2, 2], &[&["-y*z"], &["x*z"]]);
    let c = FreeComplex::new(0, vec![d1, d2]).unwrap();
    let cert = be_exactness_certificate(&c).unwrap();
    assert!(!cert.exact);
    assert_eq!(cert.grades, vec![Grade::Finite(1), Grade::Finite(1)]);
    assert!(cert.violations[0].contains("grade condition at d_2"));
}

#[test]
fn euler_characteristic_examples() {
    let r3: Ring<QQ> = Ring::with_vars(4);
    let s = FreeComplex::single(GradedFreeModule::new(&r3, vec![0]), 0);
    assert_eq!(euler_characteristic(&s, 0), 1);
    let r7: Ring<QQ> = Ring::with_vars(8);
    let s7 = FreeComplex::single(GradedFreeModule::new(&r7, vec![0]), 0);
    assert_eq!(euler_characteristic(&s7, -9), -8);
    let k = koszul_complex(&r3, &[r3.p("x0"), r3.p("x1"), r3.p("x2")]).unwrap();
    // signed binomial sum over the twists 0; 1,1,1; 2,2,2; 3 at m = 5
    let oracle = |e: i64| -> i128 { ((e + 1) * (e + 2) * (e + 3) / 6) as i128 };
    let direct = oracle(5) - 3 * oracle(4) + 3 * oracle(3) - oracle(2);
    assert_eq!(direct, 1);
    assert_eq!(euler_characteristic(&k, 5), 1);
}

#[test]
fn naive_truncation() {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w,v");
    let c = koszul_complex(&r, &r.gens()).unwrap().shift(2);
    assert_eq!((c.lo(), c.hi()), (-2, 3));
    let t = naive_truncate(&c, 0, Side::AtLeast);
    assert_eq!((t.lo(), t.hi()), (0, 3));
    assert_eq!(t.differential(3), c.differential(3));
    assert_eq!(naive_truncate(&c, -10, Side::AtLeast), c);
    let b = naive_truncate(&c, 0, Side::Below);
    assert_eq!((b.lo(), b.hi()), (-2, -1));
}

fn random_cyclic(seed: u64) -> PresentedModule<GF101> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r: Ring<GF101> = Ring::with_vars(3);
    let k = rng.gen_range(1..=3);
    let gens: Vec<_> = (0..k).map(|_| random_form(&r, rng.gen_range(1..=2), &mut rng, 0.5)).collect();
    PresentedModule::cyclic(&r, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolutions_are_exact_and_minimal(seed in any::<u64>()) {
        let m = random_cyclic(seed);
        let res = minimal_free_resolution(&m, 10);
        prop_assert!(res.is_minimal());
        prop_assert!(be_exactness_certificate(&res).unwrap().exact);
        // once every t - a_j is at least -N, χ(O(t - a_j)) = dim S_{t - a_j}
        // and the alternating sum is the Hilbert function
        let top = res.twists().into_iter().flatten().max().unwrap();
        for t in top - 2..top + 4 {
            prop_assert_eq!(euler_characteristic(&res, t), m.hilbert_function(t) as i128);
        }
        let coker = PresentedModule::new(res.differential(1));
        for t in 0..6 {
            prop_assert_eq!(coker.hilbert_function(t), m.hilbert_function(t));
        }
    }

    #[test]
    fn betti_numbers_do_not_depend_on_generators(seed in any::<u64>()) {
        let m = random_cyclic(seed);
        let r = m.ring().clone();
        let gens: Vec<_> = m.presentation().entries()[0].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        // add redundant combinations of the generators
        let mut more = gens.clone();
        for _ in 0..2 {
            let i = rng.gen_range(0..gens.len());
            let j = rng.gen_range(0..gens.len());
            let d = gens[i].total_degree().and_then(|x| x.ok()).unwrap_or(0) as i64;
            let e = gens[j].total_degree().and_then(|x| x.ok()).unwrap_or(0) as i64;
            if d >= e {
                let c = random_form(&r, d - e, &mut rng, 0.6);
                more.push(&gens[i] + &(&c * &gens[j]));
            }
        }
        let m2 = PresentedModule::cyclic(&r, &more).unwrap();
        let a = minimal_free_resolution(&m, 10);
        let b = minimal_free_resolution(&m2, 10);
        prop_assert_eq!(a.betti_table(), b.betti_table());
    }

    #[test]
    fn minimize_keeps_homology_and_is_idempotent(seed in any::<u64>()) {
        let m = random_cyclic(seed);
        let res = minimal_free_resolution(&m, 10);
        let r = m.ring().clone();
        let split = FreeComplex::new(1, vec![GradedMap::identity(&GradedFreeModule::new(&r, vec![2]))]).unwrap();
        let split0 = FreeComplex::new(0, vec![GradedMap::identity(&GradedFreeModule::new(&r, vec![1]))]).unwrap();
        let big = res.direct_sum(&split).unwrap().direct_sum(&split0).unwrap();
        let small = minimize(&big);
        prop_assert!(small.is_minimal());
        prop_assert_eq!(minimize(&small).clone(), small.clone());
        prop_assert_eq!(small.betti_table(), res.betti_table());
        let coker = PresentedModule::new(small.differential(1));
        for t in 0..6 {
            prop_assert_eq!(coker.hilbert_function(t), m.hilbert_function(t));
        }
    }

    #[test]
    fn exact_complexes_have_zero_euler_characteristic(seed in any::<u64>(), m in -30i64..30) {
        let r: Ring<GF101> = Ring::with_vars(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // a Koszul complex on a sequence containing a unit is exact everywhere
        let k = rng.gen_range(0..=3);
        let mut f = vec![r.one()];
        f.extend((0..k).map(|_| random_form(&r, rng.gen_range(1..=3), &mut rng, 0.7)));
        let c = koszul_complex(&r, &f).unwrap();
        let cert = be_exactness_certificate(&c.extended(-1, c.hi())).unwrap();
        prop_assert!(cert.exact);
        prop_assert_eq!(euler_characteristic(&c, m), 0);
        // the same holds after splitting off the unit part
        let small = minimize(&c);
        prop_assert_eq!(small.ranks().iter().sum::<usize>(), 0);
    }
}
