mod common;

use common::*;
use pfaffian_core::complexes::{GradedFreeModule, GradedMap};
use pfaffian_core::groebner::{buchberger, lift_solve, module_groebner, syzygies, Ideal, Vector};
use pfaffian_core::{Field, Polynomial, Ring, TermOrder, GF101, QQ};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_s_pairs_reduce<K: Field>(gb: &[Polynomial<K>]) -> bool {
    for i in 0..gb.len() {
        for j in i + 1..gb.len() {
            if !divide(&s_polynomial(&gb[i], &gb[j]), gb).is_zero() {
                return false;
            }
        }
    }
    true
}

#[test]
fn variables_are_their_own_basis() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let gb = buchberger(&r, &[r.p("x"), r.p("y")]).unwrap();
    assert_eq!(gb.polys(), vec![r.p("x"), r.p("y")]);
}

#[test]
fn twisted_cubic_style_basis() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let gens = [r.p("x^2 - y*z"), r.p("x*y - z^2")];
    let gb = buchberger(&r, &gens).unwrap().polys();
    assert!(all_s_pairs_reduce(&gb));
    for g in &gens {
        assert!(divide(g, &gb).is_zero());
    }
    // every basis element is in the ideal: it has a standard representation
    // with respect to the generators plus earlier basis elements
    assert!(gb.len() > 2);
    let lead: Vec<_> = gb.iter().map(|p| p.lead_coeff().unwrap().clone()).collect();
    assert!(lead.iter().all(|c| c == &QQ::from_integer(1.into())));
}

#[test]
fn empty_generators_give_empty_basis() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let gb = buchberger(&r, &[]).unwrap();
    assert!(gb.is_empty());
    assert_eq!(gb.normal_form_poly(&r.p("x + y")), r.p("x + y"));
}

#[test]
fn inhomogeneous_input_is_rejected() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    assert!(buchberger(&r, &[r.p("x^2 + y")]).is_err());
}

#[test]
fn normal_forms() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let gb = buchberger(&r, &[r.p("x")]).unwrap();
    assert_eq!(gb.normal_form_poly(&r.p("x^2 + x*y + y^2")), r.p("y^2"));
    let r: Ring<QQ> = Ring::with_vars(4);
    let gb = buchberger(&r, &r.gens()).unwrap();
    assert_eq!(gb.normal_form_poly(&r.one()), r.one());
    let gens = [r.p("x0^2 - x1*x3"), r.p("x2^3 + x0*x1*x3")];
    let gb = buchberger(&r, &gens).unwrap();
    for g in &gens {
        assert!(gb.normal_form_poly(g).is_zero());
    }
}

#[test]
fn reduced_basis_is_independent_of_generators() {
    let r: Ring<GF101> = Ring::from_names("x,y,z,w");
    let a = buchberger(&r, &[r.p("x*y - z*w"), r.p("x^2 - y*w"), r.p("z^2 - w^2")]).unwrap().polys();
    let b = buchberger(&r, &[r.p("x*y - z*w + z^2 - w^2"), r.p("z^2 - w^2"), r.p("x^2 - y*w - 2*x*y + 2*z*w")])
        .unwrap()
        .polys();
    assert_eq!(a, b);
}

#[test]
fn lex_order_basis() {
    let r: Ring<QQ> = Ring::new(&["x", "y", "z"], TermOrder::Lex).unwrap();
    let gb = buchberger(&r, &[r.p("x^2 - y*z"), r.p("x*y - z^2")]).unwrap().polys();
    assert!(all_s_pairs_reduce(&gb));
}

#[test]
fn koszul_syzygies() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let a = map_from(&r, &[1, 1, 1], &[0], &[&["x", "y", "z"]]);
    let k = syzygies(&a);
    assert_eq!(k.source().twists(), &[2, 2, 2]);
    assert!(a.compose(&k).unwrap().is_zero());
    let koszul = map_from(&r, &[2, 2, 2], &[1, 1, 1], &[&["0", "z", "-y"], &["-z", "0", "x"], &["y", "-x", "0"]]);
    let gb_k = module_groebner(&k).unwrap();
    let gb_koszul = module_groebner(&koszul).unwrap();
    let order = a.source().order();
    for j in 0..3 {
        assert!(gb_k.contains(&koszul.column_vector(j, &order)));
        assert!(gb_koszul.contains(&k.column_vector(j, &order)));
    }
}

#[test]
fn syzygies_of_degenerate_maps() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let a = map_from(&r, &[1], &[0], &[&["x"]]);
    assert_eq!(syzygies(&a).ncols(), 0);
    let zero = GradedMap::zero(GradedFreeModule::new(&r, vec![1]), GradedFreeModule::zero(&r));
    let k = syzygies(&zero);
    assert_eq!(k, GradedMap::identity(&GradedFreeModule::new(&r, vec![1])));
}

#[test]
fn dimension_examples() {
    let r: Ring<QQ> = Ring::from_names("x,y,z,w");
    let d = Ideal::parse(&r, &["x", "y", "z"]).unwrap().dimension().unwrap();
    assert_eq!((d.dim, d.codim), (1, 3));
    let r3: Ring<QQ> = Ring::from_names("x,y,z");
    let i = Ideal::parse(&r3, &["x^2", "x*y", "y^2"]).unwrap();
    let d = i.dimension().unwrap();
    let leads: Vec<_> = i.groebner().polys().iter().map(|p| p.lead_monomial().unwrap().clone()).collect();
    assert_eq!(d.dim, monomial_dimension(&leads, 3));
    assert_eq!((d.dim, d.codim), (1, 2));
    let d = Ideal::new(&r, vec![]).unwrap().dimension().unwrap();
    assert_eq!((d.dim, d.codim), (4, 0));
    assert!(Ideal::parse(&r, &["x", "y^2 - 1"]).is_err());
    let unit = Ideal::new(&r, vec![r.one()]).unwrap();
    assert!(unit.dimension().is_err());
}

#[test]
fn lift_solve_examples() {
    let r: Ring<QQ> = Ring::from_names("x,y,z");
    let id = GradedMap::identity(&GradedFreeModule::new(&r, vec![0, 1]));
    let b = map_from(&r, &[2], &[0, 1], &[&["x^2 - y*z"], &["z"]]);
    assert_eq!(lift_solve(&id, &b).unwrap(), b);

    let a = map_from(&r, &[1, 1, 1], &[0], &[&["x", "y", "z"]]);
    let b = map_from(&r, &[2], &[0], &[&["x^2"]]);
    let x = lift_solve(&a, &b).unwrap();
    assert_eq!(a.compose(&x).unwrap(), b);

    let r2: Ring<QQ> = Ring::from_names("x,y");
    let a = map_from(&r2, &[1], &[0], &[&["x"]]);
    let b = map_from(&r2, &[1], &[0], &[&["y"]]);
    assert!(lift_solve(&a, &b).is_none());
}

#[test]
fn module_membership() {
    let r: Ring<QQ> = Ring::from_names("x,y");
    let a = map_from(&r, &[1, 1], &[0, 0], &[&["x", "y"], &["y", "x"]]);
    let gb = module_groebner(&a).unwrap();
    let order = a.target().order();
    let v = Vector::from_polys(&[r.p("x^2 + y^2"), r.p("2*x*y")], &order);
    assert!(gb.contains(&v));
    let w = Vector::from_polys(&[r.p("x^2"), r.p("0")], &order);
    assert!(!gb.contains(&w));
}

fn random_linear_change(r: &Ring<GF101>, rng: &mut ChaCha8Rng) -> Vec<Polynomial<GF101>> {
    loop {
        let n = r.nvars();
        let rows: Vec<Vec<GF101>> =
            (0..n).map(|_| (0..n).map(|_| GF101::from_i64(rng.gen_range(0..101))).collect()).collect();
        if rank(rows.clone()) == n {
            return rows
                .iter()
                .map(|row| row.iter().enumerate().fold(r.zero(), |acc, (j, c)| &acc + &r.var(j).scale(c)))
                .collect();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_pairs_of_random_bases_reduce(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r: Ring<GF101> = Ring::with_vars(4);
        let gens: Vec<_> = (0..3).map(|_| random_form(&r, rng.gen_range(1..=3), &mut rng, 0.4)).collect();
        let gb = buchberger(&r, &gens).unwrap().polys();
        prop_assert!(all_s_pairs_reduce(&gb));
        for g in &gens {
            prop_assert!(divide(g, &gb).is_zero());
        }
    }

    #[test]
    fn dimension_is_coordinate_free(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r: Ring<GF101> = Ring::with_vars(4);
        let k = rng.gen_range(1..=3);
        let gens: Vec<_> = (0..k).map(|_| random_form(&r, rng.gen_range(1..=2), &mut rng, 0.3)).collect();
        let change = random_linear_change(&r, &mut rng);
        let moved: Vec<_> = gens.iter().map(|g| g.substitute(&change)).collect();
        let a = Ideal::new(&r, gens).unwrap().dimension();
        let b = Ideal::new(&r, moved).unwrap().dimension();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn syzygies_span_the_kernel(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r: Ring<GF101> = Ring::with_vars(3);
        let degs: Vec<u32> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
        let row: Vec<Polynomial<GF101>> = degs.iter().map(|&d| random_form(&r, d as i64, &mut rng, 0.5)).collect();
        let a = GradedMap::new(
            GradedFreeModule::new(&r, degs.iter().map(|&d| d as i64).collect()),
            GradedFreeModule::new(&r, vec![0]),
            vec![row],
        ).unwrap();
        let k = syzygies(&a);
        prop_assert!(a.compose(&k).unwrap().is_zero());
        let gb = module_groebner(&k).unwrap();
        let order = a.source().order();
        for d in 0..=5 {
            for v in kernel_in_degree(&a, d) {
                prop_assert!(gb.contains(&Vector::from_polys(&v, &order)));
            }
        }
    }

    #[test]
    fn lift_solve_returns_true_solutions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r: Ring<GF101> = Ring::with_vars(3);
        let row: Vec<Polynomial<GF101>> = (0..3).map(|_| random_form(&r, 2, &mut rng, 0.5)).collect();
        let a = GradedMap::new(GradedFreeModule::new(&r, vec![2, 2, 2]), GradedFreeModule::new(&r, vec![0]), vec![row]).unwrap();
        let b_entry = if rng.gen_bool(0.5) {
            // an element of the image
            (0..3).fold(r.zero(), |acc, j| &acc + &(&random_form(&r, 1, &mut rng, 0.7) * a.entry(0, j)))
        } else {
            random_form(&r, 3, &mut rng, 0.5)
        };
        let b = GradedMap::new(GradedFreeModule::new(&r, vec![3]), GradedFreeModule::new(&r, vec![0]), vec![vec![b_entry]]).unwrap();
        if let Some(x) = lift_solve(&a, &b) {
            prop_assert_eq!(a.compose(&x).unwrap(), b);
        }
    }
}
