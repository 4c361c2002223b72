mod common;

use common::*;
use proptest::prelude::*;
use refinedtrop::chigenus::*;
use refinedtrop::exactmath::IntVector;
use refinedtrop::polyalgebra::{is_zero_in_algebra, lat};
use refinedtrop::polytope::LatticePolytope;
use refinedtrop::tropcycle::{is_balanced, stable_intersection, Cone, TropicalCycle, WeightPoly};
use refinedtrop::Error;

fn u(e: i32, p: i64, q: i64) -> WeightPoly {
    WeightPoly::monomial(e, rat(p, q))
}

fn weight_on_ray(c: &TropicalCycle, r: &[i64]) -> WeightPoly {
    c.weight_of(&Cone::from_generators(&[pt(r)], &[], c.rank()))
}

fn chi(c: &[i64]) -> ChiPolynomial {
    ChiPolynomial::from_i64s(c)
}

fn tetra() -> LatticePolytope {
    poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
}

#[test]
fn hypersurface_genus_examples() {
    assert!(rel_chi_hypersurface(&poly(&[&[1, 1]])).is_zero());
    let r = rel_chi_hypersurface(&delta1());
    assert_eq!(lat(&r.coeff(1)), rat(1, 1));
    assert_eq!(lat(&r.coeff(2)), rat(-2, 1));
    let r = rel_chi_hypersurface(&segment());
    assert_eq!(lat(&r.coeff(1)), rat(1, 1));
    assert_eq!(lat(&r.coeff(2)), rat(0, 1));
}

#[test]
fn intersection_genus_examples() {
    assert_eq!(rel_chi_intersection(2, &[]).unwrap(), RelChiGenus::torus(2));
    assert_eq!(rel_chi_intersection(2, &[delta2()]).unwrap(), rel_chi_hypersurface(&delta2()));
    let r = rel_chi_intersection(2, &[delta1(), delta2()]).unwrap();
    assert_eq!(r.codim(), 2);
    // only exponents >= k occur, and those beyond n vanish in the algebra
    assert!(r.coeffs().keys().all(|&e| e >= 2));
    for (e, c) in r.coeffs() {
        if *e > 2 {
            assert!(is_zero_in_algebra(c));
        }
    }
    assert!(rel_chi_vanishing_report(&r).is_empty());
}

#[test]
fn chi_y_examples() {
    assert_eq!(chi_y(2, &[delta1()]).unwrap(), chi(&[-3, 1]));
    assert_eq!(chi_y(2, &[delta2()]).unwrap(), chi(&[-5]));
    assert_eq!(chi_y(2, &[]).unwrap(), chi(&[1, -2, 1]));
    assert_eq!(chi_y(3, &[]).unwrap(), ChiPolynomial::torus(3));
    assert_eq!(chi_y(2, &[delta1(), delta2()]).unwrap(), chi(&[4]));
    assert_eq!(chi_y(2, &[delta1(), delta2(), delta1()]).unwrap(), chi(&[]));
    assert!(matches!(chi_y(3, &[delta1()]), Err(Error::RankMismatch { .. })));
}

#[test]
fn closed_form_examples() {
    assert_eq!(chi_y_closed_form_2d(&delta1()).unwrap(), chi(&[-3, 1]));
    assert_eq!(chi_y_closed_form_2d(&delta2()).unwrap(), chi(&[-5]));
    assert_eq!(chi_y_closed_form_2d(&delta1().dilate(2)).unwrap(), chi(&[-8]));
    assert_eq!(chi_y_genus_form_2d(&delta1()).unwrap(), chi(&[-3, 1]));
    assert_eq!(chi_y_genus_form_2d(&delta2()).unwrap(), chi(&[-5]));
    assert_eq!(chi_y_genus_form_2d(&delta1().dilate(2)).unwrap(), chi(&[-8]));
    assert!(matches!(chi_y_closed_form_2d(&segment()), Err(Error::NotFullDimPolygon)));
    assert!(matches!(chi_y_genus_form_2d(&segment()), Err(Error::NotFullDimPolygon)));
}

#[test]
fn dhn_examples() {
    assert_eq!(dhn_chi_y(2, &[]).unwrap(), chi(&[1, -2, 1]));
    assert_eq!(dhn_chi_y(3, &[]).unwrap(), ChiPolynomial::torus(3));
    assert_eq!(dhn_chi_y(2, &[delta1()]).unwrap(), chi(&[-3, 1]));
    assert_eq!(dhn_chi_y(2, &[delta2()]).unwrap(), chi(&[-5]));
    assert_eq!(dhn_chi_y(2, &[delta1(), delta2()]).unwrap(), chi(&[4]));
}

#[test]
fn degenerate_cases() {
    let point = poly(&[&[0, 0]]);
    assert_eq!(chi_y(2, &[point.clone()]).unwrap(), chi(&[]));
    assert_eq!(dhn_chi_y(2, &[point]).unwrap(), chi(&[]));
    // a circle minus two points
    assert_eq!(chi_y(2, &[segment()]).unwrap(), chi(&[-1, 1]));
    assert_eq!(dhn_chi_y(2, &[segment()]).unwrap(), chi(&[-1, 1]));
}

#[test]
fn refined_trop_examples() {
    let t = refined_trop(2, &[delta1()]).unwrap();
    for r in [[1, 0], [-1, 0], [0, 1], [0, -1]] {
        assert_eq!(weight_on_ray(&t, &r), u(1, 1, 1));
    }
    assert_eq!(t.weight_of(&Cone::origin(2)), &u(1, -1, 1) + &u(2, -2, 1));
    assert_eq!(t.codimensions().into_iter().collect::<Vec<_>>(), vec![1, 2]);

    let t = refined_trop(2, &[delta2()]).unwrap();
    assert_eq!(weight_on_ray(&t, &[1, 0]), u(1, 1, 1));
    assert_eq!(weight_on_ray(&t, &[0, 1]), u(1, 2, 1));
    assert_eq!(weight_on_ray(&t, &[-2, -1]), u(1, 1, 1));
    assert_eq!(weight_on_ray(&t, &[1, -1]), u(1, 1, 1));
    assert_eq!(t.weight_of(&Cone::origin(2)), &u(1, -5, 2) + &u(2, -5, 1));
    assert_eq!(t.weight_of(&Cone::origin(2)).to_string(), "-5/2*(y-1)^-1 - 5*(y-1)^-2");

    assert!(refined_trop(2, &[poly(&[&[0, 0]])]).unwrap().is_zero());
    assert_eq!(refined_trop(2, &[]).unwrap(), TropicalCycle::unit(2));
}

#[test]
fn unrefined_trop_examples() {
    let t = unrefined_trop(2, &[delta2()]).unwrap();
    assert_eq!(weight_on_ray(&t, &[0, 1]), WeightPoly::constant(rat(2, 1)));
    assert_eq!(weight_on_ray(&t, &[-2, -1]), WeightPoly::constant(rat(1, 1)));
    let t = unrefined_trop(2, &[delta1(), delta1()]).unwrap();
    assert_eq!(t.weight_of(&Cone::origin(2)), WeightPoly::constant(rat(2, 1)));
    let t = unrefined_trop(2, &[delta1(), delta2()]).unwrap();
    assert_eq!(t.weight_of(&Cone::origin(2)), WeightPoly::constant(mixed_area(&delta1(), &delta2())));
}

#[test]
fn specialization_examples() {
    assert!(check_specialization(2, &[delta1()]).unwrap());
    assert!(check_specialization(2, &[delta2()]).unwrap());
    assert!(check_specialization(2, &[delta1(), delta2()]).unwrap());
    assert!(check_specialization(3, &[tetra()]).unwrap());
}

#[test]
fn refined_trop_is_balanced_per_exponent() {
    for t in [refined_trop(2, &[delta2()]).unwrap(), refined_trop(3, &[tetra(), tetra().dilate(2)]).unwrap()] {
        assert!(is_balanced(&t).is_balanced());
    }
}

#[test]
fn rank_three_full_intersection() {
    let a = tetra();
    let b = poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
    let c = poly(&[&[0, 0, 0], &[1, 1, 0], &[0, 1, 1]]);
    let deltas = [a, b, c];
    let start = std::time::Instant::now();
    let x = chi_y(3, &deltas).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(x, dhn_chi_y(3, &deltas).unwrap());
    let t = refined_trop(3, &deltas).unwrap();
    let plain = unrefined_trop(3, &deltas).unwrap();
    // k = n: a zero-dimensional cycle whose weight is the number of points
    assert_eq!(t.codimensions().into_iter().collect::<Vec<_>>(), vec![3]);
    let w = plain.weight_of(&Cone::origin(3)).as_constant().unwrap();
    assert_eq!(refinedtrop::exactmath::Rational::from_integer(x.coeff(0)), w);
    assert!(check_specialization(3, &deltas).unwrap());
    eprintln!("rank 3, k = 3: chi_y in {elapsed:?}");
}

#[test]
fn vanishing_beyond_rank_rank_three() {
    let r = rel_chi_intersection(3, &[tetra(), poly(&[&[0, 0, 0], &[1, 1, 0], &[0, 0, 2]])]).unwrap();
    assert!(rel_chi_vanishing_report(&r).is_empty());
    assert!(r.coeffs().iter().filter(|(e, _)| **e > 3).all(|(_, c)| lat(c) == rat(0, 1)));
}

fn lattice_polygon() -> impl Strategy<Value = LatticePolytope> {
    full_polytope(2, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn chi_y_agrees_with_dhn(p in any_polytope(2, 3), q in any_polytope(2, 3)) {
        prop_assert_eq!(chi_y(2, &[p.clone()]).unwrap(), dhn_chi_y(2, &[p.clone()]).unwrap());
        prop_assert_eq!(chi_y(2, &[p.clone(), q.clone()]).unwrap(), dhn_chi_y(2, &[p, q]).unwrap());
    }

    #[test]
    fn chi_y_agrees_with_dhn_3d(p in any_polytope(3, 2), q in any_polytope(3, 2)) {
        prop_assert_eq!(chi_y(3, &[p.clone()]).unwrap(), dhn_chi_y(3, &[p.clone()]).unwrap());
        prop_assert_eq!(chi_y(3, &[p.clone(), q.clone()]).unwrap(), dhn_chi_y(3, &[p, q]).unwrap());
    }

    #[test]
    fn polygon_forms_agree(p in lattice_polygon()) {
        let a = chi_y(2, &[p.clone()]).unwrap();
        prop_assert_eq!(&a, &chi_y_closed_form_2d(&p).unwrap());
        prop_assert_eq!(&a, &chi_y_genus_form_2d(&p).unwrap());
    }

    #[test]
    fn full_intersections_count_mixed_area(p in any_polytope(2, 3), q in any_polytope(2, 3)) {
        let x = chi_y(2, &[p.clone(), q.clone()]).unwrap();
        let m = mixed_area(&p, &q);
        prop_assert_eq!(refinedtrop::exactmath::Rational::from_integer(x.coeff(0)), m);
        prop_assert!(x.degree().unwrap_or(0) == 0);
    }

    #[test]
    fn product_rule(p in any_polytope(2, 3), q in any_polytope(2, 3)) {
        let lhs = refined_trop(2, &[p.clone(), q.clone()]).unwrap();
        let rhs = stable_intersection(&refined_trop(2, &[p.clone()]).unwrap(), &refined_trop(2, &[q.clone()]).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_rule_3d(p in any_polytope(3, 2), q in any_polytope(3, 2)) {
        let lhs = refined_trop(3, &[p.clone(), q.clone()]).unwrap();
        let rhs = stable_intersection(&refined_trop(3, &[p.clone()]).unwrap(), &refined_trop(3, &[q.clone()]).unwrap()).unwrap();
        prop_assert!(is_balanced(&lhs).is_balanced());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialization_holds(p in any_polytope(3, 2), q in any_polytope(3, 2)) {
        prop_assert!(check_specialization(3, &[p.clone()]).unwrap());
        prop_assert!(check_specialization(3, &[p, q]).unwrap());
    }

    #[test]
    fn translation_does_not_matter(p in any_polytope(3, 2), t in prop::collection::vec(-3i64..=3, 3)) {
        let moved = p.translate(&IntVector::from_i64s(&t));
        prop_assert_eq!(chi_y(3, &[p.clone()]).unwrap(), chi_y(3, &[moved.clone()]).unwrap());
        prop_assert_eq!(refined_trop(3, &[p]).unwrap(), refined_trop(3, &[moved]).unwrap());
    }
}
