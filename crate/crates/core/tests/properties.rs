mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use coxcob::cobord::{dual_valuation_complex, full_cobordization, multi_weighted};
use coxcob::newton::{
    all_faces, face_initial_ideal, integral_closure, newton_polytope, normal_fan, valuation_ideal, MonomialIdeal,
    MonomialValuation,
};
use coxcob::parse::{parse_ideal_with_vars, parse_poly_with_vars};
use coxcob::polyhedra::{Cone, LatticeVector};
use coxcob::singular::{check_theorem_a, jacobian_singular_points, order_at_point, support_at_least, Budget, Verdict};

use common::*;

fn rows_in(n: usize, max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=5)
        .prop_map(|rows| rows.into_iter().filter(|r| r.iter().any(|&e| e > 0)).collect::<Vec<_>>())
        .prop_filter("at least one nonzero row", |rows| !rows.is_empty())
}

fn rows(max_exp: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    (1usize..=3).prop_flat_map(move |n| rows_in(n, max_exp))
}

fn nonprincipal(max_exp: u32) -> impl Strategy<Value = MonomialIdeal> {
    rows(max_exp).prop_map(|r| ideal_of(&r)).prop_filter("non-principal", |j| !j.is_principal())
}

fn cone_gens() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (2usize..=3).prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0i64..=3, n), 1..=5)))
}

fn lv(v: &[i64]) -> LatticeVector {
    LatticeVector::from_i64(v)
}

fn to_i64(v: &LatticeVector) -> Vec<i64> {
    v.to_i64_vec().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_of_dual_is_identity((n, gens) in cone_gens()) {
        let gens: Vec<LatticeVector> = gens.iter().map(|g| lv(g)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let c = Cone::new(n, &gens).unwrap();
        prop_assume!(c.is_full_dimensional() && c.is_strictly_convex());
        prop_assert!(duality_involution(&c).is_ok());
    }

    #[test]
    fn h_and_v_representations_agree((n, gens) in cone_gens(), pt in prop::collection::vec(-1i64..=4, 3)) {
        let gens: Vec<LatticeVector> = gens.iter().map(|g| lv(g)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let c = Cone::new(n, &gens).unwrap();
        for f in c.facets() {
            prop_assert!(c.rays().iter().all(|r| f.dot(r) >= BigInt::from(0)));
            // The apex is the only facet of a half-line.
            if c.dimension() - c.lineality().len() >= 2 {
                prop_assert!(c.rays().iter().any(|r| f.dot(r) == BigInt::from(0)));
            }
        }
        let v = &pt[..n];
        let rays: Vec<Vec<i64>> = c.rays().iter().map(to_i64).collect();
        prop_assert_eq!(c.contains(&lv(v)), in_cone_hull(&rays, v));
    }

    #[test]
    fn star_subdivision_refines(j in nonprincipal(5), v in prop::collection::vec(0i64..=4, 3), pick in 0usize..16) {
        let v = &v[..j.nvars()];
        prop_assert!(subdivision_checks(&j, v).is_ok(), "{:?}", subdivision_checks(&j, v));
        prop_assert!(star_identity(&j, pick).is_ok(), "{:?}", star_identity(&j, pick));
    }

    #[test]
    fn normal_fan_matches_oracle(r in rows(6)) {
        prop_assert_eq!(library_normal_fan(&ideal_of(&r)), oracle_normal_fan(&r));
    }

    #[test]
    fn normal_fan_supports_the_support_function(r in rows(6), v in prop::collection::vec(0i64..=5, 3)) {
        let j = ideal_of(&r);
        let p = newton_polytope(&j);
        let nf = normal_fan(&p);
        let v = lv(&v[..j.nvars()]);
        let hit = nf.fan.max_cones().iter().position(|c| c.contains(&v));
        prop_assert!(hit.is_some(), "orthant point outside the normal fan");
        let vertex = &nf.vertex_of[hit.unwrap()];
        prop_assert_eq!(vertex.to_lattice().dot(&v), p.support_function(&v));
    }

    #[test]
    fn integral_closure_laws(r in rows(5)) {
        let j = ideal_of(&r);
        let c = integral_closure(&j);
        prop_assert!(j.is_subset(&c));
        prop_assert_eq!(integral_closure(&c), c.clone());
        let (pj, pc) = (newton_polytope(&j), newton_polytope(&c));
        prop_assert_eq!(pj.vertices(), pc.vertices());
        prop_assert_eq!(pj.facets(), pc.facets());
        let oracle: BTreeSet<Vec<u32>> = oracle_closure(&r);
        let lib: BTreeSet<Vec<u32>> = c.generators().iter().map(|g| g.0.clone()).collect();
        prop_assert_eq!(lib, oracle);
    }

    #[test]
    fn face_dimensions_complement_normal_cones(r in rows(5)) {
        let j = ideal_of(&r);
        let p = newton_polytope(&j);
        let n = j.nvars();
        for f in all_faces(&p) {
            let normals: Vec<LatticeVector> = f.tight.iter().map(|t| t.normal.clone()).collect();
            let d = if normals.is_empty() { 0 } else { Cone::new(n, &normals).unwrap().dimension() };
            prop_assert_eq!(f.dim + d, n);
        }
    }

    #[test]
    fn face_initial_ideals(r in rows(5)) {
        let j = ideal_of(&r);
        let p = newton_polytope(&j);
        let faces = all_faces(&p);
        for f in &faces {
            let i = face_initial_ideal(&j, f).unwrap();
            if f.is_whole() {
                prop_assert_eq!(&i, &j);
            }
            // A face f inside g is cut out by more facets and keeps fewer
            // generators.
            for g in faces.iter().filter(|g| g.tight.len() < f.tight.len() && g.tight.iter().all(|t| f.tight.contains(t))) {
                let ig = face_initial_ideal(&j, g).unwrap();
                prop_assert!(i.generators().iter().all(|m| ig.generators().contains(m)));
            }
        }
    }

    #[test]
    fn valuation_ideals_multiply(v in prop::collection::vec(0i64..=3, 2), a in 0i64..=4, b in 0i64..=4) {
        prop_assume!(v.iter().any(|&x| x > 0));
        let val = MonomialValuation::from_i64(&v).unwrap();
        let ia = valuation_ideal(&[val.clone()], &[BigInt::from(a)]).unwrap();
        let ib = valuation_ideal(&[val.clone()], &[BigInt::from(b)]).unwrap();
        let iab = valuation_ideal(&[val], &[BigInt::from(a + b)]).unwrap();
        prop_assert!(ia.product(&ib).is_subset(&iab));
    }

    #[test]
    fn presentation_invariants(j in nonprincipal(5), bs in prop::collection::vec(1i64..=3, 4)) {
        let vars = names(j.nvars());
        let full = full_cobordization(&vars, &j).unwrap();
        let b: Vec<BigInt> = bs.iter().cycle().take(full.k()).map(|&x| BigInt::from(x)).collect();
        let p = multi_weighted(&vars, &j, &b).unwrap();
        let n = p.nvars();
        for (i, row) in p.alphas.iter().enumerate() {
            prop_assert!(row.iter().all(|a| *a >= BigInt::from(0)) && row.iter().any(|a| *a > BigInt::from(0)));
            let v = p.valuations[i].vector().coords();
            prop_assert!(row.iter().zip(v).all(|(a, x)| *a == x * &p.scales[i]));
        }
        // Every cone of B_+ maps into a cone of the decomposition, and
        // lies in the orthant fan of B.
        for set in p.bplus_index_sets() {
            let images: Vec<LatticeVector> = set.iter().map(|&i| p.image_of(i)).collect();
            prop_assert!(p.decomposition.max_cones().iter().any(|d| images.iter().all(|v| d.contains(v))));
            prop_assert!(set.iter().all(|&i| i < n + p.k()));
        }
        prop_assert!(multi_weighted_unit_scales(&j).is_ok());
    }

    #[test]
    fn transform_round_trip_holds(r in rows(4), center in rows(4), seed in 0u64..1000, scaled in any::<bool>()) {
        prop_assume!(r[0].len() == center[0].len());
        let mut g = rng(seed);
        let f = random_poly(&mut g, &r);
        prop_assume!(!f.is_zero());
        let j = ideal_of(&center);
        let k = coxcob::newton::exceptional_rays(&j).len();
        let b: Vec<BigInt> = (0..k).map(|i| BigInt::from(1 + (seed as usize + i) % 3)).collect();
        let res = transform_round_trip(&f, &j, if scaled { Some(&b) } else { None });
        prop_assert!(res.is_ok(), "{:?}", res);
    }

    #[test]
    fn dual_complex_is_a_complex(j in nonprincipal(5)) {
        let c = dual_valuation_complex(&j).unwrap();
        let e: BTreeSet<Vec<usize>> = c.e_faces.iter().cloned().collect();
        let d: BTreeSet<Vec<usize>> = c.d_faces.iter().cloned().collect();
        prop_assert!(e.is_subset(&d));
        for i in 0..c.valuations.len() {
            prop_assert!(e.contains(&vec![i]));
        }
        for f in &e {
            for skip in 0..f.len() {
                let sub: Vec<usize> = f.iter().enumerate().filter(|(r, _)| *r != skip).map(|(_, &x)| x).collect();
                prop_assert!(e.contains(&sub));
            }
        }
    }

    #[test]
    fn gradations_compose(j in nonprincipal(5), other in rows(5), face in 0usize..64, mask in 0u32..16) {
        prop_assert!(composition_of_gradations(&j, &j, face, mask).is_ok());
        if other[0].len() == j.nvars() {
            let i = ideal_of(&other);
            let res = composition_of_gradations(&j, &i, face, mask);
            prop_assert!(res.is_ok(), "{:?}", res);
        }
    }

    #[test]
    fn printing_round_trips(r in rows(5), seed in 0u64..1000) {
        let mut g = rng(seed);
        let f = random_poly(&mut g, &r);
        prop_assert_eq!(parse_poly_with_vars(&f.to_string(), f.vars()).unwrap(), f.clone());
        let j = ideal_of(&r);
        let vars = names(j.nvars());
        prop_assert_eq!(parse_ideal_with_vars(&j.render(&vars), &vars).unwrap().ideal, j);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // Over F_p, ord_a(f) >= 2 exactly when f and its partials vanish at a.
    #[test]
    fn singular_points_are_the_order_two_locus(r in rows_in(2, 4), seed in 0u64..1000, pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        let mut g = rng(seed);
        let f = random_poly(&mut g, &r);
        let b = Budget::default();
        match (jacobian_singular_points(&f, p, &b), support_at_least(&[f.clone()], 2, p, &b)) {
            (Ok(a), Ok(s)) => prop_assert_eq!(a, s),
            (Err(_), Err(_)) => {}
            (a, s) => prop_assert!(false, "one side failed: {:?} / {:?}", a, s),
        }
    }

    #[test]
    fn order_zero_iff_nonvanishing(r in rows_in(2, 4), seed in 0u64..1000, a in prop::collection::vec(-2i64..=2, 2)) {
        let mut g = rng(seed);
        let f = random_poly(&mut g, &r);
        let pt: Vec<BigRational> = a.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let ord = order_at_point(&f, &pt).unwrap();
        let value: BigRational = f.terms().map(|(e, c)| {
            e.iter().zip(&pt).fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize))
        }).sum();
        prop_assert_eq!(ord == 0, value != BigRational::from_integer(0.into()));
        let zero = vec![BigRational::from_integer(0.into()); 2];
        let low = f.terms().map(|(e, _)| e.iter().map(|&x| x as u64).sum::<u64>()).min().unwrap();
        prop_assert_eq!(order_at_point(&f, &zero).unwrap(), low);
    }

    #[test]
    fn reports_are_consistent(r in rows_in(2, 4), seed in 0u64..1000) {
        let mut g = rng(seed);
        let f = random_poly(&mut g, &r);
        if let Ok(rep) = check_theorem_a(&f, &[5, 7], &Budget::default()) {
            let worst = rep.conditions.iter().map(|c| c.status).max().unwrap_or(Verdict::Pass);
            prop_assert_eq!(rep.verdict, worst);
            prop_assert!(rep.conditions.iter().filter(|c| c.status == Verdict::Fail).all(|c| c.witness.is_some()));
        }
    }
}
