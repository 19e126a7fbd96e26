use bgdual_core::torus::{DivisorClass, TorusParam, TorusPoint};
use num_complex::Complex64;
use proptest::prelude::*;

fn taus() -> impl Strategy<Value = TorusParam> {
    prop_oneof![
        Just(Complex64::new(0.0, 1.0)),
        Just(Complex64::new(0.3, 1.1)),
        Just(Complex64::new(0.5, 0.9)),
        (-0.5f64..0.5, 0.5f64..2.0).prop_map(|(re, im)| Complex64::new(re, im)),
    ]
    .prop_map(|tau| TorusParam::with_tau(tau).unwrap())
}

fn point(p: &TorusParam, ab: (f64, f64)) -> TorusPoint {
    p.point(ab.0, ab.1)
}

fn coord() -> impl Strategy<Value = (f64, f64)> {
    (-3.0f64..3.0, -3.0f64..3.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn group_axioms(p in taus(), a in coord(), b in coord(), c in coord()) {
        let (x, y, z) = (point(&p, a), point(&p, b), point(&p, c));
        prop_assert!(p.eq(p.add(p.add(x, y), z), p.add(x, p.add(y, z))));
        prop_assert!(p.eq(p.add(x, p.zero()), x));
        prop_assert!(p.is_zero(p.add(x, p.neg(x))));
        prop_assert!(p.eq(p.add(x, y), p.add(y, x)));
    }

    #[test]
    fn reduction_stays_in_domain_and_class(p in taus(), re in -50.0f64..50.0, im in -50.0f64..50.0) {
        let z = Complex64::new(re, im);
        let r = p.reduce(z).unwrap();
        let (a, b) = p.coords(r.z());
        prop_assert!((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b));
        prop_assert!(p.lattice_distance(z - r.z()) < 1e-11);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classes_form_a_group(
        p in taus(),
        d in proptest::collection::vec(-5i64..=5, 3),
        pts in proptest::collection::vec(coord(), 3),
    ) {
        let c: Vec<DivisorClass> = d.iter().zip(&pts).map(|(&k, &ab)| DivisorClass::new(k, point(&p, ab))).collect();
        let t = DivisorClass::trivial(&p);
        let same = |x: &DivisorClass, y: &DivisorClass| x.isomorphic(y, &p);
        prop_assert!(same(&c[0].tensor(&c[1], &p), &c[1].tensor(&c[0], &p)));
        prop_assert!(same(&c[0].tensor(&c[1], &p).tensor(&c[2], &p), &c[0].tensor(&c[1].tensor(&c[2], &p), &p)));
        prop_assert!(same(&c[0].tensor(&t, &p), &c[0]));
        prop_assert!(c[0].tensor(&c[0].dual(&p), &p).is_trivial(&p));
    }

    #[test]
    fn solve_scaled_inverts_multiplication(p in taus(), m in prop_oneof![-5i64..=-1, 1i64..=5], s in coord()) {
        let s = point(&p, s);
        let sols = p.solve_scaled(m, s).unwrap();
        prop_assert_eq!(sols.len(), (m * m) as usize);
        for x in &sols {
            prop_assert!(p.eq(p.mul_int(m, *x), s));
        }
    }
}

#[test]
fn torsion_points_are_killed() {
    for tau in [Complex64::new(0.0, 1.0), Complex64::new(0.3, 1.1), Complex64::new(0.5, 0.9)] {
        let p = TorusParam::with_tau(tau).unwrap();
        for n in 1..=12 {
            let pts = p.torsion_points(n).unwrap();
            assert_eq!(pts.len(), n * n);
            assert!(pts.iter().all(|t| p.is_zero(p.mul_int(n as i64, *t))));
            for (i, t) in pts.iter().enumerate() {
                assert_eq!(p.torsion_index(n, *t).unwrap(), (i / n, i % n));
            }
        }
    }
}

#[test]
fn torsion_subgroup_sums_to_zero() {
    let p = TorusParam::with_tau(Complex64::new(0.3, 1.1)).unwrap();
    for m in 2..=8 {
        let terms: Vec<(i64, TorusPoint)> = p.torsion_points(m).unwrap().into_iter().map(|t| (1, t)).collect();
        assert!(p.is_zero(p.weighted_sum(&terms)), "m = {m}");
    }
}

#[test]
fn equality_respects_tolerance() {
    let p = TorusParam::new(Complex64::new(0.0, 1.0), 1e-6).unwrap();
    let x = p.point(0.25, 0.75);
    let near = p.reduce(x.z() + Complex64::new(5e-7, 0.0)).unwrap();
    let far = p.reduce(x.z() + Complex64::new(5e-6, 0.0)).unwrap();
    assert!(p.eq(x, near));
    assert!(!p.eq(x, far));
    // across the boundary of the fundamental domain
    let edge = p.point(0.0, 0.5);
    let wrapped = p.reduce(Complex64::new(-1e-8, 0.5)).unwrap();
    assert!(p.eq(edge, wrapped));
}
