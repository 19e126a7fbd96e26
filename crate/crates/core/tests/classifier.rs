use bgdual_core::classifier::{
    classify, classify_high_dim, kodaira_reduce, pullback_class, AffineEndo, CurveInProduct, VerdictCase,
};
use bgdual_core::torus::{DivisorClass, TorusParam, TorusPoint};
use bgdual_core::Error;
use num_complex::Complex64;
use proptest::prelude::*;

fn param() -> TorusParam {
    TorusParam::with_tau(Complex64::new(0.3, 1.1)).unwrap()
}

fn pt() -> impl Strategy<Value = (f64, f64)> {
    (0.0f64..1.0, 0.0f64..1.0)
}

fn class() -> impl Strategy<Value = (i64, (f64, f64))> {
    (prop_oneof![-4i64..=-1, 1i64..=4], pt())
}

fn make(p: &TorusParam, (d, (a, b)): (i64, (f64, f64))) -> DivisorClass {
    DivisorClass::new(d, p.point(a, b))
}

/// Pull back the divisor `(d - 1)[0] + [s]` point by point: every point `q`
/// has the `m^2` preimages `{x : m x + t = q}`.
fn pullback_oracle(p: &TorusParam, m: i64, t: TorusPoint, l: &DivisorClass) -> DivisorClass {
    let divisor = [(l.degree - 1, p.zero()), (1, l.aj)];
    let mut terms = Vec::new();
    for (k, q) in divisor {
        for x in p.solve_scaled(m, p.sub(q, t)).unwrap() {
            terms.push((k, x));
        }
    }
    DivisorClass::of_divisor(p, &terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pullback_matches_preimage_sum(m in prop_oneof![-4i64..=-1, 1i64..=4], t in pt(), l in class()) {
        let p = param();
        let l = make(&p, l);
        let t = p.point(t.0, t.1);
        let got = pullback_class(&AffineEndo::new(m, t), &l, &p).unwrap();
        let want = pullback_oracle(&p, m, t, &l);
        prop_assert_eq!(got.degree, want.degree);
        prop_assert!(got.isomorphic(&want, &p));
    }

    #[test]
    fn pullback_is_monoidal_and_functorial(
        m1 in prop_oneof![-3i64..=-1, 1i64..=3], m2 in prop_oneof![-3i64..=-1, 1i64..=3],
        t1 in pt(), t2 in pt(), l1 in class(), l2 in class(),
    ) {
        let p = param();
        let (l1, l2) = (make(&p, l1), make(&p, l2));
        let f = AffineEndo::new(m1, p.point(t1.0, t1.1));
        let g = AffineEndo::new(m2, p.point(t2.0, t2.1));
        let lhs = pullback_class(&f, &l1.tensor(&l2, &p), &p).unwrap();
        let rhs = pullback_class(&f, &l1, &p).unwrap().tensor(&pullback_class(&f, &l2, &p).unwrap(), &p);
        prop_assert!(lhs.isomorphic(&rhs, &p));
        // (f ∘ g)^* = g^* f^*
        let lhs = pullback_class(&f.compose(&g, &p), &l1, &p).unwrap();
        let rhs = pullback_class(&g, &pullback_class(&f, &l1, &p).unwrap(), &p).unwrap();
        prop_assert!(lhs.isomorphic(&rhs, &p));
    }

    #[test]
    fn verdict_is_intrinsic(
        ms in proptest::collection::vec(prop_oneof![-2i64..=-1, 1i64..=2], 2..5),
        ts in proptest::collection::vec(pt(), 4),
        y in pt(), l in class(), rot in 0usize..4,
    ) {
        let p = param();
        let mut comps: Vec<AffineEndo> = ms.iter().zip(&ts).map(|(&m, t)| AffineEndo::new(m, p.point(t.0, t.1))).collect();
        comps[0].m = 1;
        let z = CurveInProduct::new(comps).unwrap();
        let l = make(&p, l);
        let Ok(base) = classify(&z, &l, &p) else { return Ok(()) };
        let n = z.n();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let others = [
            z.permuted(&perm).unwrap(),
            z.reparametrize(p.point(y.0, y.1), &p),
        ];
        for other in others {
            match classify(&other, &l, &p) {
                Ok(v) => prop_assert_eq!(v.case, base.case),
                Err(Error::Indeterminate { .. }) => {}
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        // tensoring with a trivial class changes nothing
        let v = classify(&z, &l.tensor(&DivisorClass::trivial(&p), &p), &p).unwrap();
        prop_assert_eq!(v.case, base.case);
    }
}

#[test]
fn diagonals_are_algebraic() {
    let p = param();
    let l = DivisorClass::new(3, p.point(0.2, 0.7));
    for n in 1..=6 {
        let v = classify(&CurveInProduct::diagonal(n, &p).unwrap(), &l, &p).unwrap();
        assert_eq!(v.case, VerdictCase::Algebraic);
    }
}

#[test]
fn antidiagonal_cases() {
    let p = param();
    let s = p.point(0.17, 0.41);
    let l = DivisorClass::new(1, s);
    // equal pullbacks exactly when x1 - x2 = 2 aj(L) for degree one
    let x2 = p.point(0.33, 0.05);
    let x1 = p.add(x2, p.mul_int(2, s));
    let z = CurveInProduct::antidiagonal(x1, x2, &p).unwrap();
    assert_eq!(classify(&z, &l, &p).unwrap().case, VerdictCase::Algebraic);
    let z = CurveInProduct::antidiagonal(p.point(0.1, 0.2), p.point(0.6, 0.3), &p).unwrap();
    assert_eq!(classify(&z, &l, &p).unwrap().case, VerdictCase::Kahler);
}

#[test]
fn degree_mismatch_and_constant_curves() {
    let p = param();
    let l = DivisorClass::new(2, p.point(0.3, 0.3));
    let z = CurveInProduct::new(vec![AffineEndo::identity(&p), AffineEndo::new(2, p.zero())]).unwrap();
    assert_eq!(classify(&z, &l, &p).unwrap().case, VerdictCase::NonKahlerN1);
    let z = CurveInProduct::new(vec![AffineEndo::new(0, p.point(0.1, 0.1)); 3]).unwrap();
    assert_eq!(classify(&z, &l, &p).unwrap().case, VerdictCase::FiberSubvariety);
    let z = CurveInProduct::new(vec![AffineEndo::identity(&p), AffineEndo::new(0, p.zero())]).unwrap();
    let v = classify(&z, &l, &p).unwrap();
    assert_eq!(v.case, VerdictCase::NonKahlerN1);
    assert!(v.extension_note.is_some());
    assert_eq!(classify_high_dim(2).unwrap().case, VerdictCase::NonKahlerN1);
    assert!(classify_high_dim(1).is_err());
}

#[test]
fn rejects_bad_input() {
    let p = param();
    assert!(CurveInProduct::new(vec![]).is_err());
    assert!(CurveInProduct::new(vec![AffineEndo::new(2, p.zero()), AffineEndo::new(3, p.zero())]).is_err());
    let z = CurveInProduct::diagonal(2, &p).unwrap();
    assert!(classify(&z, &DivisorClass::new(0, p.zero()), &p).is_err());
    assert!(matches!(pullback_class(&AffineEndo::new(0, p.zero()), &DivisorClass::trivial(&p), &p), Err(Error::ZeroMultiplier)));
    assert!(kodaira_reduce(&[DivisorClass::trivial(&p)], &p).is_err());
}

#[test]
fn near_isomorphic_pullbacks_are_indeterminate() {
    let p = param();
    let tol = p.tolerance();
    let l = DivisorClass::new(1, p.zero());
    // pullbacks differ by the translation t
    let t = p.reduce(Complex64::new(3.0 * tol, 0.0)).unwrap();
    let z = CurveInProduct::new(vec![AffineEndo::identity(&p), AffineEndo::translation(t)]).unwrap();
    assert!(matches!(classify(&z, &l, &p), Err(Error::Indeterminate { .. })));
}
