use bgdual_core::discriminant::{
    discriminant_degree_probe, fiber_report, fiber_report_for, hyperplane_section, hyperplane_section_with, in_discriminant,
    multiplicity_probe, sample_d_tilde, top_stratum, FiberPartition, DEFAULT_CLUSTERING_TOL,
};
use bgdual_core::projective::Hyperplane;
use bgdual_core::theta::ThetaBasis;
use bgdual_core::torus::{TorusParam, TorusPoint};
use bgdual_core::Error;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn basis(n: usize) -> ThetaBasis {
    ThetaBasis::calibrated(n, TorusParam::with_tau(Complex64::new(0.3, 1.1)).unwrap(), None).unwrap()
}

/// Hyperplane cutting `x` twice and `rest` once, completed by the point that
/// makes the Abel sum vanish.
fn tangent_at(b: &ThetaBasis, x: TorusPoint, rest: &[TorusPoint]) -> Hyperplane {
    let p = b.param();
    let mut terms = vec![(2, x)];
    terms.extend(rest.iter().map(|&r| (1, r)));
    let last = p.neg(p.weighted_sum(&terms));
    let mut divisor = vec![(x, 2), (last, 1)];
    divisor.extend(rest.iter().map(|&r| (r, 1)));
    b.hyperplane_through_divisor(&divisor).unwrap()
}

#[test]
fn hyperplanes_through_a_point_vanish_there() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [3, 4, 5] {
        let b = basis(n);
        let p = b.param();
        for _ in 0..10 {
            let y = p.random_point(&mut rng);
            let h = Hyperplane::random_through(&b.embed(y).unwrap(), &mut rng);
            let zeros = hyperplane_section(&h, &b).unwrap();
            assert_eq!(zeros.degree(), n);
            assert!(zeros.points().iter().any(|z| p.distance(*z, y) < 1e-8));
            assert!(p.is_zero(zeros.abel_sum(p)));
        }
    }
}

#[test]
fn generic_hyperplanes_are_off_the_discriminant() {
    let b = basis(4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let h = Hyperplane::random(4, &mut rng);
        let (inside, part) = in_discriminant(&h, &b, DEFAULT_CLUSTERING_TOL).unwrap();
        assert!(!inside);
        assert_eq!(part.parts(), &[1, 1, 1, 1]);
        let report = fiber_report(&h, &b).unwrap();
        assert!(report.abelian);
    }
}

#[test]
fn tangent_and_osculating_hyperplanes() {
    let b = basis(4);
    let p = b.param();
    let h = tangent_at(&b, p.point(0.12, 0.34), &[p.point(0.56, 0.71)]);
    let (inside, part) = in_discriminant(&h, &b, DEFAULT_CLUSTERING_TOL).unwrap();
    assert!(inside);
    assert_eq!(part.parts(), &[2, 1, 1]);
    assert_eq!(part.to_string(), "(2,1,1)");
    let report = fiber_report(&h, &b).unwrap();
    assert!(!report.abelian);
    assert_eq!(report.fiber_type, "F^[2] x F^[1] x F^[1]");

    let t = p.torsion_points(4).unwrap()[5];
    let osc = b.osculating_hyperplane(t).unwrap();
    let (inside, part) = in_discriminant(&osc, &b, DEFAULT_CLUSTERING_TOL).unwrap();
    assert!(inside);
    assert_eq!(part.parts(), &[4]);
}

#[test]
fn fiber_reports_from_partitions() {
    let r = fiber_report_for(FiberPartition::new(vec![1, 1, 1]).unwrap());
    assert!(r.abelian);
    let r = fiber_report_for(FiberPartition::new(vec![2, 1]).unwrap());
    assert!(!r.abelian);
    assert_eq!(r.fiber_type, "F^[2] x F^[1]");
    assert!(FiberPartition::new(vec![1, 2]).is_err());
    assert!(FiberPartition::new(vec![]).is_err());
    assert_eq!(FiberPartition::from_multiplicities(vec![1, 0, 3]).parts(), &[3, 1]);
}

#[test]
fn branches_of_the_tangent_family_differ() {
    let b = basis(4);
    let p = b.param();
    let xs = [p.point(0.21, 0.43), p.point(0.67, 0.18)];
    let hs: Vec<Hyperplane> = (0..4).map(|k| sample_d_tilde(&xs, k, &b).unwrap()).collect();
    for i in 0..4 {
        let (inside, _) = in_discriminant(&hs[i], &b, DEFAULT_CLUSTERING_TOL).unwrap();
        assert!(inside);
        for j in 0..i {
            assert!(hs[i].distance(&hs[j]) > 1e-3);
        }
    }
    assert!(sample_d_tilde(&xs[..1], 0, &b).is_err());
}

#[test]
fn near_coincident_zeros_pass_through_an_indeterminate_band() {
    let b = basis(3);
    let p = b.param();
    let tangent = tangent_at(&b, p.point(0.3, 0.6), &[]);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let push = Hyperplane::random(3, &mut rng);
    let mut outcomes = Vec::new();
    // the double zero splits by roughly sqrt(eps)
    for e in 0..=20 {
        let eps = 10f64.powi(-22 + e);
        let coords = tangent.coords().iter().zip(push.coords()).map(|(a, c)| a + eps * c).collect();
        let h = Hyperplane::new(coords).unwrap();
        let code = match hyperplane_section_with(&h, &b, DEFAULT_CLUSTERING_TOL) {
            Ok(z) if z.zeros.len() == 2 => 'm',
            Ok(z) if z.zeros.len() == 3 => 's',
            Ok(z) => panic!("unexpected partition {}", z.partition()),
            Err(Error::Indeterminate { .. }) => 'i',
            Err(e) => panic!("{e}"),
        };
        outcomes.push(code);
    }
    let s: String = outcomes.into_iter().collect();
    assert!(s.starts_with('m') && s.ends_with('s'), "{s}");
    assert!(s.contains('i'), "{s}");
    // merged, then indeterminate, then split; never interleaved
    let trimmed: String = s.chars().fold(String::new(), |mut acc, c| {
        if !acc.ends_with(c) {
            acc.push(c);
        }
        acc
    });
    assert_eq!(trimmed, "mis", "{s}");
}

#[test]
fn pencil_degree_probe() {
    for n in [3, 4] {
        let probe = discriminant_degree_probe(&basis(n), 2).unwrap();
        assert_eq!(probe.degree, 2 * n);
    }
}

#[test]
fn multiplicity_probes() {
    let b = basis(3);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let p = b.param();
    let h = tangent_at(&b, p.point(0.4, 0.2), &[]);
    assert_eq!(multiplicity_probe(&h, &b, 1).unwrap().multiplicity, 1);
    let top = top_stratum(&b, 0).unwrap();
    assert_eq!(top.points.len(), 9);
    assert!(top.multiplicities.iter().all(|&m| m == 2));
    assert_eq!(top.span_rank, 3);
    let generic = Hyperplane::random(3, &mut rng);
    assert_eq!(multiplicity_probe(&generic, &b, 1).unwrap().multiplicity, 0);
}
