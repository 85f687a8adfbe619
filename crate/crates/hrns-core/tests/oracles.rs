//! Cross-checks of the optimized library kernels against independent
//! brute-force oracles: exhaustive multiplicity search for membership,
//! a dense Jacobi eigensolver for operator norms, and direct evaluation
//! for the torus certificate.

mod common;

use common::{
    brute_box_set, brute_member, largest_singular_value_dense, pt, random_rank2_cone, rng,
};
use hrns_core::{
    apply_polynomial, fock_matrix, minimal_generators, operator_norm, torus_norm, Cone,
    LatticePoint, Polynomial,
};
use num_complex::Complex64;
use rand::Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn box_membership_matches_brute_force_rank_two() {
    let mut r = rng(0x5EED_0001);
    let bound = pt(&[10, 10]);
    for _ in 0..20 {
        let cone = random_rank2_cone(&mut r);
        let expected = brute_box_set(cone.generators(), &bound);
        let got = common::box_set(&cone, &bound);
        assert_eq!(got, expected, "box set mismatch for {:?}", cone.generators());
        // Spot-check certificates on a few interior points as well.
        for _ in 0..16 {
            let p = pt(&[r.gen_range(0..=10), r.gen_range(0..=10)]);
            let cert = cone.membership(&p).expect("membership");
            assert_eq!(cert.member, brute_member(cone.generators(), &p));
            if let Some(parts) = &cert.decomposition {
                let mut total = LatticePoint::zero(2);
                for part in parts {
                    assert!(cone.generators().contains(part));
                    total = total.checked_add(part).unwrap();
                }
                assert_eq!(total, p);
            }
        }
    }
}

#[test]
fn box_membership_matches_brute_force_rank_three() {
    let gens = vec![pt(&[2, 0, 0]), pt(&[0, 3, 1]), pt(&[1, 1, 0]), pt(&[0, 0, 2])];
    let cone = Cone::new(3, gens.clone()).unwrap();
    let bound = pt(&[6, 6, 6]);
    assert_eq!(common::box_set(&cone, &bound), brute_box_set(&gens, &bound));
}

#[test]
fn axis_profile_matches_brute_force_sections() {
    let mut r = rng(0x5EED_0002);
    for _ in 0..12 {
        let count = r.gen_range(2..=3usize);
        let mut values = Vec::new();
        while values.len() < count {
            let v = r.gen_range(2..=12i64);
            values.push(v);
        }
        let gens: Vec<_> = values.iter().map(|&v| pt(&[v])).collect();
        let cone = Cone::new(1, gens.clone()).unwrap();
        let profile = cone.axis_profile(0).expect("axis profile");
        let gcd = values.iter().fold(0u64, |a, &b| num_integer::gcd(a, b as u64));
        assert_eq!(profile.gcd, gcd);
        if gcd == 1 {
            // The finite description (conductor + gaps) reconstructs
            // membership exactly.
            for n in 0..200u64 {
                let expected = brute_member(&gens, &pt(&[n as i64]));
                assert_eq!(
                    profile.axis_member(n),
                    expected,
                    "axis membership mismatch at {n} for generators {values:?}"
                );
            }
            let conductor = profile.conductor.expect("gcd 1 has a conductor");
            assert!(conductor == 0 || !profile.axis_member(conductor - 1));
            for n in conductor..conductor + 40 {
                assert!(profile.axis_member(n));
            }
        } else {
            // No cofinite description exists, so the profile carries none.
            assert_eq!(profile.conductor, None);
            assert!(profile.gaps.is_empty());
            assert_eq!(profile.multiplicity, Some(*values.iter().min().unwrap() as u64));
        }
    }
}

#[test]
fn minimal_generators_match_brute_force_reduction() {
    let mut r = rng(0x5EED_0003);
    for _ in 0..20 {
        let cone = random_rank2_cone(&mut r);
        let minimal = minimal_generators(&cone).expect("minimal generators");
        // Oracle: a generator is redundant exactly when the remaining
        // generators already produce it.
        let mut expected: Vec<LatticePoint> = Vec::new();
        for g in cone.generators() {
            let others: Vec<_> = cone
                .generators()
                .iter()
                .filter(|h| *h != g)
                .cloned()
                .collect();
            if !brute_member(&others, g) {
                expected.push(g.clone());
            }
        }
        expected.sort();
        assert_eq!(minimal, expected, "generators {:?}", cone.generators());
    }
}

#[test]
fn operator_norm_matches_dense_jacobi_solver() {
    let cone = Cone::numerical(&[2, 3]).unwrap();
    let bound = pt(&[12]);
    let polys = vec![
        Polynomial::univariate(&[(2, c(1.0, 0.0)), (3, c(1.0, 0.0))]).unwrap(),
        Polynomial::univariate(&[(0, c(0.3, -0.4)), (2, c(0.0, 1.0)), (5, c(-1.25, 0.5))])
            .unwrap(),
        Polynomial::univariate(&[(3, c(-0.7, 0.1)), (4, c(0.2, 0.9)), (7, c(1.0, -1.0))])
            .unwrap(),
    ];
    for p in &polys {
        let op = apply_polynomial(&cone, p, &bound).expect("compression");
        let fast = operator_norm(&op, 1e-10).expect("power iteration");
        let dense = largest_singular_value_dense(&op.to_dense());
        assert!(
            (fast - dense).abs() <= 1e-6,
            "norm mismatch: power {fast} vs jacobi {dense}"
        );
    }
}

#[test]
fn operator_norm_matches_dense_jacobi_solver_rank_two() {
    let cone = Cone::new(2, vec![pt(&[2, 0]), pt(&[3, 0]), pt(&[0, 1])]).unwrap();
    let p = Polynomial::from_terms(vec![
        (pt(&[2, 0]), c(1.0, 0.0)),
        (pt(&[0, 1]), c(0.5, 0.5)),
        (pt(&[2, 1]), c(-0.25, 0.0)),
    ])
    .unwrap();
    let op = apply_polynomial(&cone, &p, &pt(&[8, 8])).expect("compression");
    let fast = operator_norm(&op, 1e-10).expect("power iteration");
    let dense = largest_singular_value_dense(&op.to_dense());
    assert!(
        (fast - dense).abs() <= 1e-6,
        "norm mismatch: power {fast} vs jacobi {dense}"
    );
}

#[test]
fn shift_matrices_match_dense_jacobi_norm_one() {
    let cone = Cone::numerical(&[3, 5]).unwrap();
    let op = fock_matrix(&cone, &pt(&[3]), &pt(&[20])).expect("shift");
    let fast = operator_norm(&op, 1e-10).expect("power iteration");
    let dense = largest_singular_value_dense(&op.to_dense());
    assert!((fast - 1.0).abs() <= 1e-9);
    assert!((dense - 1.0).abs() <= 1e-9);
}

#[test]
fn torus_norm_certificate_dominates_random_evaluations() {
    let mut r = rng(0x5EED_0004);
    for _ in 0..10 {
        let terms: Vec<(i64, Complex64)> = (0..r.gen_range(1..=4usize))
            .map(|_| {
                (
                    r.gen_range(0..=9i64),
                    c(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)),
                )
            })
            .collect();
        let p = Polynomial::univariate(&terms).unwrap();
        if p.is_zero() {
            continue;
        }
        let (value, error) = torus_norm(&p, 256).expect("torus norm");
        for _ in 0..200 {
            let theta: f64 = r.gen_range(0.0..std::f64::consts::TAU);
            let mut eval = Complex64::new(0.0, 0.0);
            for (s, coeff) in p.terms() {
                eval += coeff * Complex64::cis(theta * s.get(0) as f64);
            }
            assert!(
                eval.norm() <= value + error + 1e-12,
                "evaluation {} exceeded certificate {} + {}",
                eval.norm(),
                value,
                error
            );
        }
        // The grid maximum can never exceed the true supremum, which in turn
        // is at most the l1 norm of the coefficients.
        let l1: f64 = p.terms().map(|(_, coeff)| coeff.norm()).sum();
        assert!(value <= l1 + 1e-12);
    }
}

#[test]
fn torus_norm_certificate_dominates_random_evaluations_rank_two() {
    let mut r = rng(0x5EED_0005);
    let p = Polynomial::from_terms(vec![
        (pt(&[1, 1]), c(1.0, 0.0)),
        (pt(&[2, 0]), c(0.5, -0.5)),
        (pt(&[0, 3]), c(-0.25, 0.75)),
    ])
    .unwrap();
    let (value, error) = torus_norm(&p, 256).expect("torus norm");
    for _ in 0..200 {
        let t0: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let t1: f64 = r.gen_range(0.0..std::f64::consts::TAU);
        let mut eval = Complex64::new(0.0, 0.0);
        for (s, coeff) in p.terms() {
            eval += coeff * Complex64::cis(t0 * s.get(0) as f64 + t1 * s.get(1) as f64);
        }
        assert!(eval.norm() <= value + error + 1e-12);
    }
}
