use gcm_core::gauge::{is_in_h, sample_h_element, verify_fmn_pullback};
use gcm_core::gcm::{assemble_family, f_component, Member};
use gcm_core::patterns::{PatternKind, PatternSpec};
use gcm_core::quat::random_unitary;
use gcm_core::spectral::{diagonalize, random_orbit_point, SpectrumRequest};
use gcm_core::QMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn family_at_the_torus_point() {
    let lam = [-1.0, -2.5, -4.0];
    let d = QMatrix::torus_diagonal(&lam);
    assert_eq!(Member::g_last(0).eval(&d).unwrap(), -4.0);
    assert_eq!(Member::g_last(2).eval(&d).unwrap(), -1.0);
    assert_eq!(Member::thimm(1, 2).eval(&d).unwrap(), -2.5);
    for m in 1..=3 {
        let expected = 2.0 * (-1f64).powi(m as i32) * 4f64.powi(2 * m as i32);
        assert!((f_component(&d, 0, m).unwrap() - expected).abs() < 1e-9 * expected.abs());
    }
    for m in 1..3 {
        assert!(Member::g(0, m).eval(&d).unwrap().abs() < 1e-12);
    }
}

#[test]
fn family_is_conjugation_invariant_under_the_last_circle() {
    let req = SpectrumRequest::new(vec![-1.0, -3.0], true).unwrap();
    let x = random_orbit_point(&req, 4).x;
    let phase = gcm_core::Quaternion::new(0.6f64.cos(), 0.6f64.sin(), 0.0, 0.0);
    let mut t = QMatrix::identity(2);
    t[(1, 1)] = phase;
    let y = x.conjugate_by(&t).unwrap();
    let family = assemble_family(2);
    let (a, b) = (family.evaluate(&x).unwrap().values, family.evaluate(&y).unwrap().values);
    for (u, v) in a.iter().zip(&b) {
        assert!((u - v).abs() < 1e-10, "{a:?} vs {b:?}");
    }
}

#[test]
fn orbit_points_have_the_requested_spectrum() {
    let req = SpectrumRequest::new(vec![-0.5, -1.5, -2.0, -6.0], true).unwrap();
    let p = random_orbit_point(&req, 9);
    let back = diagonalize(&p.x).unwrap();
    for (l, r) in back.lam.iter().zip(req.lam()) {
        assert!((l - r).abs() < 1e-10);
    }
    assert!(p.x.skew_residual() < 1e-12);
}

#[test]
fn unitary_samples_preserve_the_hermitian_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let u = random_unitary(3, &mut rng);
    let g = &u.conj_transpose() * &u;
    assert!(g.distance(&QMatrix::identity(3)) < 1e-12);
}

#[test]
fn pullback_holds_at_orbit_points() {
    let req = SpectrumRequest::new(vec![-0.3, -0.7], true).unwrap();
    let x = random_orbit_point(&req, 1).x;
    let report = verify_fmn_pullback(&x, 6, 1e-10).unwrap();
    assert!(report.pass, "{report:?}");
}

#[test]
fn sampled_stabilizer_elements_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 1..=2 {
        let a = sample_h_element(n, 5, 0.5, &mut rng).unwrap();
        assert!(is_in_h(&a, 1e-9).unwrap());
    }
}

#[test]
fn listed_patterns_match_the_count() {
    let spec = PatternSpec::new(PatternKind::Gl, vec![3, 1, 0]).unwrap();
    let list = spec.list(1000).unwrap();
    assert_eq!(list.len() as u128, spec.count());
    assert_eq!(spec.count(), spec.weyl_dimension());
}
