use super::*;
use crate::tw_calculus::fields::Constant;
use crate::tw_calculus::manifolds::{HeisenbergQuotient, HopfSphere};
use std::f64::consts::PI;

fn sphere() -> Arc<dyn ContactManifold> {
    Arc::new(HopfSphere::round())
}

fn heis() -> Arc<dyn ContactManifold> {
    Arc::new(HeisenbergQuotient)
}

#[test]
fn trivial_factors() {
    let m = Arc::new(HopfSphere::berger(1.3));
    let p = m.sample_points(1, 4)[0];
    let one = hat_coframe(m.clone(), Arc::new(Constant(1.0)), 3).unwrap();
    let h = hat_point(m.as_ref(), &one, p).unwrap();
    assert_eq!(h.r_direct, h.r_law);
    assert!((h.r_direct - m.expected_r()).abs() < 1e-10);
    assert!((h.tau_direct - h.tau_law).norm() < 1e-12);
    let c = 1.7;
    let r = hat_r(m.as_ref(), Arc::new(Constant(c * c)), p).unwrap();
    assert!((r - m.expected_r() / (c * c)).abs() < 1e-12);
    let t = hat_tau(m.as_ref(), Arc::new(Constant(c * c)), p).unwrap();
    assert!((t.norm() - m.expected_tau_abs() / (c * c)).abs() < 1e-12);
    let sq = hat_coframe(m.clone(), Arc::new(Constant(c * c)), 3).unwrap();
    let sp = JetSpace::new(3, 1);
    let (a, b) = (sq.coframe(&sp, 0, p), m.coframe(&sp, 0, p));
    for k in 0..3 {
        assert!((a.theta[k].value() - b.theta[k].value() * c).norm() < 1e-14);
    }
}

#[test]
fn nonpositive_factor_is_rejected() {
    let bad: FieldRef = Arc::new(Constant(-0.5));
    assert!(matches!(hat_coframe(sphere(), bad.clone(), 3), Err(TwError::NonPositiveFactor { .. })));
    let p = sphere().sample_points(1, 0)[0];
    assert!(hat_r(sphere().as_ref(), bad, p).is_err());
}

#[test]
fn laws_match_recomputation() {
    let tol = LawTolerances::default();
    let s = law_summary(sphere(), FactorFamily::Sphere, 3, 7, 0.5, 3).unwrap();
    let h = law_summary(heis(), FactorFamily::Periodic, 3, 7, 0.5, 3).unwrap();
    let rep = law_report(&[s.clone(), h.clone()], &tol);
    assert!(rep.passed(), "{}", rep.to_text());
    assert!(s.max(|e| e.r_printed) > 1e-3 && h.max(|e| e.tau_printed) > 1e-3);
    assert_eq!(s.to_csv().lines().count(), 4);
    let pts = hat_points(heis(), FactorFamily::Periodic.factor(1, 0.5), 2).unwrap();
    assert_eq!(node_errors_csv(&pts).lines().count(), pts.len() + 1);
}

#[test]
fn t_functional_examples() {
    assert!(t_functional(&HeisenbergQuotient, 3).unwrap().abs() < 1e-14);
    assert!((t_functional(&HopfSphere::round(), 6).unwrap() - PI * PI).abs() < 1e-10);
    for k in [0.8, 0.9, 1.0, 1.1, 1.25] {
        let m = HopfSphere::berger(k);
        let want = m.total_measure() * (m.expected_r().powi(2) / 16.0 - 2.5 * m.expected_tau_abs().powi(2));
        let t = t_functional(&m, 6).unwrap();
        assert!((t - want).abs() < 1e-9, "{k}: {t} vs {want}");
        if k == 1.0 {
            assert!((t - PI * PI).abs() < 1e-10);
        }
    }
}

#[test]
fn anomaly_identities() {
    assert_eq!(anomaly(sphere(), Arc::new(Constant(1.0)), 3).unwrap(), 0.0);
    assert!(anomaly(heis(), Arc::new(Constant(4.0)), 3).unwrap().abs() < 1e-14);
    let s = anomaly_summary(heis(), FactorFamily::Periodic, 3, 0.4, 0.2, 4).unwrap();
    let rep = anomaly_report(&s, &AnomalyTolerances::default());
    assert!(rep.get("anomaly.heisenberg.cocycle").unwrap().passed(), "{}", rep.to_text());
    assert!(rep.get("anomaly.heisenberg.identity").unwrap().passed());
    assert!(s.to_csv().lines().count() == 4);
}

#[test]
fn first_variation_on_a_deformed_sphere() {
    let base: Arc<dyn ContactManifold> = Arc::new(hat_coframe(sphere(), FactorFamily::Sphere.factor(21, 0.3), 4).unwrap());
    let s = anomaly_summary(base, FactorFamily::Sphere, 5, 0.3, 0.05, 5).unwrap();
    let rep = anomaly_report(&s, &AnomalyTolerances::default());
    assert!(rep.passed(), "{}", rep.to_text());
    assert!(s.variations[0].richardson.abs() > 1e-4, "{:?}", s.variations[0]);
}

#[test]
fn variation_step_errors() {
    let phi = FactorFamily::Sphere.direction(1);
    assert!(matches!(anomaly_first_variation(sphere(), phi.clone(), 1e-7, 3), Err(VariationError::StepUnderflow { .. })));
    assert!(matches!(anomaly_first_variation(sphere(), Arc::new(Constant(1.0)), 2.0, 3), Err(VariationError::StepTooLarge { .. })));
}
