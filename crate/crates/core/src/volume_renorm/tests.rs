use super::*;
use crate::tw_calculus::fields::random_sphere_factor;
use crate::tw_calculus::manifolds::{Conformal, HeisenbergQuotient, HopfSphere};
use crate::tw_calculus::{solve_connection, ContactManifold};
use std::sync::Arc;
use Symbol::*;

#[test]
fn formal_volume_coefficients() {
    let v = formal_volume(4).unwrap();
    assert_eq!(v.leading(), SymbolicPoly::rat(1, 2));
    assert_eq!(v.v1(), sym(R).scale(&q(-1, 2)));
    assert!(!v.linear().is_zero());
    assert!(poly_reduce(v.linear()).is_zero());
    assert!(v.integral.divergent.coeff(0).is_err());
}

#[test]
fn radial_integration_rule() {
    let d = ScalarSeries::from_coeffs(-4, Some(0), [(-4, SymbolicPoly::one()), (-1, sym(R)), (0, sym(T))]).unwrap();
    let i = integrate_radially(&d).unwrap();
    assert_eq!(i.divergent.coeff(-4).unwrap(), SymbolicPoly::rat(1, 2));
    assert_eq!(i.divergent.coeff(-1).unwrap(), sym(R).scale(&q(2, 1)));
    assert_eq!(i.linear, sym(T));
    assert!(integrate_radially(&d.truncate(-1)).is_err());
}

#[test]
fn linear_density_is_a_pure_divergence() {
    let v = formal_volume(4).unwrap();
    for s in Symbol::ALL {
        if !matches!(s, LapR | ITau3) {
            assert!(!v.linear().contains(s), "{s:?} in {}", v.linear());
        }
    }
}

#[test]
fn numeric_volume_on_builtin_manifolds() {
    let fv = formal_volume(4).unwrap();
    let round = HopfSphere::round();
    let v = volume_series(&fv, &round, 12).unwrap();
    assert!((v.leading - std::f64::consts::PI.powi(2)).abs() < 1e-10);
    assert!((v.v1 - round.expected_r() * -0.5 * round.total_measure()).abs() < 1e-9);
    assert!(volume_checks(&v, 1e-8).passed());
    let h = volume_series(&fv, &HeisenbergQuotient, 6).unwrap();
    assert!(h.v1.abs() < 1e-12 && h.t_integral.abs() < 1e-12);
    assert!(h.csv_row().contains("n/a"));
    let base: Arc<dyn ContactManifold> = Arc::new(HopfSphere::round());
    let conf = Conformal { base, u: Arc::new(random_sphere_factor(11, 2, 0.3)) };
    let c = volume_series(&fv, &conf, 14).unwrap();
    assert!(c.linear_scale > 1e-3, "{}", c.linear_scale);
    assert!(volume_checks(&c, 1e-8).passed(), "{}", volume_checks(&c, 1e-8).to_text());
}

#[test]
fn ch2_closed_form() {
    let m = Ch2Model::default();
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((m.leading().unwrap() - pi2).abs() < 1e-12);
    assert!((m.v1().unwrap() + 2.0 * std::f64::consts::SQRT_2 * pi2).abs() < 1e-12);
    assert!((ch2_renormalized_volume() - 10.0 * pi2 / 3.0).abs() < 1e-12);
    assert!(m.volume_series().unwrap().coeff(1).is_err());
    let rho = 1.3;
    assert!((Ch2Model::ball_volume_quadrature(rho, 48) / Ch2Model::ball_volume(rho) - 1.0).abs() < 1e-12);
}

#[test]
fn ch2_curvature_at_origin_and_away() {
    for p in [[0.0; 4], [0.3, -0.2, 0.5, 0.1]] {
        let c = ch2_curvature(p);
        assert!((c.scal + 6.0).abs() < 1e-10, "{c:?}");
        assert!((c.holomorphic + 1.0).abs() < 1e-10, "{c:?}");
        assert!(c.bulk_integrand().abs() < 1e-9 * 36.0, "{c:?}");
    }
    assert!((ch2_curvature([0.0; 4]).totally_real + 0.25).abs() < 1e-12);
}

#[test]
fn euler_characteristic_of_the_model() {
    let fv = formal_volume(4).unwrap();
    let data = solve_connection(&HopfSphere::round(), 8).unwrap();
    let (r, rep) = euler_check_ch2(&data, &fv, 20, 5, &Ch2Tolerances::default()).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    assert!((r.chi - 1.0).abs() < 1e-9);
}
