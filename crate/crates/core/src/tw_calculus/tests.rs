use super::fields::*;
use super::manifolds::*;
use super::*;
use std::f64::consts::PI;
use std::sync::Arc;

fn poly(terms: &[(f64, f64, [u32; 4])]) -> AmbientPoly {
    AmbientPoly { terms: terms.iter().map(|(a, b, e)| (C64::new(*a, *b), e.to_vec())).collect() }
}

#[test]
fn heisenberg_is_flat() {
    let d = solve_connection(&HeisenbergQuotient, 3).unwrap();
    for n in &d.nodes {
        assert!(n.r.abs() < 1e-14 && n.tau.norm() < 1e-14);
        assert!(n.contact_defect < 1e-14);
    }
    assert!((d.total_measure() - 0.5).abs() < 1e-14);
}

#[test]
fn round_sphere_constants() {
    let m = HopfSphere::round();
    let d = solve_connection(&m, 6).unwrap();
    assert!(d.r_spread() < 1e-10, "spread {}", d.r_spread());
    let r = d.nodes[0].r;
    assert!(r > 0.0);
    assert!((r - m.expected_r()).abs() < 1e-10);
    assert!((r - 2.0 * 2f64.sqrt()).abs() < 1e-10);
    for n in &d.nodes {
        assert!(n.tau.norm() < 1e-10);
        assert!(n.r_imag.abs() < 1e-10);
        assert!(n.contact_defect < 1e-12);
        // anti-hermitian connection: eta-component purely imaginary
        assert!(n.omega[2].re.abs() < 1e-10);
        assert!((n.omega[0] + n.omega[1].conj()).norm() < 1e-14);
    }
    assert!((d.total_measure() - 2.0 * PI * PI).abs() < 1e-10);
}

#[test]
fn berger_constants_and_torsion() {
    for k in [0.6, 1.5, 2.0] {
        let m = HopfSphere::berger(k);
        let d = solve_connection(&m, 4).unwrap();
        assert!(d.r_spread() < 1e-10);
        assert!(d.tau_abs_spread() < 1e-10);
        assert!((d.nodes[0].r - m.expected_r()).abs() < 1e-10);
        assert!((d.nodes[0].tau.norm() - m.expected_tau_abs()).abs() < 1e-10);
        assert!(d.nodes.iter().all(|n| n.contact_defect < 1e-12 && n.lap_r.abs() < 1e-9 && n.i_tau3.abs() < 1e-9));
    }
}

#[test]
fn exterior_derivative_matches_finite_differences() {
    let m = HopfSphere::berger(1.5);
    let sp = JetSpace::new(3, 2);
    let p = [0.7, 1.1, 2.3];
    let jets = m.coframe(&sp, 2, p);
    let dth = d1(&jets.theta);
    let h = 1e-5;
    let theta_at = |q: [f64; 3]| m.coframe(&sp, 0, q).theta.map(|j| j.value());
    let partial = |v: usize, comp: usize| {
        let mut a = p;
        let mut b = p;
        a[v] += h;
        b[v] -= h;
        (theta_at(a)[comp] - theta_at(b)[comp]) / (2.0 * h)
    };
    let fd = [partial(0, 1) - partial(1, 0), partial(0, 2) - partial(2, 0), partial(1, 2) - partial(2, 1)];
    for k in 0..3 {
        assert!((fd[k] - dth[k].value()).norm() < 1e-8);
    }
}

#[test]
fn covariant_derivative_identities() {
    let m = HopfSphere::berger(1.3);
    let p = [0.5, 0.4, 1.9];
    let c = covariant_derivatives(&m, &Constant(3.0), p, 2).unwrap();
    assert!(c.u_1.norm() + c.u_1b.norm() + c.u_0.norm() < 1e-13);
    assert!(c.u_11b.unwrap().norm() + c.u_1b1.unwrap().norm() < 1e-13);

    let u = poly(&[(0.3, 0.7, [1, 0, 1, 0]), (-0.2, 0.1, [0, 2, 0, 1]), (1.0, 0.0, [0, 0, 0, 3])]);
    let ubar = AmbientPoly { terms: u.terms.iter().map(|(c, e)| (c.conj(), e.clone())).collect() };
    let a = covariant_derivatives(&m, &u, p, 2).unwrap();
    let b = covariant_derivatives(&m, &ubar, p, 2).unwrap();
    assert!((a.u_1.conj() - b.u_1b).norm() < 1e-13);
    assert!((a.u_11b.unwrap().conj() - b.u_1b1.unwrap()).norm() < 1e-12);
    // commutation: u_{,1 1bar} - u_{,1bar 1} = i u_{,0}
    let defect = a.u_11b.unwrap() - a.u_1b1.unwrap() - C64::new(0.0, 1.0) * a.u_0;
    assert!(defect.norm() < 1e-12, "{defect}");
}

#[test]
fn commutation_matches_finite_difference_frame() {
    // same identity on a structure with nonconstant connection
    let base: Arc<dyn ContactManifold> = Arc::new(HopfSphere::round());
    let m = Conformal { base, u: Arc::new(random_sphere_factor(3, 2, 0.4)) };
    let u = random_sphere_form(8, 2);
    for p in m.sample_points(5, 1) {
        let a = covariant_derivatives(&m, &u, p, 2).unwrap();
        let defect = a.u_11b.unwrap() - a.u_1b1.unwrap() - C64::new(0.0, 1.0) * a.u_0;
        assert!(defect.norm() < 1e-10 * (1.0 + a.u_0.norm()));
    }
}

#[test]
fn sublaplacian_integrates_to_zero_and_is_linear() {
    let m = HopfSphere::round();
    let u = random_sphere_factor(11, 3, 0.5);
    let v = random_sphere_factor(12, 2, 0.5);
    let q = m.quadrature(8);
    let sp = JetSpace::new(3, 4);
    let lap: Vec<f64> = q
        .nodes
        .iter()
        .map(|&p| {
            let j = jets_at(&m, &sp, 2, p).unwrap();
            j.laplacian(&u.eval(&m.ambient(&sp, 2, p))).value().re
        })
        .collect();
    let (w, _) = sample_field(&m, 8, &u).unwrap();
    assert!(integrate(&w, &lap).unwrap().abs() < 1e-8);

    let pts = m.sample_points(6, 4);
    let su = sublaplacian(&m, &u, &pts).unwrap();
    let sv = sublaplacian(&m, &v, &pts).unwrap();
    let comb = Sum(
        Arc::new(Affine { base: Arc::new(u.clone()), scale: 2.0, shift: 0.0 }),
        Arc::new(Affine { base: Arc::new(v.clone()), scale: -3.0, shift: 0.0 }),
    );
    let sc = sublaplacian(&m, &comb, &pts).unwrap();
    for k in 0..pts.len() {
        assert!((sc[k] - (su[k] * 2.0 - sv[k] * 3.0)).norm() < 1e-12);
    }
    let c = sublaplacian(&m, &Constant(2.0), &pts).unwrap();
    assert!(c.iter().all(|z| z.norm() < 1e-13));
}

#[test]
fn quadrature_examples_on_sphere() {
    let m = HopfSphere::round();
    let one = Constant(1.0);
    let (w, f) = sample_field(&m, 6, &one).unwrap();
    let vals: Vec<f64> = f.iter().map(|z| z.re).collect();
    assert!((integrate(&w, &vals).unwrap() - 2.0 * PI * PI).abs() < 1e-12);

    // odd under the antipodal map
    let odd = poly(&[(1.0, 0.0, [1, 0, 0, 0]), (0.5, 0.0, [1, 1, 1, 0]), (0.2, 0.0, [0, 0, 0, 3])]);
    let (w, f) = sample_field(&m, 6, &odd).unwrap();
    assert!(integrate(&w, &f.iter().map(|z| z.re).collect::<Vec<_>>()).unwrap().abs() < 1e-12);

    // degree-2 harmonic: x1^2 - x3^2 and x1 x2
    let harm = poly(&[(1.0, 0.0, [2, 0, 0, 0]), (-1.0, 0.0, [0, 0, 2, 0]), (3.0, 0.0, [1, 1, 0, 0])]);
    let (w, f) = sample_field(&m, 6, &harm).unwrap();
    assert!(integrate(&w, &f.iter().map(|z| z.re).collect::<Vec<_>>()).unwrap().abs() < 1e-12);

    // x1^2 integrates to vol/4
    let sq = poly(&[(1.0, 0.0, [2, 0, 0, 0])]);
    let (w, f) = sample_field(&m, 6, &sq).unwrap();
    let got = integrate(&w, &f.iter().map(|z| z.re).collect::<Vec<_>>()).unwrap();
    assert!((got - PI * PI / 2.0).abs() < 1e-12);
    assert!(integrate(&w, &[1.0]).is_err());
}

#[test]
fn stokes_routes_vanish() {
    let m = HopfSphere::round();
    let zero = poly(&[(0.0, 0.0, [0, 0, 0, 0])]);
    let s = stokes_integrals(&m, 4, &zero).unwrap();
    assert_eq!(s.covariant.norm() + s.exterior.norm() + s.wedge.norm(), 0.0);
    for seed in 0..3 {
        let a = random_sphere_form(seed, 3);
        let rep = cr_stokes_check(&m, 8, &a, 1e-8).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        let s = stokes_integrals(&m, 8, &a).unwrap();
        assert!(s.pointwise_defect < 1e-10 * s.sup_norm.max(1.0));
    }
    let h = HeisenbergQuotient;
    let a = random_periodic_form(5, 2);
    assert!(cr_stokes_check(&h, 8, &a, 1e-8).unwrap().passed());
    let b = HopfSphere::berger(1.7);
    assert!(cr_stokes_check(&b, 8, &random_sphere_form(9, 2), 1e-8).unwrap().passed());
}

#[test]
fn degenerate_and_mismatch_errors() {
    let m = HopfSphere::round();
    let bad = Quadrature { nodes: vec![[0.3, 0.0, 0.0]], weights: vec![] };
    assert!(matches!(solve_on(&m, &bad), Err(TwError::NodeWeightMismatch { .. })));
    // s = 0 collapses the Hopf chart
    let sing = Quadrature { nodes: vec![[0.0, 0.0, 0.0]], weights: vec![1.0] };
    assert!(matches!(solve_on(&m, &sing), Err(TwError::Degenerate { .. })));
}
