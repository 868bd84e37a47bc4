use super::*;
use crate::report::Status;

#[test]
fn report_passes_at_full_order() {
    let rep = expansion_report(4).unwrap();
    for c in &rep.checks {
        assert!(c.passed(), "{}: {} vs {}", c.id, c.expected, c.computed);
    }
    assert_eq!(rep.get("phi_j.literal_order2").unwrap().status, Status::Warn);
}

#[test]
fn examples_order_by_order() {
    let fx = FormalExpansion::build(4).unwrap();
    assert_eq!(fx.phi.coeff(2).unwrap(), -sym(Symbol::T));
    assert_eq!(canonical(&fx.sphere_volume.coeff(-2).unwrap()), lin(&[(-1, 2, sym(Symbol::R))]));
    assert_eq!(canonical(&fx.sphere_volume.coeff(0).unwrap()), canonical(&lin(&[(1, 3, q_inv())])));
    assert_eq!(canonical(&fx.normal.radial.coeff(4).unwrap()), canonical(&lin(&[(1, 3, q_inv())])));
    let s1 = fx.shape.exposed.coeff(2).unwrap();
    assert_eq!(s1.get(1), &lin(&[(1, 4, sym(Symbol::R)), (-1, 1, sym(Symbol::T))]));
    assert_eq!(s1.get(2), &lin(&[(1, 4, sym(Symbol::R)), (1, 1, sym(Symbol::T))]));
    let s2 = fx.shape.exposed.coeff(4).unwrap();
    assert_eq!(poly_reduce(s2.get(0)), sym(Symbol::A));
    assert_eq!(poly_reduce(s2.get(1)), &sym(Symbol::B) + &sym(Symbol::NablaXiTau));
    assert!(fx.shape.tagged.iter().all(|(k, _, _, _)| *k == 3));
}

#[test]
fn bulk_density_order2_is_a_divergence() {
    let w = build_kahler_form(4).unwrap();
    let d = bulk_volume_density(&w);
    assert_eq!(d.coeff(-4).unwrap(), SymbolicPoly::one());
    let c = d.coeff(0).unwrap();
    assert!(!c.is_zero());
    assert!(poly_reduce(&c).is_zero());
}

#[test]
fn truncation_bounds() {
    assert_eq!(build_metric(5).unwrap_err(), ExpansionError::Order(5));
    assert!(build_metric(-1).is_err());
    let g = build_metric(2).unwrap();
    assert_eq!(g.trunc(), Some(2));
    assert!(g.coeff(3).is_err());
    let fx = FormalExpansion::build(2).unwrap();
    assert!(fx.sphere_volume.coeff(0).is_err());
    assert!(expansion_report(2).is_err());
}

#[test]
fn transcribed_path_matches_derived() {
    let fx = FormalExpansion::build(4).unwrap();
    let tb = transcribed_boundary_data(4).unwrap();
    let db = fx.boundary_data();
    for k in [-4, -2, 0] {
        assert_eq!(canonical(&tb.sphere_volume.coeff(k).unwrap()), canonical(&db.sphere_volume.coeff(k).unwrap()));
    }
    for k in [0, 2, 4] {
        let (a, b) = (tb.shape.coeff(k).unwrap(), db.shape.coeff(k).unwrap());
        for i in 0..3 {
            assert_eq!(canonical(a.get(i)), canonical(b.get(i)));
        }
    }
}

#[test]
fn latex_rendering_names_every_series() {
    let fx = FormalExpansion::build(4).unwrap();
    let l = fx.latex();
    assert_eq!(l.len(), 8);
    assert!(l.iter().all(|(_, s)| s.contains("e^{")));
}
