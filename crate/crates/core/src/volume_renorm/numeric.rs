use super::*;
use crate::tw_calculus::{solve_connection, ContactManifold, NodeData, TwData, TwError};

/// Symbol values at a quadrature node. `t` is `|tau|`; the remaining
/// symbols do not occur in the volume densities and evaluate to zero.
pub fn node_values(n: &NodeData) -> impl Fn(Symbol) -> f64 + '_ {
    move |s| match s {
        Symbol::R => n.r,
        Symbol::TauSq => n.tau_sq(),
        Symbol::T => n.tau.norm(),
        Symbol::LapR => n.lap_r,
        Symbol::ITau3 => n.i_tau3,
        _ => 0.0,
    }
}

/// `int_X p eta ^ d eta` with the symbols evaluated at the nodes.
pub fn integrate_poly(data: &TwData, p: &SymbolicPoly) -> f64 {
    data.integrate(|n| p.eval(&node_values(n)))
}

/// `int_X (R^2/16 - 5/2 |tau|^2) eta ^ d eta`.
pub fn t_integral(data: &TwData) -> f64 {
    data.integrate(|n| n.r * n.r / 16.0 - 2.5 * n.tau_sq())
}

/// `3/2 V - int_X (R^2/16 - 5/2 |tau|^2)`.
pub fn curly_v(v: f64, data: &TwData) -> f64 {
    1.5 * v - t_integral(data)
}

/// Volume coefficients of a concrete boundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeExpansion {
    pub manifold: String,
    pub measure: f64,
    /// Coefficient of `e^{2r}`.
    pub leading: f64,
    /// Coefficient of `e^{r}` from the symbolic density.
    pub v1: f64,
    /// Same from `-1/2 int R`.
    pub v1_direct: f64,
    /// Coefficient of `r`, the raw (unreduced) density integrated.
    pub linear: f64,
    /// `int (|Delta R|/3 + 2/3 |i_tau3|)`, the size of what cancels in `linear`.
    pub linear_scale: f64,
    pub t_integral: f64,
    /// Renormalized volume; not determined by formal data except for the model.
    pub renormalized: Option<f64>,
    pub curly_v: Option<f64>,
}

impl VolumeExpansion {
    pub fn csv_header() -> &'static str {
        "manifold,leading,v1,linear,V,T_integral,curly_V\n"
    }

    pub fn csv_row(&self) -> String {
        let opt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.15e}"));
        format!(
            "{},{:.15e},{:.15e},{:.15e},{},{:.15e},{}\n",
            self.manifold,
            self.leading,
            self.v1,
            self.linear,
            opt(self.renormalized),
            self.t_integral,
            opt(self.curly_v)
        )
    }
}

pub fn volume_from_data(fv: &FormalVolume, data: &TwData) -> VolumeExpansion {
    VolumeExpansion {
        manifold: data.manifold.clone(),
        measure: data.total_measure(),
        leading: integrate_poly(data, &fv.leading()),
        v1: integrate_poly(data, &fv.v1()),
        v1_direct: -0.5 * data.integrate(|n| n.r),
        linear: integrate_poly(data, fv.linear()),
        linear_scale: data.integrate(|n| n.lap_r.abs() / 3.0 + 2.0 * n.i_tau3.abs() / 3.0),
        t_integral: t_integral(data),
        renormalized: None,
        curly_v: None,
    }
}

pub fn volume_series(fv: &FormalVolume, m: &dyn ContactManifold, res: usize) -> Result<VolumeExpansion, TwError> {
    Ok(volume_from_data(fv, &solve_connection(m, res)?))
}

/// Numeric checks of one expansion: linear term, `v1` agreement.
pub fn volume_checks(v: &VolumeExpansion, tol: f64) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("volume expansion on {}", v.manifold));
    let id = |s: &str| format!("volume.{}.{s}", v.manifold);
    rep.push(
        Check::numeric(&id("linear"), "coefficient of r in vol B(r) vanishes", Source::Printed, 0.0, v.linear, tol)
            .with_note(format!("cancelling parts of size {:.3e}", v.linear_scale)),
    );
    rep.push(Check::numeric(
        &id("v1_density"),
        "e^r coefficient: symbolic density vs -1/2 int R",
        Source::Derived,
        v.v1_direct,
        v.v1,
        tol,
    ));
    rep.push(Check::numeric(&id("leading"), "e^{2r} coefficient = 1/2 int eta ^ d eta", Source::Derived, 0.5 * v.measure, v.leading, tol));
    rep
}
