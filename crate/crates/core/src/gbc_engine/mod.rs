//! Boundary terms of the Gauss-Bonnet-Chern formula on `B(r)`: the
//! contractions `T(I^I^I)` and `T(I^R)`, the model curvature, the
//! contribution tables and the assembled `chi(B(r))` series.
//!
//! Scalars are per unit `eta ^ d eta` measure and in units of `1/pi^2`.

mod contract;
mod tables;
#[cfg(test)]
mod tests;

pub use contract::*;
pub use tables::*;

use crate::exact_algebra::*;
use crate::formal_expansion::{
    expand_ab, t_density, transcribed_boundary_data, BoundaryData, ExpansionError, FormalExpansion, Path, ScalarSeries,
};
use crate::report::{Check, Source, VerificationReport};
use crate::volume_renorm::{formal_volume, RadialIntegral};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GbcError {
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Curvature operator along `S(r)`: `R0 + W2^- e^{-2r}`.
pub fn curvature_series(trunc: i32) -> AsymptoticSeries<CurvatureOp> {
    AsymptoticSeries::from_coeffs(0, Some(4), [(0, model_curvature()), (4, w2_minus())])
        .expect("orders in range")
        .truncate(trunc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GbcAssembly {
    pub path: Path,
    /// `1/12 varpi (T(I^I^I) + 3 T(I^R))`.
    pub boundary: ScalarSeries,
    /// `3/8 vol(B(r))`, growing part (the `Scal^2/96` term with `Scal = -6`).
    pub bulk: ScalarSeries,
    /// Sum of both, known to `o(e^{r/2})`.
    pub chi_divergent: ScalarSeries,
    /// Coefficient of `r` in the bulk term.
    pub linear: SymbolicPoly,
    /// Constant term of the boundary integral, in the `A`, `B` shorthand.
    pub constant: SymbolicPoly,
    /// Same with `A`, `B` expanded.
    pub constant_expanded: SymbolicPoly,
}

impl GbcAssembly {
    /// Coefficients of `e^{2r}, e^{3r/2}, e^{r}, e^{r/2}` in `chi(B(r))`.
    pub fn divergent_coefficients(&self) -> Result<Vec<(i32, SymbolicPoly)>, SeriesError> {
        (-4..=-1).map(|k| Ok((k, self.chi_divergent.coeff(k)?))).collect()
    }
}

/// Boundary integrand series `1/12 varpi (T(I^I^I) + 3 T(I^R))`.
pub fn boundary_series(data: &BoundaryData) -> ScalarSeries {
    let s = &data.shape;
    let rho = curvature_series(s.trunc().unwrap_or(4));
    let t3 = combine3(s, s, s, contract_tiii);
    let tr = combine2(s, &rho, contract_full);
    let integrand = t3.add(&tr.scale(&qi(3)));
    data.sphere_volume.mul(&integrand).scale(&q(1, 12))
}

pub fn assemble_with(data: &BoundaryData, vol: &RadialIntegral) -> Result<GbcAssembly, GbcError> {
    let boundary = boundary_series(data);
    let bulk = vol.divergent.scale(&q(3, 8));
    let chi_divergent = boundary.add(&bulk);
    let linear = vol.linear.scale(&q(3, 8));
    let constant = boundary.coeff(0)?;
    let constant_expanded = expand_ab(&constant);
    Ok(GbcAssembly { path: data.path, boundary, bulk, chi_divergent, linear, constant, constant_expanded })
}

fn path_data(path: Path, trunc: i32) -> Result<BoundaryData, GbcError> {
    Ok(match path {
        Path::Derived => FormalExpansion::build(trunc)?.boundary_data(),
        Path::Transcribed => transcribed_boundary_data(trunc)?,
    })
}

/// Builds `chi(B(r))` on both paths and checks divergence cancellation and
/// the constant term. Returns the derived-path assembly.
pub fn assemble_gbc_series(trunc: i32) -> Result<(GbcAssembly, VerificationReport), GbcError> {
    let vol = formal_volume(trunc)?.integral;
    let mut rep = VerificationReport::new("boundary Gauss-Bonnet-Chern series");
    let mut derived = None;
    for path in [Path::Derived, Path::Transcribed] {
        let a = assemble_with(&path_data(path, trunc)?, &vol)?;
        let p = path.name();
        for (k, c) in a.divergent_coefficients()? {
            let label = crate::exact_algebra::exp_latex(k).unwrap_or_default();
            rep.push(
                Check::exact(
                    &format!("gbc.{p}.divergent_{}", -k),
                    &format!("coefficient of {label} in chi(B(r)) vanishes"),
                    Source::Derived,
                    &SymbolicPoly::zero(),
                    &c,
                )
                .with_latex(c.to_latex()),
            );
        }
        rep.push(Check::exact(
            &format!("gbc.{p}.linear"),
            "coefficient of r in chi(B(r)) vanishes",
            Source::Derived,
            &SymbolicPoly::zero(),
            &a.linear,
        ));
        let want = t_density().scale(&q(-1, 4));
        rep.push(
            Check::exact(
                &format!("gbc.{p}.constant"),
                "boundary constant term = -(1/4 pi^2)(R^2/16 - 5/2 |tau|^2)",
                Source::Printed,
                &want,
                &a.constant_expanded,
            )
            .with_latex(a.boundary.to_latex()),
        );
        let red = canonical(&a.constant_expanded);
        let clean = !red.contains(Symbol::NablaXiTau) && !red.contains(Symbol::Rem32) && reduce_with_flags(&a.constant_expanded).flagged.is_empty();
        rep.push(Check::flag(
            &format!("gbc.{p}.no_tagged_remainder"),
            "nabla_xi tau and order-3/2 markers drop out of the constant term",
            Source::Derived,
            clean,
            &red.to_string(),
        ));
        if path == Path::Derived {
            derived = Some(a);
        }
    }
    Ok((derived.expect("derived path assembled"), rep))
}
