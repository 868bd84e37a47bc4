//! Change of contact form `eta -> u eta`: transformation laws for `R` and
//! `tau`, checked against a recomputation on the new coframe, and the
//! anomaly of the renormalized volume.
//!
//! The public parameter is the ratio `u` of the new to the old contact form;
//! the laws use `f = sqrt u`.

mod anomaly;
#[cfg(test)]
mod tests;

pub use anomaly::*;

use crate::jet::{JetSpace, C64};
use crate::parallel::map_nodes;
use crate::report::{Check, Source, VerificationReport};
use crate::tw_calculus::fields::{random_periodic_factor, random_sphere_factor, Field, FieldRef, Product};
use crate::tw_calculus::manifolds::Conformal;
use crate::tw_calculus::{jets_at, ContactManifold, TwError};
use serde::Serialize;
use std::sync::Arc;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Which random factors suit a base manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorFamily {
    /// Polynomials in the ambient coordinates of `S^3`.
    Sphere,
    /// Lattice-periodic trigonometric polynomials in `(x, y)`.
    Periodic,
}

impl FactorFamily {
    /// Positive factor with values in `[1 - amplitude, 1 + amplitude]`.
    pub fn factor(self, seed: u64, amplitude: f64) -> FieldRef {
        match self {
            FactorFamily::Sphere => Arc::new(random_sphere_factor(seed, 2, amplitude)),
            FactorFamily::Periodic => Arc::new(random_periodic_factor(seed, 2, amplitude)),
        }
    }

    /// Random direction with zero constant part and sup norm at most 1.
    pub fn direction(self, seed: u64) -> FieldRef {
        Arc::new(crate::tw_calculus::fields::Affine { base: self.factor(seed, 1.0), scale: 1.0, shift: -1.0 })
    }
}

fn check_positive(m: &dyn ContactManifold, u: &dyn Field, points: &[[f64; 3]]) -> Result<(), TwError> {
    let sp = JetSpace::new(3, 0);
    for &p in points {
        let v = u.eval(&m.ambient(&sp, 0, p)).value().re;
        if !(v > 0.0) {
            return Err(TwError::NonPositiveFactor { point: p, value: v });
        }
    }
    Ok(())
}

/// The structure `(u eta, f theta + 2i f_{,1bar} eta)`. Fails if `u` is not
/// positive at a quadrature node of resolution `res` or a sample point.
pub fn hat_coframe(m: Arc<dyn ContactManifold>, u: FieldRef, res: usize) -> Result<Conformal, TwError> {
    check_positive(m.as_ref(), u.as_ref(), &m.quadrature(res).nodes)?;
    check_positive(m.as_ref(), u.as_ref(), &m.sample_points(64, 0))?;
    Ok(Conformal { base: m, u })
}

/// Both laws and the recomputation at one point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HatPoint {
    pub point: [f64; 3],
    pub u: f64,
    /// `f^{-3}(-4 Delta f + R f)`
    pub r_law: f64,
    /// `f^{-3}(2 Delta f + R f)`, as printed
    pub r_printed: f64,
    /// `f^{-2}(tau - 2i f^{-1} f_{,1bar1bar} + 6i f^{-2} f_{,1bar}^2)`
    pub tau_law: C64,
    /// `f^{-2}(tau - 2i f^{-1} f_{,1bar1bar} - 6i f^{-2} f_{,1} f_{,1bar})`, as printed
    pub tau_printed: C64,
    /// Curvature and torsion solved from the new coframe.
    pub r_direct: f64,
    pub tau_direct: C64,
    /// `|d(u eta) - i thetahat ^ thetahatbar|`
    pub contact_defect: f64,
}

pub fn hat_point(m: &dyn ContactManifold, hat: &Conformal, p: [f64; 3]) -> Result<HatPoint, TwError> {
    let sp = JetSpace::new(3, 2 + hat.depth());
    let j = jets_at(m, &sp, 2, p)?;
    let u = hat.u.eval(&m.ambient(&sp, 2, p));
    let uv = u.value().re;
    if !(uv > 0.0) {
        return Err(TwError::NonPositiveFactor { point: p, value: uv });
    }
    let f = u.sqrt();
    let fv = f.value().re;
    let lap = j.laplacian(&f).value().re;
    let (f1, f1b, f1b1b) = (j.z1(&f).value(), j.z1b(&f).value(), j.u_1b1b(&f).value());
    let (r, tau) = (j.r.value().re, j.tau.value());
    let h = jets_at(hat, &sp, 2, p)?;
    let base_tau = tau - 2.0 * I * f1b1b / fv;
    Ok(HatPoint {
        point: p,
        u: uv,
        r_law: (-4.0 * lap + r * fv) / fv.powi(3),
        r_printed: (2.0 * lap + r * fv) / fv.powi(3),
        tau_law: (base_tau + 6.0 * I * f1b * f1b / (fv * fv)) / (fv * fv),
        tau_printed: (base_tau - 6.0 * I * f1 * f1b / (fv * fv)) / (fv * fv),
        r_direct: h.r.value().re,
        tau_direct: h.tau.value(),
        contact_defect: h.contact_defect(),
    })
}

/// `R` after the change, from the law.
pub fn hat_r(m: &dyn ContactManifold, u: FieldRef, p: [f64; 3]) -> Result<f64, TwError> {
    Ok(law_only(m, u, p)?.0)
}

/// `tau^1_{1bar}` after the change, from the law.
pub fn hat_tau(m: &dyn ContactManifold, u: FieldRef, p: [f64; 3]) -> Result<C64, TwError> {
    Ok(law_only(m, u, p)?.1)
}

fn law_only(m: &dyn ContactManifold, u: FieldRef, p: [f64; 3]) -> Result<(f64, C64), TwError> {
    let sp = JetSpace::new(3, 2 + m.depth());
    let j = jets_at(m, &sp, 2, p)?;
    let uj = u.eval(&m.ambient(&sp, 2, p));
    let uv = uj.value().re;
    if !(uv > 0.0) {
        return Err(TwError::NonPositiveFactor { point: p, value: uv });
    }
    let f = uj.sqrt();
    let fv = f.value().re;
    let lap = j.laplacian(&f).value().re;
    let f1b = j.z1b(&f).value();
    let r = (-4.0 * lap + j.r.value().re * fv) / fv.powi(3);
    let tau = (j.tau.value() - 2.0 * I * j.u_1b1b(&f).value() / fv + 6.0 * I * f1b * f1b / (fv * fv)) / (fv * fv);
    Ok((r, tau))
}

pub fn hat_points(m: Arc<dyn ContactManifold>, u: FieldRef, res: usize) -> Result<Vec<HatPoint>, TwError> {
    let hat = hat_coframe(m.clone(), u, res)?;
    let nodes = m.quadrature(res).nodes;
    map_nodes(nodes.len(), |k| hat_point(m.as_ref(), &hat, nodes[k])).into_iter().collect()
}

/// Max errors of one factor, relative to the sup norm of the recomputed
/// quantity over the nodes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawErrors {
    pub manifold: String,
    pub seed: u64,
    pub r_law: f64,
    pub tau_law: f64,
    pub r_printed: f64,
    pub tau_printed: f64,
    pub contact_defect: f64,
    pub r_scale: f64,
    pub tau_scale: f64,
}

fn sup(v: impl Iterator<Item = f64>) -> f64 {
    v.fold(0.0, f64::max)
}

pub fn law_errors(manifold: &str, seed: u64, pts: &[HatPoint]) -> LawErrors {
    let r_scale = sup(pts.iter().map(|p| p.r_direct.abs())).max(f64::MIN_POSITIVE);
    let tau_scale = sup(pts.iter().map(|p| p.tau_direct.norm())).max(f64::MIN_POSITIVE);
    LawErrors {
        manifold: manifold.into(),
        seed,
        r_law: sup(pts.iter().map(|p| (p.r_law - p.r_direct).abs())) / r_scale,
        tau_law: sup(pts.iter().map(|p| (p.tau_law - p.tau_direct).norm())) / tau_scale,
        r_printed: sup(pts.iter().map(|p| (p.r_printed - p.r_direct).abs())) / r_scale,
        tau_printed: sup(pts.iter().map(|p| (p.tau_printed - p.tau_direct).norm())) / tau_scale,
        contact_defect: sup(pts.iter().map(|p| p.contact_defect)),
        r_scale,
        tau_scale,
    }
}

pub fn node_errors_csv(pts: &[HatPoint]) -> String {
    let mut s = String::from("x0,x1,x2,u,R_direct,R_law,R_printed,re_tau_direct,im_tau_direct,tau_law_err,tau_printed_err,contact_defect\n");
    for p in pts {
        s.push_str(&format!(
            "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
            p.point[0],
            p.point[1],
            p.point[2],
            p.u,
            p.r_direct,
            p.r_law,
            p.r_printed,
            p.tau_direct.re,
            p.tau_direct.im,
            (p.tau_law - p.tau_direct).norm(),
            (p.tau_printed - p.tau_direct).norm(),
            p.contact_defect
        ));
    }
    s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawTolerances {
    pub law: f64,
    pub composition: f64,
    pub contact: f64,
}

impl Default for LawTolerances {
    fn default() -> Self {
        LawTolerances { law: 1e-6, composition: 1e-6, contact: 1e-10 }
    }
}

/// Max relative disagreement between applying `u` then `w` and applying
/// `u w` once, both for the recomputed invariants and for the laws.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositionErrors {
    pub direct: f64,
    pub law: f64,
}

pub fn composition_errors(
    m: Arc<dyn ContactManifold>,
    u: FieldRef,
    w: FieldRef,
    res: usize,
) -> Result<CompositionErrors, TwError> {
    let first: Arc<dyn ContactManifold> = Arc::new(hat_coframe(m.clone(), u.clone(), res)?);
    let twice = hat_coframe(first.clone(), w.clone(), res)?;
    let uw: FieldRef = Arc::new(Product(u, w.clone()));
    let once = hat_coframe(m.clone(), uw.clone(), res)?;
    let nodes = m.quadrature(res).nodes;
    let per = map_nodes(nodes.len(), |k| -> Result<[f64; 4], TwError> {
        let a = hat_point(first.as_ref(), &twice, nodes[k])?;
        let b = hat_point(m.as_ref(), &once, nodes[k])?;
        Ok([
            (a.r_direct - b.r_direct).abs() + (a.tau_direct - b.tau_direct).norm(),
            (a.r_law - b.r_law).abs() + (a.tau_law - b.tau_law).norm(),
            b.r_direct.abs(),
            b.tau_direct.norm(),
        ])
    })
    .into_iter()
    .collect::<Result<Vec<_>, TwError>>()?;
    let scale = sup(per.iter().map(|e| e[2].max(e[3]))).max(f64::MIN_POSITIVE);
    Ok(CompositionErrors { direct: sup(per.iter().map(|e| e[0])) / scale, law: sup(per.iter().map(|e| e[1])) / scale })
}

/// Summary of the law comparison over seeded factors on one base.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawSummary {
    pub manifold: String,
    pub factors: Vec<LawErrors>,
    pub composition: CompositionErrors,
}

impl LawSummary {
    pub fn max(&self, f: impl Fn(&LawErrors) -> f64) -> f64 {
        sup(self.factors.iter().map(f))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("manifold,seed,R_law,tau_law,R_printed,tau_printed,contact_defect\n");
        for e in &self.factors {
            s.push_str(&format!(
                "{},{},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}\n",
                e.manifold, e.seed, e.r_law, e.tau_law, e.r_printed, e.tau_printed, e.contact_defect
            ));
        }
        s
    }
}

/// Compares both laws with the recomputation for `count` seeded factors
/// and checks composition closure.
pub fn law_summary(
    m: Arc<dyn ContactManifold>,
    family: FactorFamily,
    count: usize,
    seed: u64,
    amplitude: f64,
    res: usize,
) -> Result<LawSummary, TwError> {
    let name = m.name();
    let factors = (0..count as u64)
        .map(|k| {
            let s = seed.wrapping_add(k);
            let pts = hat_points(m.clone(), family.factor(s, amplitude), res)?;
            Ok(law_errors(&name, s, &pts))
        })
        .collect::<Result<Vec<_>, TwError>>()?;
    let composition = composition_errors(
        m,
        family.factor(seed.wrapping_add(1000), amplitude),
        family.factor(seed.wrapping_add(1001), amplitude),
        res,
    )?;
    Ok(LawSummary { manifold: name, factors, composition })
}

pub fn law_report(summaries: &[LawSummary], tol: &LawTolerances) -> VerificationReport {
    let mut rep = VerificationReport::new("conformal transformation laws");
    for s in summaries {
        let id = |k: &str| format!("conformal.{}.{k}", s.manifold);
        let n = s.factors.len();
        rep.push(Check::numeric(
            &id("contact"),
            &format!("d(u eta) = i thetahat ^ thetahatbar at all nodes, {n} factors"),
            Source::Derived,
            0.0,
            s.max(|e| e.contact_defect),
            tol.contact,
        ));
        rep.push(Check::numeric(
            &id("r_law"),
            "Rhat = f^-3(-4 Delta f + R f) vs recomputation, max relative",
            Source::Derived,
            0.0,
            s.max(|e| e.r_law),
            tol.law,
        ));
        rep.push(
            Check::numeric(&id("r_printed"), "Rhat = f^-3(2 Delta f + R f) as printed", Source::Printed, 0.0, s.max(|e| e.r_printed), tol.law)
                .expected_mismatch()
                .with_note("with Delta u = u_{,11bar} + u_{,1bar1} the coefficient of Delta f is -4"),
        );
        rep.push(Check::numeric(
            &id("tau_law"),
            "tauhat = f^-2(tau - 2i f^-1 f_{,1bar1bar} + 6i f^-2 f_{,1bar}^2) vs recomputation",
            Source::Derived,
            0.0,
            s.max(|e| e.tau_law),
            tol.law,
        ));
        rep.push(
            Check::numeric(
                &id("tau_printed"),
                "tauhat with -6i f^-2 f_{,1} f_{,1bar} as printed",
                Source::Printed,
                0.0,
                s.max(|e| e.tau_printed),
                tol.law,
            )
            .expected_mismatch()
            .with_note("the quadratic term is f_{,1bar}^2 with coefficient +6i"),
        );
        rep.push(Check::numeric(
            &id("composition_direct"),
            "u then w equals u w, recomputed invariants",
            Source::Derived,
            0.0,
            s.composition.direct,
            tol.composition,
        ));
        rep.push(Check::numeric(
            &id("composition_law"),
            "u then w equals u w, through the laws",
            Source::Derived,
            0.0,
            s.composition.law,
            tol.composition,
        ));
    }
    rep
}
