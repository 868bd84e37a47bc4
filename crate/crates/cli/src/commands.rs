//! The verification runs behind each subcommand.

use crate::config::RunConfig;
use ache_core::conformal_change::{
    anomaly_report, anomaly_summary, hat_coframe, hat_points, law_report, law_summary, node_errors_csv, AnomalyTolerances,
    FactorFamily, LawTolerances, VariationError,
};
use ache_core::formal_expansion::{expansion_report, ExpansionError};
use ache_core::gbc_engine::{assemble_gbc_series, contraction_report, table_report, GbcError, TableRow};
use ache_core::report::VerificationReport;
use ache_core::tw_calculus::fields::{random_periodic_form, random_sphere_factor, random_sphere_form, Field};
use ache_core::tw_calculus::manifolds::{Conformal, HeisenbergQuotient, HopfSphere};
use ache_core::tw_calculus::{cr_stokes_check, solve_connection, stokes_integrals, ContactManifold, TwError};
use ache_core::volume_renorm::{
    euler_check_ch2, formal_volume, volume_checks, volume_series, Ch2Tolerances, VolumeExpansion,
};
use serde::Serialize;
use serde_json::Value;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Gbc(#[from] GbcError),
    #[error(transparent)]
    Tw(#[from] TwError),
    #[error(transparent)]
    Variation(#[from] VariationError),
    #[error("series: {0}")]
    Series(#[from] ache_core::exact_algebra::SeriesError),
}

/// Everything a run writes.
pub struct RunOutput {
    pub reports: Vec<VerificationReport>,
    pub summary: Value,
    /// extra text appended to `tables.txt`
    pub text: String,
    pub csv: Vec<(String, String)>,
}

impl RunOutput {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed())
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn rows_text(rows: &[TableRow]) -> String {
    let mut t = String::from("row  involved terms                        printed                  engine                   transcribed\n");
    for r in rows {
        t.push_str(&format!(
            "{:<4} {:<37} {:<24} {:<24} {}{}\n",
            r.row,
            r.involved,
            r.printed.to_string(),
            r.engine.to_string(),
            r.transcribed,
            if r.matches_printed() { "" } else { "   <- differs from printed" }
        ));
    }
    t
}

fn rows_csv(rows: &[TableRow]) -> String {
    let mut s = String::from("row,involved,printed,engine,transcribed,matches_printed\n");
    for r in rows {
        s.push_str(&format!("{},\"{}\",{},{},{},{}\n", r.row, r.involved, r.printed, r.engine, r.transcribed, r.matches_printed()));
    }
    s
}

pub fn tables(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let (rows, rep) = table_report(cfg.eps_order())?;
    Ok(RunOutput {
        reports: vec![rep, contraction_report()],
        summary: to_value(&rows),
        text: rows_text(&rows),
        csv: vec![("tables.csv".into(), rows_csv(&rows))],
    })
}

pub fn gbc_verify(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let expansion = expansion_report(cfg.eps_order())?;
    let (a, rep) = assemble_gbc_series(cfg.eps_order())?;
    let mut csv = String::from("order_eps,coefficient,latex\n");
    let mut text = String::from("chi(B(r)) coefficients per unit eta ^ d eta, in units of 1/pi^2\n");
    for (k, c) in a.chi_divergent.iter() {
        csv.push_str(&format!("{k},{c},\"{}\"\n", c.to_latex()));
        text.push_str(&format!("eps^{k}: {c}    [{}]\n", c.to_latex()));
    }
    text.push_str(&format!("constant: {}    [{}]\n", a.constant_expanded, a.constant_expanded.to_latex()));
    text.push_str(&format!("boundary series: {}\n", a.boundary.to_latex()));
    Ok(RunOutput { reports: vec![expansion, rep], summary: to_value(&a), text, csv: vec![("gbc.csv".into(), csv)] })
}

fn named(cfg: &RunConfig, wanted: &[&str]) -> bool {
    cfg.manifold == "all" || wanted.contains(&cfg.manifold.as_str())
}

/// Boundaries used by the volume run, in a fixed order.
fn volume_manifolds(cfg: &RunConfig) -> Vec<Arc<dyn ContactManifold>> {
    let mut out: Vec<Arc<dyn ContactManifold>> = Vec::new();
    if named(cfg, &["round-s3"]) {
        out.push(Arc::new(HopfSphere::round()));
    }
    if named(cfg, &["heisenberg"]) {
        out.push(Arc::new(HeisenbergQuotient));
    }
    if named(cfg, &["berger"]) {
        for &l in &cfg.lambda {
            out.push(Arc::new(HopfSphere::berger(l)));
        }
    }
    if named(cfg, &["conformal-s3"]) {
        out.push(Arc::new(Conformal { base: Arc::new(HopfSphere::round()), u: Arc::new(random_sphere_factor(cfg.seed, 2, cfg.amplitude)) }));
    }
    out
}

pub fn volume(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let fv = formal_volume(cfg.eps_order())?;
    let tol = &cfg.tolerances;
    let mut reports = Vec::new();
    let mut rows: Vec<VolumeExpansion> = Vec::new();
    for m in volume_manifolds(cfg) {
        let v = volume_series(&fv, m.as_ref(), cfg.resolution)?;
        reports.push(volume_checks(&v, tol.linear));
        rows.push(v);
    }
    let mut csv = vec![];
    let mut summary = serde_json::Map::new();
    if named(cfg, &["ch2"]) {
        let sphere = solve_connection(&HopfSphere::round(), cfg.resolution)?;
        let t = Ch2Tolerances {
            leading: tol.ch2_leading,
            v1: tol.ch2_v1,
            bulk: tol.ch2_bulk,
            chi: tol.ch2_chi,
            curly_v: tol.ch2_curly_v,
            oracle: tol.ch2_oracle,
        };
        let (res, rep) = euler_check_ch2(&sphere, &fv, cfg.ch2_points, cfg.seed, &t)?;
        reports.push(rep);
        let model = ache_core::volume_renorm::Ch2Model::default();
        let mut row = ache_core::volume_renorm::volume_from_data(&fv, &sphere);
        row.manifold = "ch2".into();
        row.leading = model.leading()?;
        row.v1 = model.v1()?;
        row.linear = 0.0;
        row.renormalized = Some(res.renormalized);
        row.curly_v = Some(res.curly_v);
        rows.push(row);
        let mut c = String::from("x0,x1,x2,x3,scal,weyl_sq,bulk_integrand,holomorphic\n");
        for k in &res.curvature {
            c.push_str(&format!(
                "{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e},{:.15e}\n",
                k.point[0],
                k.point[1],
                k.point[2],
                k.point[3],
                k.scal,
                k.weyl_sq,
                k.bulk_integrand(),
                k.holomorphic
            ));
        }
        csv.push(("ch2_curvature.csv".to_string(), c));
        summary.insert("chi".into(), to_value(&res.chi));
        summary.insert("renormalized_volume".into(), to_value(&res.renormalized));
        summary.insert("curly_v".into(), to_value(&res.curly_v));
    }
    let mut table = VolumeExpansion::csv_header().to_string();
    for r in &rows {
        table.push_str(&r.csv_row());
    }
    csv.insert(0, ("volume.csv".to_string(), table.clone()));
    summary.insert("expansions".into(), to_value(&rows));
    summary.insert("symbolic".into(), to_value(&fv));
    Ok(RunOutput { reports, summary: Value::Object(summary), text: table, csv })
}

/// Base structures and factor families for the conformal runs.
fn conformal_bases(cfg: &RunConfig) -> Result<Vec<(Arc<dyn ContactManifold>, FactorFamily)>, RunError> {
    let mut out: Vec<(Arc<dyn ContactManifold>, FactorFamily)> = Vec::new();
    if named(cfg, &["round-s3"]) {
        out.push((Arc::new(HopfSphere::round()), FactorFamily::Sphere));
    }
    if named(cfg, &["heisenberg"]) {
        out.push((Arc::new(HeisenbergQuotient), FactorFamily::Periodic));
    }
    if cfg.manifold == "berger" {
        for &l in &cfg.lambda {
            out.push((Arc::new(HopfSphere::berger(l)), FactorFamily::Sphere));
        }
    }
    if cfg.manifold == "conformal-s3" {
        let u = Arc::new(random_sphere_factor(cfg.seed, 2, cfg.amplitude));
        out.push((Arc::new(hat_coframe(Arc::new(HopfSphere::round()), u, cfg.resolution)?), FactorFamily::Sphere));
    }
    Ok(out)
}

pub fn anomaly(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let tol = &cfg.tolerances;
    let law_tol = LawTolerances { law: tol.law, composition: tol.composition, contact: tol.contact };
    let an_tol = AnomalyTolerances { cocycle: tol.cocycle, linearity: tol.linearity, order_band: tol.order_band };
    let bases = conformal_bases(cfg)?;
    // law comparisons use a coarser grid: every node is an independent check
    let law_res = cfg.resolution.min(4);
    let mut laws = Vec::new();
    let mut csv = Vec::new();
    for (m, fam) in &bases {
        laws.push(law_summary(m.clone(), *fam, cfg.factors, cfg.seed, cfg.amplitude, law_res)?);
        let pts = hat_points(m.clone(), fam.factor(cfg.seed, cfg.amplitude), law_res)?;
        csv.push((format!("conformal_nodes_{}.csv", file_tag(&m.name())), node_errors_csv(&pts)));
    }
    let mut reports = vec![law_report(&laws, &law_tol)];
    let mut law_csv = String::new();
    for (k, s) in laws.iter().enumerate() {
        let c = s.to_csv();
        law_csv.push_str(if k == 0 { &c } else { c.split_once('\n').map_or("", |x| x.1) });
    }
    csv.insert(0, ("conformal_laws.csv".into(), law_csv));
    // the anomaly on a structure with varying curvature, so that the
    // first variation does not vanish identically
    let mut variation_bases: Vec<(Arc<dyn ContactManifold>, FactorFamily)> = Vec::new();
    for (m, fam) in &bases {
        if cfg.manifold == "all" && *fam == FactorFamily::Sphere {
            let u = Arc::new(random_sphere_factor(cfg.seed.wrapping_add(500), 2, 0.3));
            variation_bases.push((Arc::new(hat_coframe(m.clone(), u, cfg.resolution)?), *fam));
        } else {
            variation_bases.push((m.clone(), *fam));
        }
    }
    let mut anomalies = Vec::new();
    for (m, fam) in variation_bases {
        let s = anomaly_summary(m, fam, cfg.seed, cfg.amplitude, cfg.step, cfg.resolution)?;
        reports.push(anomaly_report(&s, &an_tol));
        csv.push((format!("anomaly_{}.csv", file_tag(&s.manifold)), s.to_csv()));
        anomalies.push(s);
    }
    let summary = serde_json::json!({ "laws": laws, "anomaly": anomalies });
    let text = laws.iter().map(|s| s.to_csv()).collect::<Vec<_>>().join("\n");
    Ok(RunOutput { reports, summary, text, csv })
}

fn file_tag(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

pub fn stokes(cfg: &RunConfig) -> Result<RunOutput, RunError> {
    let (m, periodic): (Arc<dyn ContactManifold>, bool) = match cfg.manifold.as_str() {
        "heisenberg" => (Arc::new(HeisenbergQuotient), false),
        "berger" => (Arc::new(HopfSphere::berger(cfg.lambda[0])), true),
        "conformal-s3" => (
            Arc::new(Conformal { base: Arc::new(HopfSphere::round()), u: Arc::new(random_sphere_factor(cfg.seed, 2, cfg.amplitude)) }),
            true,
        ),
        _ => (Arc::new(HopfSphere::round()), true),
    };
    let mut rep = VerificationReport::new(format!("CR Stokes on {}", m.name()));
    let mut csv = String::from("form,seed,covariant_re,covariant_im,exterior_re,exterior_im,wedge_re,wedge_im,sup_norm\n");
    for k in 0..cfg.forms as u64 {
        let seed = cfg.seed.wrapping_add(k);
        let a: Box<dyn Field> =
            if periodic { Box::new(random_sphere_form(seed, 2)) } else { Box::new(random_periodic_form(seed, 2)) };
        let s = stokes_integrals(m.as_ref(), cfg.resolution, a.as_ref())?;
        csv.push_str(&format!(
            "{k},{seed},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}\n",
            s.covariant.re, s.covariant.im, s.exterior.re, s.exterior.im, s.wedge.re, s.wedge.im, s.sup_norm
        ));
        for mut c in cr_stokes_check(m.as_ref(), cfg.resolution, a.as_ref(), cfg.tolerances.stokes)?.checks {
            c.id = c.id.replacen("stokes.", &format!("stokes.form{}.", k + 1), 1);
            rep.push(c);
        }
    }
    Ok(RunOutput { reports: vec![rep], summary: Value::Null, text: String::new(), csv: vec![("stokes.csv".into(), csv)] })
}
