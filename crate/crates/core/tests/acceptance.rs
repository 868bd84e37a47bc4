//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p ache-core --test acceptance -- --nocapture`.

use ache_core::conformal_change::*;
use ache_core::exact_algebra::*;
use ache_core::gbc_engine::*;
use ache_core::report::{Status, VerificationReport};
use ache_core::tw_calculus::fields::{random_sphere_factor, random_sphere_form};
use ache_core::tw_calculus::manifolds::{HeisenbergQuotient, HopfSphere};
use ache_core::tw_calculus::{cr_stokes_check, solve_connection, ContactManifold};
use ache_core::volume_renorm::*;
use std::sync::Arc;
use std::time::Instant;
use Symbol::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn status(rep: &VerificationReport, id: &str) -> Status {
    rep.get(id).unwrap_or_else(|| panic!("missing check {id}")).status
}

fn table_rows_exact() -> Outcome {
    let t = Instant::now();
    let (rows, _) = table_report(4).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let matching: Vec<usize> = rows.iter().filter(|r| r.matches_printed()).map(|r| r.row).collect();
    outcome(matching == [1, 2, 4, 5, 6, 7] && secs < 5.0, format!("rows matching exactly: {matching:?}, {secs:.2} s"))
}

fn discrepancy_localized() -> Outcome {
    let (rows, rep) = table_report(4).unwrap();
    let row3 = &rows[2];
    let want = canonical(&(&sym(R).pow(2).scale(&q(3, 8)) - &sym(TauSq).scale(&qi(6))));
    let ok = row3.engine == want
        && !row3.matches_printed()
        && status(&rep, "table.end_to_end.derived") == Status::Pass
        && status(&rep, "table.end_to_end.printed_row3") == Status::Warn;
    outcome(ok, format!("printed {}, engine {}; end-to-end holds only with the engine value", row3.printed, row3.engine))
}

fn constant_term() -> Outcome {
    let (a, rep) = assemble_gbc_series(4).unwrap();
    let ok = status(&rep, "gbc.derived.constant") == Status::Pass && status(&rep, "gbc.transcribed.constant") == Status::Pass;
    outcome(ok, format!("constant term {} (units 1/pi^2)", canonical(&a.constant_expanded)))
}

fn divergences_cancel() -> Outcome {
    let (a, rep) = assemble_gbc_series(4).unwrap();
    let ids = ["derived", "transcribed"]
        .iter()
        .flat_map(|p| (1..=4).map(move |k| format!("gbc.{p}.divergent_{k}")))
        .chain(["gbc.derived.linear".to_string(), "gbc.transcribed.linear".to_string()]);
    let ok = ids.into_iter().all(|id| status(&rep, &id) == Status::Pass);
    let coeffs: Vec<String> = a.divergent_coefficients().unwrap().iter().map(|(k, c)| format!("eps^{k}: {}", canonical(c))).collect();
    outcome(ok, coeffs.join(", "))
}

fn w2_minus_invisible() -> Outcome {
    let i0 = DiagEndo::rational([(1, 1), (1, 2), (1, 2)]);
    let v = contract_full(&i0, &w2_minus());
    let (_, rep) = table_report(4).unwrap();
    outcome(v.is_zero() && status(&rep, "table.w2_minus_row") == Status::Pass, format!("T(I0 ^ W2-) = {v} for free a, b"))
}

fn linear_term() -> Outcome {
    let t = Instant::now();
    let fv = formal_volume(4).unwrap();
    let symbolic = poly_reduce(fv.linear()).is_zero();
    let mut ms: Vec<Box<dyn ContactManifold>> = vec![Box::new(HopfSphere::round()), Box::new(HeisenbergQuotient)];
    for k in [0.8, 1.25, 1.5] {
        ms.push(Box::new(HopfSphere::berger(k)));
    }
    let mut worst: f64 = 0.0;
    let mut ok = symbolic;
    for m in &ms {
        let v = volume_series(&fv, m.as_ref(), 8).unwrap();
        ok &= volume_checks(&v, 1e-8).passed();
        worst = worst.max(v.linear.abs());
    }
    let secs = t.elapsed().as_secs_f64();
    outcome(ok && secs < 60.0, format!("symbolic {} -> 0, max numeric |linear| {worst:.2e} on 5 manifolds, {secs:.1} s", fv.linear()))
}

fn cr_stokes() -> Outcome {
    let m = HopfSphere::round();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for seed in 0..10 {
        let rep = cr_stokes_check(&m, 8, &random_sphere_form(seed, 2), 1e-8).unwrap();
        ok &= rep.passed();
        for c in &rep.checks {
            worst = worst.max(c.error.unwrap_or(0.0));
        }
    }
    outcome(ok, format!("10 random (1,0)-forms, max route value or spread {worst:.2e}"))
}

fn conformal_laws() -> Outcome {
    let s = law_summary(Arc::new(HopfSphere::round()), FactorFamily::Sphere, 20, 1, 0.5, 4).unwrap();
    let h = law_summary(Arc::new(HeisenbergQuotient), FactorFamily::Periodic, 20, 1, 0.5, 4).unwrap();
    let rep = law_report(&[s.clone(), h.clone()], &LawTolerances::default());
    let worst = |f: &dyn Fn(&LawErrors) -> f64| s.max(f).max(h.max(f));
    let printed = (worst(&|e| e.r_printed), worst(&|e| e.tau_printed));
    let recomputed = (worst(&|e| e.r_law), worst(&|e| e.tau_law));
    let closure = s.composition.direct.max(h.composition.direct).max(s.composition.law).max(h.composition.law);
    let printed_ok = printed.0 <= 1e-6 && printed.1 <= 1e-6;
    let detail = format!(
        "displayed laws vs recomputation: R {:.2e}, tau {:.2e} (unattainable as displayed, see ledger); \
         corrected laws R {:.2e}, tau {:.2e}; composition {closure:.2e}; report {}",
        printed.0,
        printed.1,
        recomputed.0,
        recomputed.1,
        if rep.passed() { "passes" } else { "fails" }
    );
    outcome(printed_ok && rep.passed(), detail)
}

fn ch2_model() -> Outcome {
    let fv = formal_volume(4).unwrap();
    let data = solve_connection(&HopfSphere::round(), 8).unwrap();
    let (r, rep) = euler_check_ch2(&data, &fv, 100, 1, &Ch2Tolerances::default()).unwrap();
    outcome(
        rep.passed(),
        format!("chi = {:.12}, curly V / pi^2 = {:.12}, V = {:.12} pi^2, max bulk/Scal^2 {:.1e}", r.chi, r.curly_v / std::f64::consts::PI.powi(2), r.renormalized / std::f64::consts::PI.powi(2), r.max_bulk),
    )
}

fn anomaly_functional() -> Outcome {
    let round: Arc<dyn ContactManifold> = Arc::new(HopfSphere::round());
    let base: Arc<dyn ContactManifold> = Arc::new(hat_coframe(round, Arc::new(random_sphere_factor(21, 2, 0.3)), 5).unwrap());
    let tol = AnomalyTolerances::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for (m, fam) in [(base, FactorFamily::Sphere), (Arc::new(HeisenbergQuotient) as Arc<dyn ContactManifold>, FactorFamily::Periodic)] {
        let s = anomaly_summary(m, fam, 5, 0.3, 0.05, 5).unwrap();
        let rep = anomaly_report(&s, &tol);
        ok &= rep.passed() && s.identity == 0.0;
        let orders: Vec<String> = s.variations.iter().map(|v| format!("{:.3}", v.order.unwrap_or(f64::NAN))).collect();
        notes.push(format!("{}: cocycle defect {:.1e}, orders {}", s.manifold, (s.cocycle[0] - s.cocycle[1] - s.cocycle[2]).abs(), orders.join("/")));
    }
    outcome(ok, notes.join("; "))
}

/// Criteria that cannot hold as stated; they print FAIL but do not abort the
/// run. Reasons are recorded in the decisions ledger.
const UNATTAINABLE: [usize; 1] = [8];

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("table reproduction", table_rows_exact),
        ("discrepancy localization", discrepancy_localized),
        ("end-to-end constant term", constant_term),
        ("divergence cancellation", divergences_cancel),
        ("W2- contributes nothing", w2_minus_invisible),
        ("linear-term vanishing", linear_term),
        ("CR Stokes", cr_stokes),
        ("conformal laws", conformal_laws),
        ("complex hyperbolic model", ch2_model),
        ("anomaly functional", anomaly_functional),
    ];
    let mut unexpected = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let n = k + 1;
        let o = run();
        println!("criterion {n:>2} {:<26} {}  {}", name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && !UNATTAINABLE.contains(&n) {
            unexpected.push(n);
        }
        if o.pass && UNATTAINABLE.contains(&n) {
            println!("             criterion {n} is listed as unattainable but passed");
        }
    }
    assert!(unexpected.is_empty(), "criteria failed: {unexpected:?}");
}
