use super::*;
use crate::formal_expansion::{expand_ab, lin};
use Symbol::*;

/// One contribution to the constant term of the boundary integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub row: usize,
    pub involved: String,
    pub printed: SymbolicPoly,
    /// Value on the derived path.
    pub engine: SymbolicPoly,
    /// Value on the transcribed path.
    pub transcribed: SymbolicPoly,
}

impl TableRow {
    pub fn matches_printed(&self) -> bool {
        canonical(&self.engine) == canonical(&self.printed)
    }
}

/// The displayed values, in table order.
pub fn printed_rows() -> Vec<(String, SymbolicPoly)> {
    let r2 = sym(R).pow(2);
    let ts = sym(TauSq);
    vec![
        ("varpi_2, I0^I0^I0".into(), lin(&[(1, 16, r2.clone()), (-1, 2, ts.clone())])),
        ("varpi_1, I1^I0^I0 (3 terms)".into(), lin(&[(-3, 4, r2.clone())])),
        ("varpi_0, I1^I1^I0 (3 terms)".into(), lin(&[(3, 2, r2.clone()), (-6, 1, ts.clone())])),
        ("varpi_0, I2^I0^I0 (3 terms)".into(), lin(&[(3, 2, sym(A)), (6, 1, sym(B))])),
        ("varpi_2, I0^R0".into(), lin(&[(-5, 96, r2.clone()), (5, 12, ts)])),
        ("varpi_1, I1^R0".into(), lin(&[(1, 16, r2)])),
        ("varpi_0, I2^R0".into(), lin(&[(-1, 1, sym(A)), (-1, 2, sym(B))])),
    ]
}

/// Weight of each row in `T(I^I^I) + 3 T(I^R)`.
pub const ROW_WEIGHT: [i64; 7] = [1, 1, 1, 1, 3, 3, 3];

/// Row index of the value that disagrees with the displayed table.
pub const DISCREPANT_ROW: usize = 3;

/// The seven row values computed from `varpi` and the shape operator.
pub fn row_values(data: &BoundaryData) -> Result<Vec<SymbolicPoly>, SeriesError> {
    let w = |k: i32| data.sphere_volume.coeff(-4 + 2 * k);
    let s = |k: i32| data.shape.coeff(2 * k);
    let (w0, w1, w2) = (w(0)?, w(1)?, w(2)?);
    let (s0, s1, s2) = (s(0)?, s(1)?, s(2)?);
    let r0 = model_curvature();
    let three = |p: SymbolicPoly| p.scale(&qi(3));
    Ok(vec![
        &w2 * &contract_tiii(&s0, &s0, &s0),
        &w1 * &three(contract_tiii(&s1, &s0, &s0)),
        &w0 * &three(contract_tiii(&s1, &s1, &s0)),
        &w0 * &three(contract_tiii(&s2, &s0, &s0)),
        &w2 * &contract_tar(&s0, &r0),
        &w1 * &contract_tar(&s1, &r0),
        &w0 * &contract_tar(&s2, &r0),
    ])
}

pub fn table_rows(derived: &BoundaryData, transcribed: &BoundaryData) -> Result<Vec<TableRow>, SeriesError> {
    let e = row_values(derived)?;
    let t = row_values(transcribed)?;
    Ok(printed_rows()
        .into_iter()
        .enumerate()
        .map(|(i, (involved, printed))| TableRow {
            row: i + 1,
            involved,
            printed,
            engine: canonical(&e[i]),
            transcribed: canonical(&t[i]),
        })
        .collect())
}

/// `sum_k weight_k row_k` with `A`, `B` replaced by their definitions.
pub fn weighted_total(values: &[SymbolicPoly]) -> SymbolicPoly {
    let mut s = SymbolicPoly::zero();
    for (v, w) in values.iter().zip(ROW_WEIGHT) {
        s += &v.scale(&qi(w));
    }
    canonical(&expand_ab(&s))
}

/// Required total: `-3 (R^2/16 - 5/2 |tau|^2)`, i.e. `-1/4` of it after the
/// `1/12` prefactor.
pub fn required_total() -> SymbolicPoly {
    t_density().scale(&qi(-3))
}

pub fn table_report(trunc: i32) -> Result<(Vec<TableRow>, VerificationReport), GbcError> {
    let derived = path_data(Path::Derived, trunc)?;
    let transcribed = path_data(Path::Transcribed, trunc)?;
    let rows = table_rows(&derived, &transcribed)?;
    let mut rep = VerificationReport::new("boundary contribution tables");
    for r in &rows {
        for (p, value) in [("derived", &r.engine), ("transcribed", &r.transcribed)] {
            let c = Check::exact(&format!("table.row{}.{p}", r.row), &r.involved, Source::Printed, &r.printed, value);
            let c = if r.row == DISCREPANT_ROW {
                c.expected_mismatch().with_note(format!(
                    "printed {} but 3 T(I1, I1, I0) = 6ab with I1 = diag(0, a, b) gives {}; see the end-to-end rows",
                    r.printed, value
                ))
            } else {
                c
            };
            rep.push(c);
        }
    }
    let row3 = &rows[DISCREPANT_ROW - 1];
    rep.push(Check::exact(
        "table.row3.engine_value",
        "varpi_0, I1^I1^I0 (3 terms) = 3/8 R^2 - 6 |tau|^2",
        Source::Derived,
        &lin(&[(3, 8, sym(R).pow(2)), (-6, 1, sym(TauSq))]),
        &row3.engine,
    ));
    let w0 = derived.sphere_volume.coeff(-4)?;
    let s0 = derived.shape.coeff(0)?;
    rep.push(Check::exact(
        "table.w2_minus_row",
        "varpi_0, I0^W2- contributes nothing",
        Source::Printed,
        &SymbolicPoly::zero(),
        &(&w0 * &contract_full(&s0, &w2_minus())),
    ));
    let want = required_total();
    for (p, vals) in [
        ("derived", rows.iter().map(|r| r.engine.clone()).collect::<Vec<_>>()),
        ("transcribed", rows.iter().map(|r| r.transcribed.clone()).collect()),
    ] {
        rep.push(Check::exact(
            &format!("table.end_to_end.{p}"),
            "rows 1-4 + 3 (rows 5-7) = -3 (R^2/16 - 5/2 |tau|^2)",
            Source::Derived,
            &want,
            &weighted_total(&vals),
        ));
    }
    let printed: Vec<SymbolicPoly> = rows.iter().map(|r| r.printed.clone()).collect();
    rep.push(
        Check::exact(
            "table.end_to_end.printed_row3",
            "same sum with the printed row 3",
            Source::Printed,
            &want,
            &weighted_total(&printed),
        )
        .expected_mismatch()
        .with_note("the printed row 3 breaks the identity; the engine value restores it"),
    );
    Ok((rows, rep))
}

/// Contraction and curvature examples.
pub fn contraction_report() -> VerificationReport {
    let mut rep = VerificationReport::new("contractions and model curvature");
    let i0 = DiagEndo::rational([(1, 1), (1, 2), (1, 2)]);
    let r0 = model_curvature();
    rep.push(Check::exact("contract.tiii_i0", "T(I0, I0, I0)", Source::Derived, &SymbolicPoly::rat(3, 2), &contract_tiii(&i0, &i0, &i0)));
    let ab = DiagEndo::new(SymbolicPoly::zero(), sym(SmallA), sym(SmallB));
    rep.push(Check::exact(
        "contract.tiii_ab",
        "T((0, a, b), I0, I0) = a + b",
        Source::Derived,
        &(&sym(SmallA) + &sym(SmallB)),
        &contract_tiii(&ab, &i0, &i0),
    ));
    let ones = DiagEndo::rational([(1, 1), (1, 1), (1, 1)]);
    let unit = CurvatureOp::identity();
    rep.push(Check::exact("contract.tar_ones", "T((1,1,1), K = 1)", Source::Trivial, &SymbolicPoly::int(3), &contract_tar(&ones, &unit)));
    rep.push(Check::exact("contract.tar_i0", "T(I0, R0)", Source::Printed, &SymbolicPoly::rat(-5, 4), &contract_tar(&i0, &r0)));
    rep.push(Check::exact("contract.full_i0", "full contraction of I0 with R0", Source::Derived, &SymbolicPoly::rat(-5, 4), &contract_full(&i0, &r0)));
    rep.push(Check::exact("contract.w2_minus", "T(I0 ^ W2-) = 0 for all a, b", Source::Printed, &SymbolicPoly::zero(), &contract_full(&i0, &w2_minus())));
    let (k01, k23) = (sectional(&r0, 0, 1), sectional(&r0, 2, 3));
    rep.push(Check::flag(
        "curvature.complex_planes",
        "K01 = K23 = -1",
        Source::Derived,
        k01 == SymbolicPoly::int(-1) && k23 == SymbolicPoly::int(-1),
        &format!("{k01}, {k23}"),
    ));
    let real: Vec<SymbolicPoly> = [(0, 2), (0, 3), (1, 2), (1, 3)].iter().map(|&(a, b)| sectional(&r0, a, b)).collect();
    rep.push(Check::flag(
        "curvature.totally_real",
        "totally real planes all -1/4",
        Source::Derived,
        real.iter().all(|k| *k == SymbolicPoly::rat(-1, 4)),
        &real.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(", "),
    ));
    rep.push(Check::exact("curvature.scal", "Scal(R0) = -6", Source::Derived, &SymbolicPoly::int(-6), &scalar_curvature(&r0)));
    rep.push(Check::flag("curvature.symmetric", "R0 and W2- symmetric", Source::Trivial, r0.is_symmetric() && w2_minus().is_symmetric(), "symmetric"));
    rep
}
