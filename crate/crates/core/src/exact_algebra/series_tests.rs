use super::*;
use Symbol::*;

type S = AsymptoticSeries<SymbolicPoly>;

fn c(n: i64, d: i64) -> SymbolicPoly {
    SymbolicPoly::rat(n, d)
}

#[test]
fn unit_times_unit_keeps_remainder() {
    let x = S::from_coeffs(0, Some(4), [(0, c(1, 1)), (4, sym(R))]).unwrap();
    let y = S::from_coeffs(0, Some(4), [(0, c(1, 1))]).unwrap();
    let p = series_mul(&x, &y);
    assert_eq!(p, x);
    assert_eq!(p.trunc(), Some(4));
}

#[test]
fn leading_exponential_times_decaying() {
    // e^{2r} (c2 e^{-2r} + o(e^{-2r})) = c2 + o(1)
    let big = S::monomial(-4, c(1, 1));
    let small = S::from_coeffs(4, Some(4), [(4, sym(A))]).unwrap();
    let p = series_mul(&big, &small);
    assert_eq!(p.lead(), 0);
    assert_eq!(p.trunc(), Some(0));
    assert_eq!(p.coeff(0).unwrap(), sym(A));
    assert!(matches!(p.coeff(1), Err(SeriesError::BeyondTruncation { .. })));
}

#[test]
fn times_zero_keeps_truncation_bookkeeping() {
    let x = S::from_coeffs(-2, Some(2), [(-2, sym(R)), (0, c(3, 1))]).unwrap();
    let z = S::zero(0, Some(4));
    let p = series_mul(&x, &z);
    assert!(p.is_zero());
    assert_eq!(p.lead(), -2);
    assert_eq!(p.trunc(), Some(2));
}

#[test]
fn inv_sqrt_examples() {
    assert_eq!(series_inv_sqrt(&S::one()).unwrap(), S::one());
    let x = S::from_coeffs(0, Some(4), [(0, c(1, 1)), (4, sym(SmallA))]).unwrap();
    let y = series_inv_sqrt(&x).unwrap();
    let want = S::from_coeffs(0, Some(4), [(0, c(1, 1)), (4, sym(SmallA).scale(&q(-1, 2)))]).unwrap();
    assert_eq!(y, want);
}

#[test]
fn inv_sqrt_rejects_non_unit_lead() {
    let x = S::from_coeffs(0, Some(4), [(0, c(2, 1))]).unwrap();
    assert_eq!(series_inv_sqrt(&x), Err(SeriesError::NotUnitLeading));
    let x = S::from_coeffs(-2, Some(4), [(-2, c(1, 1)), (0, c(1, 1))]).unwrap();
    assert_eq!(series_inv_sqrt(&x), Err(SeriesError::NotUnitLeading));
}

#[test]
fn inv_sqrt_squared_times_x_is_one() {
    let x = S::from_coeffs(0, Some(4), [(0, c(1, 1)), (2, sym(R)), (3, sym(Rem32)), (4, sym(TauSq))]).unwrap();
    let y = series_inv_sqrt(&x).unwrap();
    let one = series_mul(&series_mul(&y, &y), &x);
    let mut want = S::one();
    want = want.truncate(4);
    assert_eq!(one, want);
}

#[test]
fn matrix_inverse_by_neumann_series() {
    let mut m1 = FrameTensor::zero();
    m1.set(0, 1, sym(R));
    m1.set(1, 0, sym(T));
    let x = AsymptoticSeries::from_coeffs(0, Some(4), [(0, FrameTensor::identity()), (2, m1)]).unwrap();
    let xi = x.inv().unwrap();
    let prod = x.mul(&xi);
    assert_eq!(prod, AsymptoticSeries::one().truncate(4));
}

#[test]
fn truncation_order_audit() {
    // (e^{r} a + b + o(e^{-r})) (e^{r/2} + o(1)): remainder is o(e^{r})
    let x = S::from_coeffs(-2, Some(2), [(-2, sym(SmallA)), (0, sym(SmallB))]).unwrap();
    let y = S::from_coeffs(-1, Some(0), [(-1, c(1, 1))]).unwrap();
    let p = series_mul(&x, &y);
    assert_eq!(p.trunc(), Some(-2));
    assert_eq!(p.coeff(-3).unwrap(), sym(SmallA));
    assert!(p.coeff(-1).is_err());
    // exact factor keeps the other remainder
    let e = S::from_coeffs(-1, None, [(-1, c(1, 1))]).unwrap();
    let p = series_mul(&x, &e);
    assert_eq!(p.trunc(), Some(1));
    assert_eq!(p.coeff(-1).unwrap(), sym(SmallB));
    assert!(p.coeff(2).is_err());
    // sums keep the smaller truncation order
    assert_eq!(x.add(&y).trunc(), Some(0));
}

#[test]
fn json_round_trip_and_kind_check() {
    let x = S::from_coeffs(-4, Some(0), [(-4, c(1, 1)), (-2, sym(R).scale(&q(-1, 2)))]).unwrap();
    let s = serde_json::to_string(&x).unwrap();
    assert!(s.starts_with(r#"{"kind":"symbolic","unit":"exp(-r/2)","lead":-4,"trunc":0"#));
    let back: S = serde_json::from_str(&s).unwrap();
    assert_eq!(back, x);
    let bad: Result<AsymptoticSeries<f64>, _> = serde_json::from_str(&s);
    assert!(bad.is_err());
}

#[test]
fn latex_uses_exponentials() {
    let x = S::from_coeffs(-4, Some(0), [(-4, c(1, 1)), (-2, sym(R).scale(&q(-1, 2)))]).unwrap();
    assert_eq!(x.to_latex(), "\\left(1\\right)e^{2r} + \\left(-\\frac{1}{2} R\\right)e^{r} + o\\left(1\\right)");
    assert_eq!(exp_latex(3).unwrap(), "e^{-3r/2}");
}
