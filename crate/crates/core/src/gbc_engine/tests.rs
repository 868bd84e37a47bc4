use super::*;
use crate::report::Status;
use proptest::prelude::*;
use Symbol::*;

fn small_poly() -> impl Strategy<Value = SymbolicPoly> {
    let syms = prop::sample::select(vec![R, T, SmallA, SmallB, A]);
    prop::collection::vec((-6i64..=6, 1i64..=4, syms, 0u32..=2), 0..4).prop_map(|terms| {
        let mut p = SymbolicPoly::zero();
        for (n, d, s, e) in terms {
            p += &sym(s).pow(e).scale(&q(n, d));
        }
        p
    })
}

fn diag() -> impl Strategy<Value = DiagEndo> {
    (small_poly(), small_poly(), small_poly()).prop_map(|(a, b, c)| DiagEndo::new(a, b, c))
}

fn diag_op() -> impl Strategy<Value = CurvatureOp> {
    prop::collection::vec((-8i64..=8, 1i64..=5), 6).prop_map(|v| {
        CurvatureOp::diag(std::array::from_fn(|k| SymbolicPoly::rat(v[k].0, v[k].1)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tiii_symmetric(a in diag(), b in diag(), c in diag()) {
        let x = contract_tiii(&a, &b, &c);
        prop_assert_eq!(&x, &contract_tiii(&b, &a, &c));
        prop_assert_eq!(&x, &contract_tiii(&c, &b, &a));
        prop_assert_eq!(&x, &contract_tiii(&a, &c, &b));
    }

    #[test]
    fn tiii_multilinear(a in diag(), a2 in diag(), b in diag(), c in diag(), n in -5i64..=5) {
        let s = a.plus(&a2.scaled(&qi(n)));
        let lhs = contract_tiii(&s, &b, &c);
        let rhs = &contract_tiii(&a, &b, &c) + &contract_tiii(&a2, &b, &c).scale(&qi(n));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(contract_tiii(&DiagEndo::zero(), &b, &c).is_zero());
    }

    #[test]
    fn full_contraction_reduces_to_tar(a in diag(), op in diag_op()) {
        prop_assert_eq!(contract_full(&a, &op), contract_tar(&a, &op));
    }

    #[test]
    fn w2_minus_invisible_to_any_i0_multiple(n in 1i64..=9) {
        let i0 = DiagEndo::rational([(n, 1), (n, 2), (n, 2)]);
        prop_assert!(contract_full(&i0, &w2_minus()).is_zero());
    }
}

#[test]
fn contraction_examples() {
    let rep = contraction_report();
    assert!(rep.passed(), "{}", rep.to_text());
    let z = DiagEndo::zero();
    assert!(contract_tar(&z, &model_curvature()).is_zero());
    assert!(contract_tar(&DiagEndo::one(), &CurvatureOp::zero()).is_zero());
}

#[test]
fn tables_reproduce_six_rows_and_flag_row_three() {
    let (rows, rep) = table_report(4).unwrap();
    assert_eq!(rows.len(), 7);
    let matching: Vec<usize> = rows.iter().filter(|r| r.matches_printed()).map(|r| r.row).collect();
    assert_eq!(matching, vec![1, 2, 4, 5, 6, 7]);
    assert!(rep.passed(), "{}", rep.to_text());
    assert_eq!(rep.get("table.row3.derived").unwrap().status, Status::Warn);
    assert_eq!(rep.get("table.end_to_end.derived").unwrap().status, Status::Pass);
    assert_eq!(rep.get("table.end_to_end.printed_row3").unwrap().status, Status::Warn);
    assert_eq!(rows[2].engine, canonical(&formal_expansion_row3()));
}

fn formal_expansion_row3() -> SymbolicPoly {
    crate::formal_expansion::lin(&[(3, 8, sym(R).pow(2)), (-6, 1, sym(TauSq))])
}

#[test]
fn assembled_series_cancels_divergences() {
    let (a, rep) = assemble_gbc_series(4).unwrap();
    assert!(rep.passed(), "{}", rep.to_text());
    for (_, c) in a.divergent_coefficients().unwrap() {
        assert!(canonical(&c).is_zero());
    }
    assert_eq!(a.bulk.coeff(-4).unwrap(), SymbolicPoly::rat(3, 16));
    assert_eq!(a.boundary.coeff(-4).unwrap(), SymbolicPoly::rat(-3, 16));
    assert_eq!(canonical(&a.constant_expanded), canonical(&t_density().scale(&q(-1, 4))));
}

#[test]
fn low_truncation_is_an_error() {
    assert!(assemble_gbc_series(2).is_err());
    assert!(table_report(3).is_err());
}
