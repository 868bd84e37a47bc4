use crate::exact_algebra::*;

/// Symmetric operator on 2-forms in the basis `e01, e02, e03, e12, e13, e23`.
pub type CurvatureOp = PolyMatrix<6>;

pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Basis index and sign of `e_a ^ e_b`.
pub fn pair_index(a: usize, b: usize) -> Option<(usize, i64)> {
    if a == b {
        return None;
    }
    let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
    PAIRS.iter().position(|p| *p == (lo, hi)).map(|i| (i, s))
}

/// `<rho(e_a ^ e_b), e_c ^ e_d>`.
pub fn rho(op: &CurvatureOp, a: usize, b: usize, c: usize, d: usize) -> SymbolicPoly {
    match (pair_index(a, b), pair_index(c, d)) {
        (Some((i, s)), Some((j, t))) => op.get(i, j).scale(&qi(s * t)),
        _ => SymbolicPoly::zero(),
    }
}

/// Sectional entry `K_ab`.
pub fn sectional(op: &CurvatureOp, a: usize, b: usize) -> SymbolicPoly {
    rho(op, a, b, a, b)
}

/// `Scal = 2 sum_{a<b} K_ab` for a curvature operator with the Bianchi
/// symmetry.
pub fn scalar_curvature(op: &CurvatureOp) -> SymbolicPoly {
    let mut s = SymbolicPoly::zero();
    for (a, b) in PAIRS {
        s += &sectional(op, a, b);
    }
    s.scale(&qi(2))
}

/// Sum over all six permutations `(r, s, t)` of `alpha_r beta_s gamma_t`.
pub fn contract_tiii(a: &DiagEndo, b: &DiagEndo, c: &DiagEndo) -> SymbolicPoly {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut s = SymbolicPoly::zero();
    for [r, t, u] in PERMS {
        s += &(&(a.get(r) * b.get(t)) * c.get(u));
    }
    s
}

/// `K12 lambda3 + K23 lambda1 + K31 lambda2` over the tangential frame
/// `e1, e2, e3` (diagonal part of `rho` only).
pub fn contract_tar(a: &DiagEndo, op: &CurvatureOp) -> SymbolicPoly {
    let mut s = &sectional(op, 1, 2) * a.get(2);
    s += &(&sectional(op, 2, 3) * a.get(0));
    s += &(&sectional(op, 3, 1) * a.get(1));
    s
}

fn levi(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (1, 3, 2) | (3, 2, 1) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Full alternating contraction
/// `1/4 sum eps_abc eps_a'b'c' rho_(ab),(a'b') lambda_c delta_cc'` over the
/// tangential frame; equals `contract_tar` when `rho` is diagonal.
pub fn contract_full(a: &DiagEndo, op: &CurvatureOp) -> SymbolicPoly {
    let mut s = SymbolicPoly::zero();
    for x in 1..4 {
        for y in 1..4 {
            for c in 1..4 {
                let e1 = levi(x, y, c);
                if e1 == 0 {
                    continue;
                }
                for xp in 1..4 {
                    for yp in 1..4 {
                        let e2 = levi(xp, yp, c);
                        if e2 == 0 {
                            continue;
                        }
                        s += &(&rho(op, x, y, xp, yp) * a.get(c - 1)).scale(&qi(e1 * e2));
                    }
                }
            }
        }
    }
    s.scale(&q(1, 4))
}

/// Constant holomorphic sectional curvature `c` in a `J`-adapted
/// orthonormal frame with `J e0 = e1`, `J e2 = e3`:
/// `c/4 (g_ac g_bd - g_ad g_bc + w_ac w_bd - w_ad w_bc + 2 w_ab w_cd)`.
pub fn constant_holomorphic(c: &ExactScalar) -> CurvatureOp {
    let w = |a: usize, b: usize| -> i64 {
        match (a, b) {
            (0, 1) | (2, 3) => 1,
            (1, 0) | (3, 2) => -1,
            _ => 0,
        }
    };
    let g = |a: usize, b: usize| i64::from(a == b);
    CurvatureOp::from_fn(|i, j| {
        let (a, b) = PAIRS[i];
        let (cc, d) = PAIRS[j];
        let n = g(a, cc) * g(b, d) - g(a, d) * g(b, cc) + w(a, cc) * w(b, d) - w(a, d) * w(b, cc) + 2 * w(a, b) * w(cc, d);
        SymbolicPoly::constant(c * q(n, 4))
    })
}

/// Model curvature: holomorphic sectional curvature -1, so `K01 = K23 = -1`,
/// the totally real planes `-1/4` and `Scal = -6`.
pub fn model_curvature() -> CurvatureOp {
    constant_holomorphic(&qi(-1))
}

/// `a((w2)^2 - (w3)^2) + b(w2 w3 + w3 w2)` with the `J`-anti-invariant forms
/// `w2 = e02 - e13`, `w3 = e03 - e12`.
pub fn w2_minus() -> CurvatureOp {
    let v2 = [0, 1, 0, 0, -1, 0];
    let v3 = [0, 0, 1, -1, 0, 0];
    let a = sym(Symbol::SmallA);
    let b = sym(Symbol::SmallB);
    CurvatureOp::from_fn(|i, j| {
        &a.scale(&qi(v2[i] * v2[j] - v3[i] * v3[j])) + &b.scale(&qi(v2[i] * v3[j] + v3[i] * v2[j]))
    })
}
