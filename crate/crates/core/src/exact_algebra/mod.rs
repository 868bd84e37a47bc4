//! Exact rationals, polynomials over the curvature alphabet and graded
//! asymptotic series.

mod coefficient;
mod poly;
mod series;
mod symbol;

pub use coefficient::{CoeffKind, Coefficient, DiagEndo, FrameTensor, PolyMatrix};
pub use poly::{canonical, poly_reduce, q, qi, reduce_with_flags, ExactScalar, Monomial, Reduction, SymbolicPoly};
pub use series::{combine2, combine3, exp_latex, AsymptoticSeries, SeriesError};
pub use symbol::Symbol;

/// `x * y` with the o-calculus truncation rule.
pub fn series_mul<C: Coefficient>(x: &AsymptoticSeries<C>, y: &AsymptoticSeries<C>) -> AsymptoticSeries<C> {
    x.mul(y)
}

/// `x^{-1/2}` by binomial expansion; `x` must start with the constant 1.
pub fn series_inv_sqrt<C: Coefficient>(x: &AsymptoticSeries<C>) -> Result<AsymptoticSeries<C>, SeriesError> {
    x.inv_sqrt()
}

/// Shorthand for a polynomial variable.
pub fn sym(s: Symbol) -> SymbolicPoly {
    SymbolicPoly::var(s)
}

#[cfg(test)]
mod series_tests;
