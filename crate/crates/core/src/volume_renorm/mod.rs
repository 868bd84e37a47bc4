//! Volume of the balls `B(r)`: formal expansion, quadrature on concrete
//! boundaries, and the complex hyperbolic plane as an exact model.

use crate::exact_algebra::*;
use crate::formal_expansion::{build_kahler_form, bulk_volume_density, ExpansionError, ScalarSeries};
use crate::report::{Check, Source, VerificationReport};
use serde::Serialize;

mod ch2;
mod numeric;

pub use ch2::*;
pub use numeric::*;

/// `int^r` of a density series in `eps = e^{-r/2}`: `eps^k -> -(2/k) eps^k`
/// for `k != 0`, and the `eps^0` coefficient becomes the coefficient of `r`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadialIntegral {
    /// Growing part, known to `o(e^{r/2})`; the `r`-linear term, the
    /// integration constant and everything decaying sit in the remainder.
    pub divergent: ScalarSeries,
    pub linear: SymbolicPoly,
}

pub fn integrate_radially(d: &ScalarSeries) -> Result<RadialIntegral, SeriesError> {
    let linear = d.coeff(0)?;
    let mut divergent = ScalarSeries::zero(d.lead().min(-1), Some(-1));
    for (k, c) in d.iter().filter(|(k, _)| *k < 0) {
        divergent.insert(k, c.scale(&q(-2, k as i64)))?;
    }
    Ok(RadialIntegral { divergent, linear })
}

/// Symbolic volume expansion per unit `eta ^ d eta` measure.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormalVolume {
    pub density: ScalarSeries,
    pub integral: RadialIntegral,
}

impl FormalVolume {
    /// Coefficient of `e^{2r}`.
    pub fn leading(&self) -> SymbolicPoly {
        self.integral.divergent.coeff(-4).expect("known order")
    }

    /// Coefficient of `e^{r}`.
    pub fn v1(&self) -> SymbolicPoly {
        self.integral.divergent.coeff(-2).expect("known order")
    }

    pub fn linear(&self) -> &SymbolicPoly {
        &self.integral.linear
    }
}

pub fn formal_volume(trunc: i32) -> Result<FormalVolume, ExpansionError> {
    let density = bulk_volume_density(&build_kahler_form(trunc)?);
    let integral = integrate_radially(&density)?;
    Ok(FormalVolume { density, integral })
}

#[cfg(test)]
mod tests;
