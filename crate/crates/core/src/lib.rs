//! Exact and numeric engine for the formal Kahler-Einstein expansion near
//! infinity of asymptotically complex hyperbolic Einstein 4-manifolds: the
//! boundary Gauss-Bonnet-Chern terms, renormalized volume, and the
//! conformal behaviour of the pseudo-hermitian invariants at infinity.

pub mod conformal_change;
pub mod exact_algebra;
pub mod formal_expansion;
pub mod gbc_engine;
pub mod jet;
pub mod parallel;
pub mod report;
pub mod tw_calculus;
pub mod volume_renorm;
