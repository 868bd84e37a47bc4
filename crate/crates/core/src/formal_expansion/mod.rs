//! Formal series of the Kahler-Einstein metric near infinity, written in the
//! adapted frame `(d_r, e^{-r} xi, e^{-r/2} h, e^{-r/2} J0 h)` with `h` the
//! unit eigenvector of `J0 tau` for the eigenvalue `+t`.
//!
//! All series are in `eps = e^{-r/2}`; the built-in expansions are known to
//! order 4, i.e. `o(e^{-2r})`.

mod checks;
#[cfg(test)]
mod tests;

pub use checks::expansion_report;

use crate::exact_algebra::*;
use serde::Serialize;
use Symbol::*;

pub type ScalarSeries = AsymptoticSeries<SymbolicPoly>;
pub type MetricSeries = AsymptoticSeries<FrameTensor>;
pub type TangentSeries = AsymptoticSeries<PolyMatrix<3>>;

/// Highest order known for the formal objects.
pub const MAX_ORDER: i32 = 4;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExpansionError {
    #[error("truncation order {0} outside 0..={MAX_ORDER} (units of exp(-r/2))")]
    Order(i32),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("shape operator at order {order}: {detail}")]
    Shape { order: i32, detail: String },
}

pub struct AdaptedFrame;

impl AdaptedFrame {
    pub const LABELS: [&'static str; 4] = ["\\partial_r", "e^{-r}\\xi", "e^{-r/2}h", "e^{-r/2}J_0h"];
    pub const COFRAME: [&'static str; 4] = ["dr", "e^{r}\\eta", "e^{r/2}h^*", "e^{r/2}(J_0h)^*"];
    /// Twice the growth rate of each frame vector's dual: a frame component
    /// `g_ij` of a tensor with coefficient `e^{(w_i + w_j) r}` has `2w`
    /// entries `(0, 2, 1, 1)`.
    pub const TWICE_WEIGHT: [i64; 4] = [0, 2, 1, 1];
}

fn v(s: Symbol) -> SymbolicPoly {
    sym(s)
}

/// `sum c_k p_k` with rational `c_k = n/d`.
pub fn lin(terms: &[(i64, i64, SymbolicPoly)]) -> SymbolicPoly {
    let mut out = SymbolicPoly::zero();
    for (n, d, p) in terms {
        out += &p.scale(&q(*n, *d));
    }
    out
}

/// `R^2/8 - |tau|^2`.
pub fn q_inv() -> SymbolicPoly {
    lin(&[(1, 8, v(R).pow(2)), (-1, 1, v(TauSq))])
}

/// Definition of the `Id_xi` part of the order-2 shape operator.
pub fn a_def() -> SymbolicPoly {
    q_inv()
}

/// Definition of the `Id_H` part of the order-2 shape operator.
pub fn b_def() -> SymbolicPoly {
    lin(&[(1, 16, v(R).pow(2)), (5, 2, v(TauSq))])
}

/// Replaces the shorthands `A`, `B` by their definitions.
pub fn expand_ab(p: &SymbolicPoly) -> SymbolicPoly {
    p.substitute(A, &a_def()).substitute(B, &b_def())
}

/// `R^2/16 - 5/2 |tau|^2`, the local invariant entering the corrected volume.
pub fn t_density() -> SymbolicPoly {
    lin(&[(1, 16, v(R).pow(2)), (-5, 2, v(TauSq))])
}

fn check_order(trunc: i32) -> Result<(), ExpansionError> {
    if (0..=MAX_ORDER).contains(&trunc) {
        Ok(())
    } else {
        Err(ExpansionError::Order(trunc))
    }
}

fn series<C: Coefficient>(lead: i32, trunc: i32, items: Vec<(i32, C)>) -> AsymptoticSeries<C> {
    AsymptoticSeries::from_coeffs(lead, Some(MAX_ORDER + lead), items)
        .expect("built-in orders are in range")
        .truncate(trunc + lead)
}

fn j0() -> FrameTensor {
    let mut m = FrameTensor::zero();
    m.set_anti(1, 0, SymbolicPoly::one());
    m.set_anti(3, 2, SymbolicPoly::one());
    m
}

/// `J0` on `H` only (zero on `span(d_r, xi)`).
fn j0_h() -> FrameTensor {
    let mut m = FrameTensor::zero();
    m.set_anti(3, 2, SymbolicPoly::one());
    m
}

/// Torsion as an endomorphism of `H`: `tau = [[0, -t], [-t, 0]]`, so that
/// `J0 tau h = t h`.
fn tau_endo() -> FrameTensor {
    let mut m = FrameTensor::zero();
    m.set_sym(2, 3, -v(T));
    m
}

/// `nabla_xi tau` restricted to the eigenbasis: `diag(m, -m)` on `H`.
fn nabla_xi_tau_endo() -> FrameTensor {
    let mut m = FrameTensor::zero();
    m.set(2, 2, v(NablaXiTau));
    m.set(3, 3, -v(NablaXiTau));
    m
}

/// `phi = -t eps^2 + 1/2 nabla_xi tau eps^4` (eigenvalue on `h`), and the
/// complex structure `J = (I + Phi) J0 (I + Phi)^{-1}` with
/// `Phi = diag(0, 0, phi, -phi)`.
pub fn build_phi_j(trunc: i32) -> Result<(ScalarSeries, MetricSeries), ExpansionError> {
    check_order(trunc)?;
    let phi = series(0, trunc, vec![(2, -v(T)), (4, v(NablaXiTau).scale(&q(1, 2)))]);
    let big_phi = phi.map(|p| FrameTensor::diag([SymbolicPoly::zero(), SymbolicPoly::zero(), p.clone(), -p]));
    let one_plus = AsymptoticSeries::one().add(&big_phi);
    let inv = one_plus.inv()?;
    let j = one_plus.mul(&AsymptoticSeries::monomial(0, j0())).mul(&inv);
    Ok((phi, j))
}

/// `J = J0 - 2 eps^2 tau + eps^4 (2|tau|^2 J0 - J0 nabla_xi tau)`, the
/// order-2 terms acting on `H`.
pub fn transcribed_j(trunc: i32) -> Result<MetricSeries, ExpansionError> {
    check_order(trunc)?;
    let j2 = tau_endo().map(|x| x.scale(&qi(-2)));
    let j4 = j0_h().map(|x| &x.scale(&qi(2)) * &v(TauSq)).plus(&j0().mat_mul(&nabla_xi_tau_endo()).negate());
    Ok(series(0, trunc, vec![(0, j0()), (2, j2), (4, j4)]))
}

/// Literal order-2 term `2|tau|^2 - J0 nabla_xi tau` (scalar, not `J0`).
pub fn literal_printed_j(trunc: i32) -> Result<MetricSeries, ExpansionError> {
    check_order(trunc)?;
    let j2 = tau_endo().map(|x| x.scale(&qi(-2)));
    let mut id_h = FrameTensor::zero();
    id_h.set(2, 2, SymbolicPoly::one());
    id_h.set(3, 3, SymbolicPoly::one());
    let j4 = id_h
        .map(|x| &x.scale(&qi(2)) * &v(TauSq))
        .plus(&j0().mat_mul(&nabla_xi_tau_endo()).negate());
    Ok(series(0, trunc, vec![(0, j0()), (2, j2), (4, j4)]))
}

fn radial_block_4() -> SymbolicPoly {
    // -(2/3)(Q - lap R / 6 + 2/3 I)
    lin(&[(-2, 3, q_inv()), (1, 9, v(LapR)), (-4, 9, v(ITau3))])
}

fn h_block_4_common() -> SymbolicPoly {
    // (2/3)(Q + lap R / 12 - I/3)
    lin(&[(2, 3, q_inv()), (1, 18, v(LapR)), (-2, 9, v(ITau3))])
}

fn set_rem32(m: &mut FrameTensor, anti: bool) {
    for (i, j) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        if anti {
            m.set_anti(i, j, v(Rem32));
        } else {
            m.set_sym(i, j, v(Rem32));
        }
    }
}

/// Frame components of the formal metric.
///
/// Slots: `dr^2` and `e^{2r} eta^2` are (0,0) and (1,1); `e^r gamma` and the
/// `gamma(J0 tau, .)` and `nabla_xi tau` terms are the diagonal (2,2), (3,3);
/// the mixed order-3/2 terms sit in (0,2), (0,3), (1,2), (1,3) as the opaque
/// marker `rem32`.
pub fn build_metric(trunc: i32) -> Result<MetricSeries, ExpansionError> {
    check_order(trunc)?;
    let g2 = FrameTensor::diag([
        SymbolicPoly::zero(),
        SymbolicPoly::zero(),
        lin(&[(-1, 2, v(R)), (2, 1, v(T))]),
        lin(&[(-1, 2, v(R)), (-2, 1, v(T))]),
    ]);
    let mut g3 = FrameTensor::zero();
    set_rem32(&mut g3, false);
    let rt = &v(R) * &v(T);
    let g4 = FrameTensor::diag([
        radial_block_4(),
        radial_block_4(),
        &(&h_block_4_common() - &rt) - &v(NablaXiTau),
        &(&h_block_4_common() + &rt) + &v(NablaXiTau),
    ]);
    Ok(series(0, trunc, vec![(0, FrameTensor::identity()), (2, g2), (3, g3), (4, g4)]))
}

/// Frame components `omega_ij = omega(e_i, e_j)` of the Kahler form.
pub fn build_kahler_form(trunc: i32) -> Result<MetricSeries, ExpansionError> {
    check_order(trunc)?;
    let mut w0 = FrameTensor::zero();
    w0.set_anti(0, 1, SymbolicPoly::one());
    w0.set_anti(2, 3, SymbolicPoly::one());
    let mut w2 = FrameTensor::zero();
    w2.set_anti(2, 3, lin(&[(-1, 2, v(R))]));
    let mut w3 = FrameTensor::zero();
    set_rem32(&mut w3, true);
    let mut w4 = FrameTensor::zero();
    w4.set_anti(0, 1, radial_block_4());
    w4.set_anti(2, 3, &h_block_4_common() + &lin(&[(-1, 2, v(LapR))]));
    Ok(series(0, trunc, vec![(0, w0), (2, w2), (3, w3), (4, w4)]))
}

/// `d_r` applied to the tensor whose frame components are `g`.
pub fn radial_derivative(g: &MetricSeries) -> MetricSeries {
    let w = AdaptedFrame::TWICE_WEIGHT;
    let mut out = MetricSeries::zero(g.lead(), g.trunc());
    for (k, m) in g.iter() {
        let d = FrameTensor::from_fn(|i, j| m.get(i, j).scale(&q(w[i] + w[j] - k as i64, 2)));
        out.insert(k, d).expect("orders preserved");
    }
    out
}

fn entry(s: &MetricSeries, i: usize, j: usize) -> ScalarSeries {
    s.map(|m| m.get(i, j).clone())
}

fn pfaffian(w: &MetricSeries) -> ScalarSeries {
    let p = |a, b, c, d| entry(w, a, b).mul(&entry(w, c, d));
    p(0, 1, 2, 3).sub(&p(0, 2, 1, 3)).add(&p(0, 3, 1, 2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Normal {
    /// `dr(nu)`.
    pub radial: ScalarSeries,
    /// Frame components 1..3 of the tangential part `nu^T`.
    pub tangential: [ScalarSeries; 3],
}

/// Unit normal `nu = grad r / |grad r|` from the inverse metric series.
pub fn build_normal(g: &MetricSeries) -> Result<Normal, ExpansionError> {
    let ginv = g.inv()?;
    let g00 = entry(&ginv, 0, 0);
    let radial = g00.sqrt()?;
    let inv_norm = g00.inv_sqrt()?;
    let tangential = std::array::from_fn(|k| entry(&ginv, 0, k + 1).mul(&inv_norm));
    Ok(Normal { radial, tangential })
}

/// `g(nu, nu)` as a series.
pub fn normal_norm(g: &MetricSeries, nu: &Normal) -> ScalarSeries {
    let comp = |i: usize| if i == 0 { nu.radial.clone() } else { nu.tangential[i - 1].clone() };
    let mut out = ScalarSeries::zero(0, g.trunc());
    for i in 0..4 {
        for j in 0..4 {
            out = out.add(&comp(i).mul(&comp(j)).mul(&entry(g, i, j)));
        }
    }
    out
}

/// `1/2 omega^2 (nu, ...)` on `S(r)`, as a multiple of `eta ^ d eta`:
/// `eps^{-4} dr(nu) Pf(omega)`; the tangential part of `nu` restricts to 0.
pub fn build_sphere_volume_form(omega: &MetricSeries, nu: &Normal) -> ScalarSeries {
    pfaffian(omega).mul(&nu.radial).shift(-4)
}

/// Bulk volume density `1/2 omega^2 = eps^{-4} Pf(omega) dr ^ eta ^ d eta`.
pub fn bulk_volume_density(omega: &MetricSeries) -> ScalarSeries {
    pfaffian(omega).shift(-4)
}

/// Induced volume of `S(r)` from the metric alone, `eps^{-4} sqrt(det g_T)`.
pub fn determinant_sphere_volume(g: &MetricSeries) -> Result<ScalarSeries, ExpansionError> {
    let t = |i: usize, j: usize| entry(g, i, j);
    let minor = |a: usize, b: usize, c: usize, d: usize| t(a, c).mul(&t(b, d)).sub(&t(a, d).mul(&t(b, c)));
    let det = t(1, 1)
        .mul(&minor(2, 3, 2, 3))
        .sub(&t(1, 2).mul(&minor(2, 3, 1, 3)))
        .add(&t(1, 3).mul(&minor(2, 3, 1, 2)));
    Ok(det.sqrt()?.shift(-4))
}

/// Second fundamental form `1/2 dr(nu) (d_r g)` on the tangential frame.
pub fn second_fundamental_form(g: &MetricSeries, nu: &Normal) -> TangentSeries {
    let dg = radial_derivative(g).map(|m| m.block::<3>(1));
    dg.mul(&nu.radial.map(|p| PolyMatrix::<3>::identity().map(|x| x * p))).scale(&q(1, 2))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeSeries {
    /// Full tangential matrix `g_T^{-1} II`.
    pub full: TangentSeries,
    /// Its diagonal, with all symbols explicit.
    pub diag: AsymptoticSeries<DiagEndo>,
    /// Diagonal with the order-2 parts written through `A`, `B`, the
    /// `nabla_xi tau` marker and the `O` marker for `nu^T` contributions.
    pub exposed: AsymptoticSeries<DiagEndo>,
    /// Off-diagonal entries `(order, i, j, value)`; all carry `rem32`.
    pub tagged: Vec<(i32, usize, usize, SymbolicPoly)>,
}

pub(crate) fn only_tagged(p: &SymbolicPoly) -> bool {
    p.terms().all(|(m, _)| m.contains(Rem32))
}

/// Shape operator `g_T^{-1} II`, diagonalized in the adapted frame.
pub fn build_shape_operator(g: &MetricSeries, nu: &Normal) -> Result<ShapeSeries, ExpansionError> {
    let gt = g.map(|m| m.block::<3>(1));
    let full = gt.inv()?.mul(&second_fundamental_form(g, nu));
    let mut tagged = Vec::new();
    for (k, m) in full.iter() {
        for (i, j, x) in m.entries() {
            if i != j && !x.is_zero() {
                if !only_tagged(x) {
                    return Err(ExpansionError::Shape { order: k, detail: format!("untagged off-diagonal entry ({i},{j}) = {x}") });
                }
                tagged.push((k, i, j, x.clone()));
            }
        }
    }
    let diag = full.map(|m| DiagEndo(std::array::from_fn(|k| m.get(k, k).clone())));
    let exposed = expose(&diag)?;
    Ok(ShapeSeries { full, diag, exposed, tagged })
}

/// Order-2 shape operator in `A`/`B` form, `(A, B + m, B - m)` with `m` the
/// `nabla_xi tau` marker.
pub fn order2_template(with_marker: bool) -> DiagEndo {
    let o = if with_marker { v(Ocal) } else { SymbolicPoly::zero() };
    DiagEndo::new(
        &v(A) + &o,
        &(&v(B) + &v(NablaXiTau)) + &o,
        &(&v(B) - &v(NablaXiTau)) + &o,
    )
}

fn expose(diag: &AsymptoticSeries<DiagEndo>) -> Result<AsymptoticSeries<DiagEndo>, ExpansionError> {
    let Ok(d2) = diag.coeff(4) else {
        return Ok(diag.clone());
    };
    let defs = [a_def(), b_def(), b_def()];
    let templ = order2_template(true);
    let plain = order2_template(false);
    let mut exposed = templ.clone();
    for k in 0..3 {
        let value = plain.get(k).substitute(A, &defs[0]).substitute(B, &defs[1]);
        let residual = d2.get(k) - &value;
        if !canonical(&residual).is_zero() {
            return Err(ExpansionError::Shape { order: 4, detail: format!("eigenvalue {k} differs from its A/B form by {residual}") });
        }
        exposed.0[k] = templ.get(k) + &residual.normalize_tau();
    }
    let mut out = AsymptoticSeries::zero(diag.lead(), diag.trunc());
    for (k, c) in diag.iter() {
        out.insert(k, if k == 4 { exposed.clone() } else { c.clone() })?;
    }
    if diag.iter().all(|(k, _)| k != 4) {
        out.insert(4, exposed)?;
    }
    Ok(out)
}

/// Which source an expansion path follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    /// recomputed from the metric and Kahler form
    Derived,
    /// read off the displayed normal, volume form and shape operator
    Transcribed,
}

impl Path {
    pub fn name(self) -> &'static str {
        match self {
            Path::Derived => "derived",
            Path::Transcribed => "transcribed",
        }
    }
}

/// The two inputs of the boundary term: `varpi` and the exposed shape
/// operator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryData {
    pub path: Path,
    pub normal_radial: ScalarSeries,
    pub sphere_volume: ScalarSeries,
    pub shape: AsymptoticSeries<DiagEndo>,
}

/// Everything built on the derived path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormalExpansion {
    pub trunc: i32,
    pub phi: ScalarSeries,
    pub j: MetricSeries,
    pub omega: MetricSeries,
    pub metric: MetricSeries,
    pub normal: Normal,
    pub sphere_volume: ScalarSeries,
    pub second_fundamental: TangentSeries,
    pub shape: ShapeSeries,
}

impl FormalExpansion {
    pub fn build(trunc: i32) -> Result<Self, ExpansionError> {
        let (phi, j) = build_phi_j(trunc)?;
        let omega = build_kahler_form(trunc)?;
        let metric = build_metric(trunc)?;
        let normal = build_normal(&metric)?;
        let sphere_volume = build_sphere_volume_form(&omega, &normal);
        let second_fundamental = second_fundamental_form(&metric, &normal);
        let shape = build_shape_operator(&metric, &normal)?;
        Ok(FormalExpansion { trunc, phi, j, omega, metric, normal, sphere_volume, second_fundamental, shape })
    }

    pub fn boundary_data(&self) -> BoundaryData {
        BoundaryData {
            path: Path::Derived,
            normal_radial: self.normal.radial.clone(),
            sphere_volume: self.sphere_volume.clone(),
            shape: self.shape.exposed.clone(),
        }
    }

    /// Named LaTeX renderings of every series.
    pub fn latex(&self) -> Vec<(String, String)> {
        vec![
            ("\\varphi".into(), self.phi.to_latex()),
            ("J".into(), self.j.to_latex()),
            ("\\omega".into(), self.omega.to_latex()),
            ("\\bar g".into(), self.metric.to_latex()),
            ("dr(\\nu)".into(), self.normal.radial.to_latex()),
            ("\\varpi".into(), self.sphere_volume.to_latex()),
            ("\\mathrm{II}".into(), self.second_fundamental.to_latex()),
            ("\\mathbb{I}".into(), self.shape.exposed.to_latex()),
        ]
    }
}

/// Radial factor of the displayed unit normal: `1 + 1/3 (Q + O) eps^4`.
pub fn transcribed_normal(trunc: i32) -> Result<ScalarSeries, ExpansionError> {
    check_order(trunc)?;
    let n4 = lin(&[(1, 3, q_inv()), (1, 3, v(Ocal))]);
    Ok(series(0, trunc, vec![(0, SymbolicPoly::one()), (4, n4)]))
}

/// Displayed `varpi = e^{2r}(1 - R/2 e^{-r} + 1/3 e^{-2r}(Q + O))`.
pub fn transcribed_sphere_volume(trunc: i32) -> Result<ScalarSeries, ExpansionError> {
    check_order(trunc)?;
    let w4 = lin(&[(1, 3, q_inv()), (1, 3, v(Ocal))]);
    Ok(series(-4, trunc, vec![(-4, SymbolicPoly::one()), (-2, lin(&[(-1, 2, v(R))])), (0, w4)]))
}

/// Displayed second fundamental form in tangential frame components:
/// `e^{2r} eta^2 + 1/2 e^r gamma + R/2 e^{-r} gamma(J0 tau) + 1/2 e^{-r}
/// gamma(nabla_xi tau) + 1/3 Q eta^2 - 1/6 Q e^{-r} gamma`, all mod `O`.
pub fn transcribed_second_fundamental_form(trunc: i32) -> Result<TangentSeries, ExpansionError> {
    check_order(trunc)?;
    let o = v(Ocal);
    let rt = &v(R) * &v(T);
    let half_m = v(NablaXiTau).scale(&q(1, 2));
    let common = &lin(&[(-1, 6, q_inv())]) + &o;
    let ii0 = PolyMatrix::<3>::diag([SymbolicPoly::one(), SymbolicPoly::rat(1, 2), SymbolicPoly::rat(1, 2)]);
    let ii4 = PolyMatrix::<3>::diag([
        &lin(&[(1, 3, q_inv())]) + &o,
        &(&common + &rt.scale(&q(1, 2))) + &half_m,
        &(&common - &rt.scale(&q(1, 2))) - &half_m,
    ]);
    Ok(series(0, trunc, vec![(0, ii0), (4, ii4)]))
}

/// Displayed shape operator `I0 + e^{-r} I1 + e^{-2r} I2` (the order-3/2
/// part is off-diagonal and carried by the marker only).
pub fn transcribed_shape(trunc: i32) -> Result<AsymptoticSeries<DiagEndo>, ExpansionError> {
    check_order(trunc)?;
    let i0 = DiagEndo::rational([(1, 1), (1, 2), (1, 2)]);
    let i1 = DiagEndo::new(SymbolicPoly::zero(), lin(&[(1, 4, v(R)), (-1, 1, v(T))]), lin(&[(1, 4, v(R)), (1, 1, v(T))]));
    Ok(series(0, trunc, vec![(0, i0), (2, i1), (4, order2_template(true))]))
}

pub fn transcribed_boundary_data(trunc: i32) -> Result<BoundaryData, ExpansionError> {
    Ok(BoundaryData {
        path: Path::Transcribed,
        normal_radial: transcribed_normal(trunc)?,
        sphere_volume: transcribed_sphere_volume(trunc)?,
        shape: transcribed_shape(trunc)?,
    })
}

/// `t -> -t`, `nabla_xi tau -> -nabla_xi tau`: the effect of choosing
/// `J0 h` instead of `h`.
pub fn mirror_poly(p: &SymbolicPoly) -> SymbolicPoly {
    p.substitute(T, &-v(T)).substitute(NablaXiTau, &-v(NablaXiTau))
}

/// Mirror composed with swapping frame labels 2 and 3 (symmetric tensors).
pub fn mirror_frame<const N: usize>(m: &PolyMatrix<N>, first_h: usize) -> PolyMatrix<N> {
    let sw = |i: usize| {
        if i == first_h {
            first_h + 1
        } else if i == first_h + 1 {
            first_h
        } else {
            i
        }
    };
    PolyMatrix::from_fn(|i, j| mirror_poly(m.get(sw(i), sw(j))))
}

pub fn mirror_diag(d: &DiagEndo) -> DiagEndo {
    DiagEndo::new(mirror_poly(d.get(0)), mirror_poly(d.get(2)), mirror_poly(d.get(1)))
}

/// Rotation `h -> J0 h, J0 h -> -h` for tensors involving `J0`, with the
/// opaque order-3/2 marker removed.
pub fn rotate_frame(m: &FrameTensor) -> FrameTensor {
    // new basis e2' = e3, e3' = -e2
    let basis = |i: usize| -> (usize, i64) {
        match i {
            2 => (3, 1),
            3 => (2, -1),
            k => (k, 1),
        }
    };
    let strip = m.map(|x| x.substitute(Rem32, &SymbolicPoly::zero()));
    FrameTensor::from_fn(|i, j| {
        let (a, sa) = basis(i);
        let (b, sb) = basis(j);
        mirror_poly(strip.get(a, b)).scale(&qi(sa * sb))
    })
}
