//! Tanaka-Webster calculus on closed pseudo-hermitian 3-manifolds.
//!
//! Conventions: `d eta = i theta ^ thetabar`,
//! `d theta = -omega ^ theta + tau eta ^ thetabar` with
//! `omega + conj(omega) = 0`, and `R` is the `theta ^ thetabar` component
//! of `d omega`. Tensor components carry frame indices; a comma separates
//! covariant derivatives.

pub mod fields;
pub mod manifolds;

use crate::jet::{inverse3, Jet, JetSpace, C64};
use crate::parallel::{map_nodes, ordered_sum};
use crate::report::{Check, Source, VerificationReport};
use fields::Field;
use serde::{Deserialize, Serialize};
use std::num::NonZeroUsize;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TwError {
    #[error("degenerate coframe at {point:?}: |eta ^ d eta| = {volume:e}")]
    Degenerate { point: [f64; 3], volume: f64 },
    #[error("jet order {have} too low, {need} needed")]
    OrderTooLow { have: usize, need: usize },
    #[error("{nodes} nodes but {weights} weights")]
    NodeWeightMismatch { nodes: usize, weights: usize },
    #[error("conformal factor not positive at {point:?}: {value}")]
    NonPositiveFactor { point: [f64; 3], value: f64 },
}

/// Coordinate components of `eta` and `theta^1` as jets at a point.
#[derive(Clone, Debug)]
pub struct Coframe<'s> {
    pub eta: [Jet<'s>; 3],
    pub theta: [Jet<'s>; 3],
}

/// Quadrature nodes in chart coordinates and coordinate weights; the
/// `eta ^ d eta` density is supplied by the coframe.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Quadrature {
    pub nodes: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

/// A closed 3-manifold with a pseudo-hermitian structure given by jets of
/// its coframe on a single chart.
pub trait ContactManifold: Send + Sync {
    fn name(&self) -> String;
    fn coframe<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Coframe<'s>;
    /// Ambient coordinates, the variables of test fields.
    fn ambient<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Vec<Jet<'s>>;
    fn quadrature(&self, res: usize) -> Quadrature;
    fn sample_points(&self, n: usize, seed: u64) -> Vec<[f64; 3]>;
    /// Jet orders consumed before the coframe is available.
    fn depth(&self) -> usize {
        0
    }
}

pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let rule = gauss_quad::legendre::GaussLegendre::new(NonZeroUsize::new(n.max(1)).expect("n >= 1"));
    let mut pairs: Vec<(f64, f64)> = rule.as_node_weight_pairs().to_vec();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Dual frame `(Z_1, Z_1bar, T)` in coordinate components.
#[derive(Clone, Debug)]
pub struct Frame<'s> {
    pub z1: [Jet<'s>; 3],
    pub z1b: [Jet<'s>; 3],
    pub t: [Jet<'s>; 3],
}

pub fn inverse_frame<'s>(cf: &Coframe<'s>) -> Frame<'s> {
    let thb: [Jet<'s>; 3] = std::array::from_fn(|i| cf.theta[i].conj());
    let m = [cf.theta.clone(), thb, cf.eta.clone()];
    let e = inverse3(&m);
    Frame {
        z1: std::array::from_fn(|i| e[i][0].clone()),
        z1b: std::array::from_fn(|i| e[i][1].clone()),
        t: std::array::from_fn(|i| e[i][2].clone()),
    }
}

/// Directional derivative `X u`.
pub fn apply<'s>(x: &[Jet<'s>; 3], u: &Jet<'s>) -> Jet<'s> {
    &(&(&x[0] * &u.d(0)) + &(&x[1] * &u.d(1))) + &(&x[2] * &u.d(2))
}

/// Exterior derivative of a 1-form; components `(01, 02, 12)`.
pub fn d1<'s>(a: &[Jet<'s>; 3]) -> [Jet<'s>; 3] {
    [&a[1].d(0) - &a[0].d(1), &a[2].d(0) - &a[0].d(2), &a[2].d(1) - &a[1].d(2)]
}

/// A 2-form with components `(01, 02, 12)` evaluated on `(X, Y)`.
pub fn eval2<'s>(m: &[Jet<'s>; 3], x: &[Jet<'s>; 3], y: &[Jet<'s>; 3]) -> Jet<'s> {
    let pair = |i: usize, j: usize| &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
    &(&(&m[0] * &pair(0, 1)) + &(&m[1] * &pair(0, 2))) + &(&m[2] * &pair(1, 2))
}

/// `(a ^ b)` for 1-forms, components `(01, 02, 12)`.
pub fn wedge11<'s>(a: &[Jet<'s>; 3], b: &[Jet<'s>; 3]) -> [Jet<'s>; 3] {
    let w = |i: usize, j: usize| &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
    [w(0, 1), w(0, 2), w(1, 2)]
}

/// `(m ^ a)_{012}` for a 2-form `m` and 1-form `a`.
pub fn wedge21<'s>(m: &[Jet<'s>; 3], a: &[Jet<'s>; 3]) -> Jet<'s> {
    &(&(&m[0] * &a[2]) - &(&m[1] * &a[1])) + &(&m[2] * &a[0])
}

/// Connection, torsion and curvature as jets at one point, with the
/// covariant-derivative operators built on them.
#[derive(Clone, Debug)]
pub struct TwJets<'s> {
    pub cf: Coframe<'s>,
    pub frame: Frame<'s>,
    /// `omega_1^1 = w1 theta + w2 thetabar + w0 eta`
    pub w1: Jet<'s>,
    pub w2: Jet<'s>,
    pub w0: Jet<'s>,
    pub tau: Jet<'s>,
    pub r: Jet<'s>,
    /// `(eta ^ d eta)(d_0, d_1, d_2)`
    pub volume: f64,
}

impl<'s> TwJets<'s> {
    pub fn solve(cf: Coframe<'s>, point: [f64; 3]) -> Result<Self, TwError> {
        let have = cf.eta.iter().chain(&cf.theta).map(|j| j.ord()).min().unwrap_or(0);
        if have < 2 {
            return Err(TwError::OrderTooLow { have, need: 2 });
        }
        let a = cf.theta.clone().map(|j| j.re());
        let b = cf.theta.clone().map(|j| j.im());
        let det = |r: [C64; 3], s: [C64; 3], t: [C64; 3]| {
            r[0] * (s[1] * t[2] - s[2] * t[1]) - r[1] * (s[0] * t[2] - s[2] * t[0]) + r[2] * (s[0] * t[1] - s[1] * t[0])
        };
        let volume = 2.0
            * det(cf.eta.clone().map(|j| j.value()), a.map(|j| j.value()), b.map(|j| j.value())).re;
        if !(volume.abs() > 1e-12) {
            return Err(TwError::Degenerate { point, volume });
        }
        let frame = inverse_frame(&cf);
        let dth = d1(&cf.theta);
        let w2 = eval2(&dth, &frame.z1, &frame.z1b);
        let w0 = -eval2(&dth, &frame.t, &frame.z1);
        let tau = eval2(&dth, &frame.t, &frame.z1b);
        let w1 = -w2.conj();
        let omega: [Jet<'s>; 3] = std::array::from_fn(|k| {
            &(&(&w1 * &cf.theta[k]) + &(&w2 * &cf.theta[k].conj())) + &(&w0 * &cf.eta[k])
        });
        let r = eval2(&d1(&omega), &frame.z1, &frame.z1b);
        Ok(TwJets { cf, frame, w1, w2, w0, tau, r, volume })
    }

    pub fn z1(&self, u: &Jet<'s>) -> Jet<'s> {
        apply(&self.frame.z1, u)
    }

    pub fn z1b(&self, u: &Jet<'s>) -> Jet<'s> {
        apply(&self.frame.z1b, u)
    }

    /// `u_{,0} = T u`
    pub fn u_0(&self, u: &Jet<'s>) -> Jet<'s> {
        apply(&self.frame.t, u)
    }

    /// `u_{,1 1bar}` for a function `u`.
    pub fn u_11b(&self, u: &Jet<'s>) -> Jet<'s> {
        let u1 = self.z1(u);
        &self.z1b(&u1) - &(&self.w2 * &u1)
    }

    pub fn u_1b1(&self, u: &Jet<'s>) -> Jet<'s> {
        let u1b = self.z1b(u);
        &self.z1(&u1b) - &(&self.w2.conj() * &u1b)
    }

    pub fn u_11(&self, u: &Jet<'s>) -> Jet<'s> {
        let u1 = self.z1(u);
        &self.z1(&u1) - &(&self.w1 * &u1)
    }

    pub fn u_1b1b(&self, u: &Jet<'s>) -> Jet<'s> {
        let u1b = self.z1b(u);
        &self.z1b(&u1b) + &(&self.w2 * &u1b)
    }

    /// Sub-Laplacian `u_{,1 1bar} + u_{,1bar 1}`.
    pub fn laplacian(&self, u: &Jet<'s>) -> Jet<'s> {
        &self.u_11b(u) + &self.u_1b1(u)
    }

    /// `a_{1,1bar}` for the (1,0)-form `a theta^1`.
    pub fn form_1b(&self, a: &Jet<'s>) -> Jet<'s> {
        &self.z1b(a) - &(&self.w2 * a)
    }

    /// `tau^1_{1bar,1}`
    pub fn tau_1(&self) -> Jet<'s> {
        &self.z1(&self.tau) + &(&self.w1 * &self.tau).scale_re(2.0)
    }

    /// `tau^1_{1bar,11}`
    pub fn tau_11(&self) -> Jet<'s> {
        let t1 = self.tau_1();
        &self.z1(&t1) + &(&self.w1 * &t1)
    }

    /// The real combination `i(tau^1_{1bar,11} - conj)`.
    pub fn i_tau3(&self) -> Jet<'s> {
        let t = self.tau_11();
        (&t - &t.conj()).scale(I)
    }

    pub fn lap_r(&self) -> Jet<'s> {
        self.laplacian(&self.r)
    }

    /// Max deviation of `d eta - i theta ^ thetabar` at the point.
    pub fn contact_defect(&self) -> f64 {
        let de = d1(&self.cf.eta);
        let tt = wedge11(&self.cf.theta, &self.cf.theta.clone().map(|j| j.conj()));
        (0..3).map(|k| (de[k].value() - I * tt[k].value()).norm()).fold(0.0, f64::max)
    }
}

/// Jets of a structure at a point with `need` orders left after the
/// coframe construction.
pub fn jets_at<'s>(
    m: &dyn ContactManifold,
    sp: &'s JetSpace,
    need: usize,
    p: [f64; 3],
) -> Result<TwJets<'s>, TwError> {
    if sp.order() < need + m.depth() {
        return Err(TwError::OrderTooLow { have: sp.order(), need: need + m.depth() });
    }
    TwJets::solve(m.coframe(sp, need, p), p)
}

/// Per-node Tanaka-Webster data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeData {
    pub point: [f64; 3],
    /// quadrature weight times `|eta ^ d eta|` density
    pub weight: f64,
    pub omega: [C64; 3],
    pub tau: C64,
    pub r: f64,
    /// imaginary part of the extracted curvature, should vanish
    pub r_imag: f64,
    pub lap_r: f64,
    pub i_tau3: f64,
    pub contact_defect: f64,
}

impl NodeData {
    pub fn tau_sq(&self) -> f64 {
        self.tau.norm_sqr()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TwData {
    pub manifold: String,
    pub nodes: Vec<NodeData>,
}

impl TwData {
    pub fn integrate(&self, f: impl Fn(&NodeData) -> f64) -> f64 {
        ordered_sum(self.nodes.iter().map(|n| n.weight * f(n)))
    }

    pub fn total_measure(&self) -> f64 {
        self.integrate(|_| 1.0)
    }

    /// Relative spread of `R` over the nodes.
    pub fn r_spread(&self) -> f64 {
        spread(self.nodes.iter().map(|n| n.r))
    }

    pub fn tau_abs_spread(&self) -> f64 {
        spread(self.nodes.iter().map(|n| n.tau.norm()))
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("x0,x1,x2,weight,R,re_tau,im_tau,lap_R,i_tau3\n");
        for n in &self.nodes {
            s.push_str(&format!(
                "{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e},{:.17e}\n",
                n.point[0], n.point[1], n.point[2], n.weight, n.r, n.tau.re, n.tau.im, n.lap_r, n.i_tau3
            ));
        }
        s
    }
}

fn spread(v: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = v.clone().count() as f64;
    let mean = v.clone().sum::<f64>() / n;
    let var = v.map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    if mean == 0.0 {
        var.sqrt()
    } else {
        var.sqrt() / mean.abs()
    }
}

/// Solves the structure equations at every quadrature node.
pub fn solve_connection(m: &dyn ContactManifold, res: usize) -> Result<TwData, TwError> {
    let quad = m.quadrature(res);
    solve_on(m, &quad)
}

pub fn solve_on(m: &dyn ContactManifold, quad: &Quadrature) -> Result<TwData, TwError> {
    if quad.nodes.len() != quad.weights.len() {
        return Err(TwError::NodeWeightMismatch { nodes: quad.nodes.len(), weights: quad.weights.len() });
    }
    let sp = JetSpace::new(3, 4 + m.depth());
    let nodes = map_nodes(quad.nodes.len(), |k| {
        let p = quad.nodes[k];
        let j = jets_at(m, &sp, 4, p)?;
        Ok(NodeData {
            point: p,
            weight: quad.weights[k] * j.volume.abs(),
            omega: [j.w1.value(), j.w2.value(), j.w0.value()],
            tau: j.tau.value(),
            r: j.r.value().re,
            r_imag: j.r.value().im,
            lap_r: j.lap_r().value().re,
            i_tau3: j.i_tau3().value().re,
            contact_defect: j.contact_defect(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>, TwError>>()?;
    Ok(TwData { manifold: m.name(), nodes })
}

/// Covariant-derivative components of a scalar field at one point.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DerivComponents {
    pub u: C64,
    pub u_1: C64,
    pub u_1b: C64,
    pub u_0: C64,
    pub u_11b: Option<C64>,
    pub u_1b1: Option<C64>,
    pub u_11: Option<C64>,
    pub u_1b1b: Option<C64>,
}

/// Components `u_{,1}, u_{,1bar}, u_{,0}` and, for `order >= 2`, the second
/// covariant derivatives.
pub fn covariant_derivatives(
    m: &dyn ContactManifold,
    field: &dyn Field,
    p: [f64; 3],
    order: usize,
) -> Result<DerivComponents, TwError> {
    if order > 2 {
        return Err(TwError::OrderTooLow { have: 2, need: order });
    }
    let need = order.max(2);
    let sp = JetSpace::new(3, need + m.depth());
    let j = jets_at(m, &sp, need, p)?;
    let u = field.eval(&m.ambient(&sp, need, p));
    let two = order >= 2;
    Ok(DerivComponents {
        u: u.value(),
        u_1: j.z1(&u).value(),
        u_1b: j.z1b(&u).value(),
        u_0: j.u_0(&u).value(),
        u_11b: two.then(|| j.u_11b(&u).value()),
        u_1b1: two.then(|| j.u_1b1(&u).value()),
        u_11: two.then(|| j.u_11(&u).value()),
        u_1b1b: two.then(|| j.u_1b1b(&u).value()),
    })
}

/// Sub-Laplacian of `u` at each of the given points.
pub fn sublaplacian(m: &dyn ContactManifold, u: &dyn Field, points: &[[f64; 3]]) -> Result<Vec<C64>, TwError> {
    let sp = JetSpace::new(3, 2 + m.depth());
    map_nodes(points.len(), |k| {
        let j = jets_at(m, &sp, 2, points[k])?;
        let f = u.eval(&m.ambient(&sp, 2, points[k]));
        Ok(j.laplacian(&f).value())
    })
    .into_iter()
    .collect()
}

/// Values of a field at the quadrature nodes together with the measure.
pub fn sample_field(m: &dyn ContactManifold, res: usize, u: &dyn Field) -> Result<(Vec<f64>, Vec<C64>), TwError> {
    let quad = m.quadrature(res);
    let sp = JetSpace::new(3, m.depth().max(1));
    let out = map_nodes(quad.nodes.len(), |k| {
        let p = quad.nodes[k];
        let cf = m.coframe(&sp, 0, p);
        let a = cf.theta.clone().map(|j| j.re().value());
        let b = cf.theta.clone().map(|j| j.im().value());
        let e = cf.eta.clone().map(|j| j.value());
        let det = e[0] * (a[1] * b[2] - a[2] * b[1]) - e[1] * (a[0] * b[2] - a[2] * b[0]) + e[2] * (a[0] * b[1] - a[1] * b[0]);
        let f = u.eval(&m.ambient(&sp, 0, p)).value();
        (quad.weights[k] * 2.0 * det.re.abs(), f)
    });
    Ok(out.into_iter().unzip())
}

/// `sum_i w_i f(x_i)` against the `eta ^ d eta` measure.
pub fn integrate(weights: &[f64], values: &[f64]) -> Result<f64, TwError> {
    if weights.len() != values.len() {
        return Err(TwError::NodeWeightMismatch { nodes: values.len(), weights: weights.len() });
    }
    Ok(ordered_sum(weights.iter().zip(values).map(|(w, f)| w * f)))
}

/// The three Stokes integrals for a (1,0)-form `a theta^1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StokesIntegrals {
    /// `int a_{1,1bar} eta ^ theta ^ thetabar`
    pub covariant: C64,
    /// `int d alpha ^ eta`
    pub exterior: C64,
    /// `-int alpha ^ d eta`
    pub wedge: C64,
    /// `max |a|` over the nodes
    pub sup_norm: f64,
    /// max pointwise `|d alpha ^ eta + a_{1,1bar} eta ^ theta ^ thetabar|`
    /// relative to the volume form
    pub pointwise_defect: f64,
}

pub fn stokes_integrals(m: &dyn ContactManifold, res: usize, a: &dyn Field) -> Result<StokesIntegrals, TwError> {
    let quad = m.quadrature(res);
    let sp = JetSpace::new(3, 2 + m.depth());
    let per = map_nodes(quad.nodes.len(), |k| {
        let p = quad.nodes[k];
        let j = jets_at(m, &sp, 2, p)?;
        let a1 = a.eval(&m.ambient(&sp, 2, p));
        let alpha: [Jet; 3] = std::array::from_fn(|i| &a1 * &j.cf.theta[i]);
        let vol = j.volume;
        let w = quad.weights[k] * vol.abs();
        // eta ^ theta ^ thetabar = -i eta ^ d eta
        let cov = j.form_1b(&a1).value() * (-I);
        let ext = wedge21(&d1(&alpha), &j.cf.eta).value() / vol;
        let wed = -wedge21(&d1(&j.cf.eta), &alpha).value() / vol;
        Ok((w, cov, ext, wed, a1.value().norm()))
    })
    .into_iter()
    .collect::<Result<Vec<_>, TwError>>()?;
    let sum = |f: &dyn Fn(&(f64, C64, C64, C64, f64)) -> C64| {
        C64::new(
            ordered_sum(per.iter().map(|x| x.0 * f(x).re)),
            ordered_sum(per.iter().map(|x| x.0 * f(x).im)),
        )
    };
    Ok(StokesIntegrals {
        covariant: sum(&|x| x.1),
        exterior: sum(&|x| x.2),
        wedge: sum(&|x| x.3),
        sup_norm: per.iter().map(|x| x.4).fold(0.0, f64::max),
        pointwise_defect: per.iter().map(|x| (x.2 + x.1).norm()).fold(0.0, f64::max),
    })
}

/// Computes the three routes and reports whether they agree and vanish
/// within `tol * sup|a|`.
pub fn cr_stokes_check(m: &dyn ContactManifold, res: usize, a: &dyn Field, tol: f64) -> Result<VerificationReport, TwError> {
    let s = stokes_integrals(m, res, a)?;
    let bound = tol * s.sup_norm.max(f64::MIN_POSITIVE);
    let mut rep = VerificationReport::new(format!("CR Stokes on {}", m.name()));
    let routes = [("covariant", s.covariant), ("exterior", s.exterior), ("wedge", s.wedge)];
    for (name, v) in routes {
        rep.push(Check::numeric(
            &format!("stokes.{name}"),
            &format!("{name} route integral vanishes"),
            Source::Derived,
            0.0,
            v.norm(),
            bound,
        ));
    }
    let spread = [(s.covariant - s.exterior).norm(), (s.exterior - s.wedge).norm(), (s.covariant - s.wedge).norm()]
        .into_iter()
        .fold(0.0, f64::max);
    rep.push(Check::numeric("stokes.agreement", "three routes agree", Source::Derived, 0.0, spread, bound));
    Ok(rep)
}

#[cfg(test)]
mod tests;
