use super::numeric::curly_v;
use super::*;
use crate::jet::{inverse_n, Jet, JetSpace, C64};
use crate::tw_calculus::TwData;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// The complex hyperbolic plane with holomorphic sectional curvature `-1`:
/// the ball `|z| < 1` with `g = 4 Re dd^c(-log(1 - |z|^2))`, `Scal = -6`.
/// `rho = artanh |z|` is half the geodesic distance from the origin, and
/// `vol B = 8 pi^2 sinh^4 rho`.
///
/// Boundary contact form `eta = lambda sigma` with `lambda R = 2`; the
/// Kahler-gauge radius satisfies
/// `e^{2 rho} = 2 lambda e^r + e^{-r}/(6 lambda) + o(e^{-r})`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ch2Model {
    pub lambda: f64,
}

impl Default for Ch2Model {
    fn default() -> Self {
        Ch2Model { lambda: FRAC_1_SQRT_2 }
    }
}

/// Metric components in the real coordinates `z1 = x0 + i x1`,
/// `z2 = x2 + i x3`.
pub fn bergman_metric<'s>(x: &[Jet<'s>; 4]) -> Vec<Vec<Jet<'s>>> {
    let i = C64::new(0.0, 1.0);
    let z = [&x[0] + &x[1].scale(i), &x[2] + &x[3].scale(i)];
    let mut r2 = x[0].zero_like();
    for xi in x {
        r2 = &r2 + &(xi * xi);
    }
    let w = (-&r2).add_const(C64::new(1.0, 0.0));
    let wi = w.recip();
    let wi2 = &wi * &wi;
    let h: Vec<Vec<Jet>> = (0..2)
        .map(|j| {
            (0..2)
                .map(|k| {
                    let off = &(&z[j].conj() * &z[k]) * &wi2;
                    if j == k {
                        &off + &wi
                    } else {
                        off
                    }
                })
                .collect()
        })
        .collect();
    let dirs = [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [i, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [
        C64::new(0.0, 0.0),
        i,
    ]];
    (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    let mut s = x[0].zero_like();
                    for j in 0..2 {
                        for k in 0..2 {
                            s = &s + &h[j][k].scale(dirs[a][j] * dirs[b][k].conj());
                        }
                    }
                    s.re().scale_re(4.0)
                })
                .collect()
        })
        .collect()
}

/// Pointwise curvature data of the model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ch2Curvature {
    pub point: [f64; 4],
    pub scal: f64,
    /// `1/4 W_abcd W^abcd`, the norm of `W` as an operator on 2-forms.
    pub weyl_sq: f64,
    /// Sectional curvature of the plane `(d/dx0, J d/dx0)`.
    pub holomorphic: f64,
    /// Sectional curvature of the plane `(d/dx0, d/dx2)`.
    pub totally_real: f64,
    pub sqrt_det: f64,
}

impl Ch2Curvature {
    /// `|W|^2 - Scal^2/24`.
    pub fn bulk_integrand(&self) -> f64 {
        self.weyl_sq - self.scal * self.scal / 24.0
    }
}

fn det4(m: &[[f64; 4]; 4]) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for c in 0..4 {
        let p = (c..4).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).expect("nonempty");
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..4 {
            let f = a[r][c] / a[c][c];
            for k in c..4 {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

/// Riemann tensor `R^a_{bcd}` from second jets of the metric.
pub fn ch2_curvature(p: [f64; 4]) -> Ch2Curvature {
    let sp = JetSpace::new(4, 2);
    let x: [Jet; 4] = std::array::from_fn(|k| Jet::var(&sp, 2, k, p[k]));
    let g = bergman_metric(&x);
    let gi = inverse_n(&g);
    let dg: Vec<Vec<Vec<Jet>>> = (0..4).map(|c| (0..4).map(|a| (0..4).map(|b| g[a][b].d(c)).collect()).collect()).collect();
    // Gamma^a_{bc}
    let gamma: Vec<Vec<Vec<Jet>>> = (0..4)
        .map(|a| {
            (0..4)
                .map(|b| {
                    (0..4)
                        .map(|c| {
                            let mut s = dg[0][0][0].zero_like();
                            for d in 0..4 {
                                let first = &(&dg[b][d][c] + &dg[c][d][b]) - &dg[d][b][c];
                                s = &s + &(&gi[a][d] * &first);
                            }
                            s.scale_re(0.5)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let gv = |a: usize, b: usize| g[a][b].value().re;
    let giv = |a: usize, b: usize| gi[a][b].value().re;
    let gam = |a: usize, b: usize, c: usize| gamma[a][b][c].value().re;
    let mut riem = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut s = gamma[a][d][b].d(c).value().re - gamma[a][c][b].d(d).value().re;
                    for e in 0..4 {
                        s += gam(a, c, e) * gam(e, d, b) - gam(a, d, e) * gam(e, c, b);
                    }
                    riem[a][b][c][d] = s;
                }
            }
        }
    }
    // lowered R_abcd
    let mut rl = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    rl[a][b][c][d] = (0..4).map(|e| gv(a, e) * riem[e][b][c][d]).sum();
                }
            }
        }
    }
    let mut ric = [[0.0f64; 4]; 4];
    for b in 0..4 {
        for d in 0..4 {
            ric[b][d] = (0..4).map(|a| riem[a][b][a][d]).sum();
        }
    }
    let scal: f64 = (0..4).flat_map(|b| (0..4).map(move |d| (b, d))).map(|(b, d)| giv(b, d) * ric[b][d]).sum();
    let mut sch = [[0.0f64; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            sch[a][b] = 0.5 * (ric[a][b] - scal / 6.0 * gv(a, b));
        }
    }
    let mut w = [[[[0.0f64; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    w[a][b][c][d] = rl[a][b][c][d]
                        - (sch[a][c] * gv(b, d) + sch[b][d] * gv(a, c) - sch[a][d] * gv(b, c) - sch[b][c] * gv(a, d));
                }
            }
        }
    }
    // raise all four indices one at a time
    let mut up = w;
    for slot in 0..4 {
        let prev = up;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let idx = [a, b, c, d];
                        up[a][b][c][d] = (0..4)
                            .map(|e| {
                                let mut j = idx;
                                j[slot] = e;
                                giv(idx[slot], e) * prev[j[0]][j[1]][j[2]][j[3]]
                            })
                            .sum();
                    }
                }
            }
        }
    }
    let mut full = 0.0;
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    full += w[a][b][c][d] * up[a][b][c][d];
                }
            }
        }
    }
    let sec = |xv: [f64; 4], yv: [f64; 4]| {
        let ip = |u: [f64; 4], v: [f64; 4]| -> f64 { (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).map(|(a, b)| gv(a, b) * u[a] * v[b]).sum() };
        let mut num = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        num += rl[a][b][c][d] * xv[a] * yv[b] * xv[c] * yv[d];
                    }
                }
            }
        }
        num / (ip(xv, xv) * ip(yv, yv) - ip(xv, yv).powi(2))
    };
    let gm: [[f64; 4]; 4] = std::array::from_fn(|a| std::array::from_fn(|b| gv(a, b)));
    Ch2Curvature {
        point: p,
        scal,
        weyl_sq: full / 4.0,
        holomorphic: sec([1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]),
        totally_real: sec([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]),
        sqrt_det: det4(&gm).sqrt(),
    }
}

/// `sqrt(det g)` at `(r, 0, 0, 0)`.
fn volume_density(r: f64) -> f64 {
    let sp = JetSpace::new(4, 0);
    let x: [Jet; 4] = std::array::from_fn(|k| Jet::var(&sp, 0, k, if k == 0 { r } else { 0.0 }));
    let g = bergman_metric(&x);
    let m: [[f64; 4]; 4] = std::array::from_fn(|a| std::array::from_fn(|b| g[a][b].value().re));
    det4(&m).sqrt()
}

impl Ch2Model {
    /// `vol B = 8 pi^2 sinh^4 rho`.
    pub fn ball_volume(rho: f64) -> f64 {
        8.0 * PI * PI * rho.sinh().powi(4)
    }

    /// Independent oracle: `int_0^rho sqrt(det g) 2 pi^2 |z|^3 d|z|` along a
    /// ray with `|z| = tanh s`, by Gauss-Legendre in `s`.
    pub fn ball_volume_quadrature(rho: f64, nodes: usize) -> f64 {
        let (xs, ws) = crate::tw_calculus::gauss_legendre(nodes);
        let h = 0.5 * rho;
        crate::parallel::ordered_sum(xs.iter().zip(&ws).map(|(x, w)| {
            let s = h * (x + 1.0);
            let r = s.tanh();
            let sech2 = 1.0 / s.cosh().powi(2);
            w * h * volume_density(r) * 2.0 * PI * PI * r.powi(3) * sech2
        }))
    }

    /// `e^{2 rho}` in `eps = e^{-r/2}`, known to `o(eps^2)`.
    pub fn radius_series(&self) -> AsymptoticSeries<f64> {
        let l = self.lambda;
        AsymptoticSeries::from_coeffs(-2, Some(2), [(-2, 2.0 * l), (2, 1.0 / (6.0 * l))]).expect("orders in range")
    }

    /// `vol B(r) = pi^2/2 (x + 1/x - 2)^2` with `x = e^{2 rho}`; known to `o(1)`.
    pub fn volume_series(&self) -> Result<AsymptoticSeries<f64>, SeriesError> {
        let x = self.radius_series();
        let l2 = 2.0 * self.lambda;
        let unit = x.shift(2).map(|c| c / l2);
        let xinv = unit.inv()?.shift(2).map(|c| c / l2);
        let y = x.add(&xinv).add(&AsymptoticSeries::monomial(0, -2.0));
        Ok(y.mul(&y).map(|c| c * PI * PI / 2.0))
    }

    pub fn leading(&self) -> Result<f64, SeriesError> {
        self.volume_series()?.coeff(-4)
    }

    pub fn v1(&self) -> Result<f64, SeriesError> {
        self.volume_series()?.coeff(-2)
    }

    /// Renormalized volume: constant term of the expansion.
    pub fn renormalized_volume(&self) -> Result<f64, SeriesError> {
        self.volume_series()?.coeff(0)
    }
}

pub fn ch2_renormalized_volume() -> f64 {
    Ch2Model::default().renormalized_volume().expect("closed form known to o(1)")
}

/// Random points with `|z| < r_max`.
pub fn ch2_sample_points(n: usize, seed: u64, r_max: f64) -> Vec<[f64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| loop {
            let p: [f64; 4] = std::array::from_fn(|_| rng.random_range(-r_max..r_max));
            if p.iter().map(|x| x * x).sum::<f64>() < r_max * r_max {
                break p;
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ch2Tolerances {
    pub leading: f64,
    pub v1: f64,
    pub bulk: f64,
    pub chi: f64,
    pub curly_v: f64,
    pub oracle: f64,
}

impl Default for Ch2Tolerances {
    fn default() -> Self {
        Ch2Tolerances { leading: 1e-9, v1: 1e-9, bulk: 1e-9, chi: 1e-7, curly_v: 1e-6, oracle: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ch2Result {
    pub renormalized: f64,
    pub curly_v: f64,
    pub chi: f64,
    pub max_bulk: f64,
    pub curvature: Vec<Ch2Curvature>,
}

/// End-to-end Euler characteristic of the model against round `S^3` data
/// `boundary` (the `lambda = 1/sqrt 2` contact form).
pub fn euler_check_ch2(
    boundary: &TwData,
    fv: &FormalVolume,
    points: usize,
    seed: u64,
    tol: &Ch2Tolerances,
) -> Result<(Ch2Result, VerificationReport), SeriesError> {
    let model = Ch2Model::default();
    let mut rep = VerificationReport::new("complex hyperbolic plane");
    let pi2 = PI * PI;
    rep.push(Check::numeric("ch2.leading", "e^{2r} coefficient of vol B(r) is pi^2", Source::Printed, pi2, model.leading()?, tol.leading));
    let sphere = super::numeric::volume_from_data(fv, boundary);
    rep.push(Check::numeric(
        "ch2.gauge.leading",
        "closed form e^{2r} coefficient vs formal series on round S^3",
        Source::Derived,
        sphere.leading,
        model.leading()?,
        tol.leading,
    ));
    rep.push(Check::numeric(
        "ch2.gauge.v1",
        "closed form e^r coefficient vs formal series on round S^3",
        Source::Derived,
        sphere.v1,
        model.v1()?,
        tol.v1,
    ));
    let v = model.renormalized_volume()?;
    rep.push(Check::info("ch2.renormalized_volume", "V of the model (golden value 10 pi^2/3)", Source::Derived, &format!("{:.15e}", 10.0 * pi2 / 3.0), &format!("{v:.15e}")));
    let worst = [0.5, 1.0, 2.0, 3.0]
        .iter()
        .map(|&rho| {
            let exact = Ch2Model::ball_volume(rho);
            ((Ch2Model::ball_volume_quadrature(rho, 48) - exact) / exact).abs()
        })
        .fold(0.0, f64::max);
    rep.push(Check::numeric(
        "ch2.radial_oracle",
        "8 pi^2 sinh^4 rho vs radial quadrature of sqrt(det g), relative",
        Source::Derived,
        0.0,
        worst,
        tol.oracle,
    ));
    let pts = ch2_sample_points(points, seed, 0.9);
    let curvature: Vec<Ch2Curvature> = crate::parallel::map_nodes(pts.len(), |k| ch2_curvature(pts[k]));
    let max_dev = |f: &dyn Fn(&Ch2Curvature) -> f64| curvature.iter().map(f).fold(0.0, f64::max);
    let max_bulk = max_dev(&|c| c.bulk_integrand().abs() / (c.scal * c.scal));
    rep.push(Check::numeric(
        "ch2.bulk_integrand",
        &format!("max |W|^2 - Scal^2/24 relative to Scal^2 at {points} points"),
        Source::Derived,
        0.0,
        max_bulk,
        tol.bulk,
    ));
    rep.push(Check::numeric("ch2.scal", "max |Scal + 6|", Source::Derived, 0.0, max_dev(&|c| (c.scal + 6.0).abs()), tol.bulk));
    rep.push(Check::numeric(
        "ch2.holomorphic",
        "max |K(X, JX) + 1|",
        Source::Derived,
        0.0,
        max_dev(&|c| (c.holomorphic + 1.0).abs()),
        tol.bulk,
    ));
    let cv = curly_v(v, boundary);
    rep.push(Check::numeric("ch2.curly_v", "3/2 V - int T = 4 pi^2", Source::Derived, 4.0 * pi2, cv, tol.curly_v));
    // The bulk term vanishes pointwise, so it contributes nothing to chi.
    let chi = cv / (4.0 * pi2);
    rep.push(
        Check::numeric("ch2.chi", "chi = (1/8 pi^2) int (|W|^2 - Scal^2/24) + curly_V/(4 pi^2) = 1", Source::Derived, 1.0, chi, tol.chi)
            .with_note("bulk integrand vanishes identically, see ch2.bulk_integrand"),
    );
    Ok((Ch2Result { renormalized: v, curly_v: cv, chi, max_bulk, curvature }, rep))
}
