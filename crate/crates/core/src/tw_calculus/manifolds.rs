//! Built-in pseudo-hermitian 3-manifolds with closed-form coframes.

use super::fields::FieldRef;
use super::{inverse_frame, Coframe, ContactManifold, Quadrature};
use crate::jet::{Jet, JetSpace, C64};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::Arc;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Left-invariant structures on the 3-sphere in Hopf coordinates
/// `(s, phi1, phi2)`, `z1 = cos s e^{i phi1}`, `z2 = sin s e^{i phi2}`.
///
/// `eta = scale (sin^2 s dphi2 - cos^2 s dphi1)` and
/// `theta = sqrt(scale/squash) (sigma1 + i squash sigma2)`.
/// `squash = 1` is the round sphere; then `R = 2/scale` and `tau = 0`.
/// In general `R = (squash + 1/squash)/scale`, `|tau| = |squash - 1/squash|/scale`.
#[derive(Clone, Debug)]
pub struct HopfSphere {
    pub scale: f64,
    pub squash: f64,
}

impl HopfSphere {
    /// Scale `1/sqrt 2`: total `eta ^ d eta` measure `2 pi^2`.
    pub fn round() -> Self {
        HopfSphere { scale: FRAC_1_SQRT_2, squash: 1.0 }
    }

    pub fn berger(squash: f64) -> Self {
        HopfSphere { scale: FRAC_1_SQRT_2, squash }
    }

    pub fn expected_r(&self) -> f64 {
        (self.squash + 1.0 / self.squash) / self.scale
    }

    pub fn expected_tau_abs(&self) -> f64 {
        (self.squash - 1.0 / self.squash).abs() / self.scale
    }

    pub fn total_measure(&self) -> f64 {
        4.0 * PI * PI * self.scale * self.scale
    }
}

fn vars<'s>(sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> [Jet<'s>; 3] {
    [Jet::var(sp, ord, 0, p[0]), Jet::var(sp, ord, 1, p[1]), Jet::var(sp, ord, 2, p[2])]
}

impl ContactManifold for HopfSphere {
    fn name(&self) -> String {
        if self.squash == 1.0 {
            "round-s3".into()
        } else {
            format!("berger-s3({})", self.squash)
        }
    }

    fn coframe<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Coframe<'s> {
        let [s, f1, f2] = vars(sp, ord, p);
        let c = s.cos();
        let sn = s.sin();
        let sc = &sn * &c;
        let psi = &f2 - &f1;
        let e = psi.scale(I).exp();
        let zero = e.zero_like();
        // sigma1 + i sigma2 = e^{i psi}(ds + i sin s cos s (dphi1 + dphi2))
        let ies = &e * &sc.scale(I);
        let sp_ = [e.clone(), ies.clone(), ies];
        let sig1: Vec<Jet> = sp_.iter().map(|x| x.re()).collect();
        let sig2: Vec<Jet> = sp_.iter().map(|x| x.im()).collect();
        let k = (self.scale / self.squash).sqrt();
        let theta = std::array::from_fn(|i| (&sig1[i] + &sig2[i].scale(I * self.squash)).scale_re(k));
        let eta = [zero, (&c * &c).scale_re(-self.scale), (&sn * &sn).scale_re(self.scale)];
        Coframe { eta, theta }
    }

    fn ambient<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Vec<Jet<'s>> {
        let [s, f1, f2] = vars(sp, ord, p);
        let (c, sn) = (s.cos(), s.sin());
        vec![&c * &f1.cos(), &c * &f1.sin(), &sn * &f2.cos(), &sn * &f2.sin()]
    }

    /// Gauss-Legendre in `u = sin^2 s`, uniform in both angles. Exact for
    /// polynomials of degree `<= 2 res - 1` in the ambient coordinates.
    fn quadrature(&self, res: usize) -> Quadrature {
        let (xs, ws) = super::gauss_legendre(res);
        let nphi = 2 * res;
        let h = 2.0 * PI / nphi as f64;
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        for (x, w) in xs.iter().zip(&ws) {
            let u = 0.5 * (x + 1.0);
            let s = u.sqrt().asin();
            let jac = 0.5 * w / (2.0 * s.sin() * s.cos());
            for a in 0..nphi {
                for b in 0..nphi {
                    nodes.push([s, a as f64 * h, b as f64 * h]);
                    weights.push(jac * h * h);
                }
            }
        }
        Quadrature { nodes, weights }
    }

    fn sample_points(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                [rng.random_range(0.15..(PI / 2.0 - 0.15)), rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI)]
            })
            .collect()
    }
}

/// Compact quotient of the Heisenberg group by the lattice generated by
/// `(1,0,0)`, `(0,1,0)`, `(0,0,1/2)` under
/// `(x,y,t)(x',y',t') = (x+x', y+y', t+t' + (x y' - y x')/2)`.
/// `eta = dt + (x dy - y dx)/2`, `theta = (dx + i dy)/sqrt 2`; flat.
#[derive(Clone, Debug, Default)]
pub struct HeisenbergQuotient;

impl ContactManifold for HeisenbergQuotient {
    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn coframe<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Coframe<'s> {
        let [x, y, _] = vars(sp, ord, p);
        let one = Jet::real(sp, ord, 1.0);
        let eta = [y.scale_re(-0.5), x.scale_re(0.5), one.clone()];
        let theta = [one.scale_re(FRAC_1_SQRT_2), one.scale(I * FRAC_1_SQRT_2), one.zero_like()];
        Coframe { eta, theta }
    }

    fn ambient<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Vec<Jet<'s>> {
        vars(sp, ord, p).to_vec()
    }

    /// Uniform grid in `(x, y)`; one layer in `t` with the full fiber
    /// length `1/2`. Integrands must not depend on `t`: every built-in
    /// field and the left-invariant coframe satisfy this.
    fn quadrature(&self, res: usize) -> Quadrature {
        let n = 2 * res;
        let h = 1.0 / n as f64;
        let mut nodes = Vec::new();
        for a in 0..n {
            for b in 0..n {
                nodes.push([a as f64 * h, b as f64 * h, 0.0]);
            }
        }
        let weights = vec![0.5 * h * h; nodes.len()];
        Quadrature { nodes, weights }
    }

    fn sample_points(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| [rng.random_range(0.0..1.0), rng.random_range(0.0..1.0), rng.random_range(0.0..0.5)]).collect()
    }
}

/// The structure `(u eta, f theta + 2i f_{,1bar} eta)` with `f = sqrt u`.
#[derive(Clone)]
pub struct Conformal {
    pub base: Arc<dyn ContactManifold>,
    pub u: FieldRef,
}

impl ContactManifold for Conformal {
    fn name(&self) -> String {
        format!("{}*u", self.base.name())
    }

    fn depth(&self) -> usize {
        self.base.depth() + 1
    }

    fn coframe<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Coframe<'s> {
        let base = self.base.coframe(sp, ord + 1, p);
        let amb = self.base.ambient(sp, ord + 1, p);
        let u = self.u.eval(&amb);
        let f = u.sqrt();
        let fr = inverse_frame(&base);
        let f_1b = super::apply(&fr.z1b, &f);
        let eta = std::array::from_fn(|i| (&u * &base.eta[i]).with_ord(ord));
        let theta = std::array::from_fn(|i| {
            &(&f * &base.theta[i]).with_ord(ord) + &(&f_1b * &base.eta[i]).scale(2.0 * I)
        });
        Coframe { eta, theta }
    }

    fn ambient<'s>(&self, sp: &'s JetSpace, ord: usize, p: [f64; 3]) -> Vec<Jet<'s>> {
        self.base.ambient(sp, ord, p)
    }

    fn quadrature(&self, res: usize) -> Quadrature {
        self.base.quadrature(res)
    }

    fn sample_points(&self, n: usize, seed: u64) -> Vec<[f64; 3]> {
        self.base.sample_points(n, seed)
    }
}
