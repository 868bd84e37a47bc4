//! Smooth functions on the example manifolds, given as expressions in the
//! ambient coordinates so that every derivative comes from jet arithmetic.

use crate::jet::{Jet, C64};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::sync::Arc;

pub trait Field: Send + Sync {
    /// The function as a jet, given the ambient coordinate jets.
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s>;
    fn describe(&self) -> String;
}

pub type FieldRef = Arc<dyn Field>;

#[derive(Clone, Debug)]
pub struct Constant(pub f64);

impl Field for Constant {
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s> {
        Jet::real(amb[0].space(), amb[0].ord(), self.0)
    }
    fn describe(&self) -> String {
        format!("{}", self.0)
    }
}

/// `sum_k c_k prod_i x_i^{e_ki}` in the ambient coordinates.
#[derive(Clone, Debug)]
pub struct AmbientPoly {
    pub terms: Vec<(C64, Vec<u32>)>,
}

impl Field for AmbientPoly {
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s> {
        let mut acc = amb[0].zero_like();
        for (c, e) in &self.terms {
            let mut m = Jet::constant(amb[0].space(), amb[0].ord(), *c);
            for (x, k) in amb.iter().zip(e) {
                if *k > 0 {
                    m = &m * &x.powi(*k);
                }
            }
            acc = &acc + &m;
        }
        acc
    }
    fn describe(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let mono: Vec<String> =
                    e.iter().enumerate().filter(|p| *p.1 > 0).map(|(i, k)| format!("x{}^{}", i + 1, k)).collect();
                format!("({:.4}{:+.4}i){}", c.re, c.im, if mono.is_empty() { String::new() } else { format!("*{}", mono.join("*")) })
            })
            .collect();
        parts.join(" + ")
    }
}

/// Lattice-periodic trigonometric polynomial in the first two ambient
/// coordinates: `c0 + sum a cos(2 pi (k x + l y)) + b sin(2 pi (k x + l y))`.
#[derive(Clone, Debug)]
pub struct TrigPoly {
    pub c0: C64,
    pub modes: Vec<(i32, i32, C64, C64)>,
}

impl Field for TrigPoly {
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s> {
        let mut acc = Jet::constant(amb[0].space(), amb[0].ord(), self.c0);
        for &(k, l, a, b) in &self.modes {
            let ph = (&amb[0].scale_re(2.0 * PI * k as f64)) + (&amb[1].scale_re(2.0 * PI * l as f64));
            acc = &acc + &ph.cos().scale(a);
            acc = &acc + &ph.sin().scale(b);
        }
        acc
    }
    fn describe(&self) -> String {
        format!("trig({} modes)", self.modes.len())
    }
}

/// `shift + scale * base`.
#[derive(Clone)]
pub struct Affine {
    pub base: FieldRef,
    pub scale: f64,
    pub shift: f64,
}

impl Field for Affine {
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s> {
        self.base.eval(amb).scale_re(self.scale).add_const(C64::new(self.shift, 0.0))
    }
    fn describe(&self) -> String {
        format!("{} + {}*({})", self.shift, self.scale, self.base.describe())
    }
}

#[derive(Clone)]
pub struct Product(pub FieldRef, pub FieldRef);

impl Field for Product {
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s> {
        &self.0.eval(amb) * &self.1.eval(amb)
    }
    fn describe(&self) -> String {
        format!("({})*({})", self.0.describe(), self.1.describe())
    }
}

#[derive(Clone)]
pub struct Sum(pub FieldRef, pub FieldRef);

impl Field for Sum {
    fn eval<'s>(&self, amb: &[Jet<'s>]) -> Jet<'s> {
        &self.0.eval(amb) + &self.1.eval(amb)
    }
    fn describe(&self) -> String {
        format!("({})+({})", self.0.describe(), self.1.describe())
    }
}

fn exponent_vectors(nvars: usize, max_deg: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        let mut next = Vec::new();
        for v in &out {
            let d: u32 = v.iter().sum();
            for k in 0..=(max_deg - d) {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Real polynomial `1 + p(x)` in the ambient coordinates of the unit sphere
/// with `sum |coefficients| = amplitude`, so it stays in
/// `[1 - amplitude, 1 + amplitude]`.
pub fn random_sphere_factor(seed: u64, max_deg: u32, amplitude: f64) -> AmbientPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exps: Vec<Vec<u32>> = exponent_vectors(4, max_deg).into_iter().filter(|e| e.iter().sum::<u32>() > 0).collect();
    let raw: Vec<f64> = exps.iter().map(|_| rng.random_range(-1.0..1.0)).collect();
    let norm: f64 = raw.iter().map(|x| x.abs()).sum();
    let mut terms = vec![(C64::new(1.0, 0.0), vec![0; 4])];
    for (e, c) in exps.into_iter().zip(raw) {
        terms.push((C64::new(amplitude * c / norm, 0.0), e));
    }
    AmbientPoly { terms }
}

/// Complex polynomial of degree `<= max_deg` in the four sphere coordinates,
/// used as the coefficient of a random (1,0)-form.
pub fn random_sphere_form(seed: u64, max_deg: u32) -> AmbientPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let terms = exponent_vectors(4, max_deg)
        .into_iter()
        .map(|e| (C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)), e))
        .collect();
    AmbientPoly { terms }
}

/// Real lattice-periodic factor `1 + trig` with total amplitude bound.
pub fn random_periodic_factor(seed: u64, max_mode: i32, amplitude: f64) -> TrigPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::new();
    for k in 0..=max_mode {
        for l in -max_mode..=max_mode {
            if k == 0 && l <= 0 {
                continue;
            }
            modes.push((k, l, rng.random_range(-1.0..1.0f64), rng.random_range(-1.0..1.0f64)));
        }
    }
    let norm: f64 = modes.iter().map(|m| m.2.abs() + m.3.abs()).sum();
    TrigPoly {
        c0: C64::new(1.0, 0.0),
        modes: modes
            .into_iter()
            .map(|(k, l, a, b)| (k, l, C64::new(amplitude * a / norm, 0.0), C64::new(amplitude * b / norm, 0.0)))
            .collect(),
    }
}

/// Complex lattice-periodic coefficient for a (1,0)-form.
pub fn random_periodic_form(seed: u64, max_mode: i32) -> TrigPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut modes = Vec::new();
    for k in -max_mode..=max_mode {
        for l in -max_mode..=max_mode {
            let a = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            let b = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            modes.push((k, l, a, b));
        }
    }
    TrigPoly { c0: C64::new(rng.random_range(-1.0..1.0), 0.0), modes }
}
