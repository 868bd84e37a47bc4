//! Truncated multivariate Taylor expansions with complex coefficients.
//!
//! A jet of order `n` at a point stores the Taylor coefficients of total
//! degree `<= n`. Differentiation lowers the order by one, so every value
//! derived from a closed-form coframe carries its own validity order.

use num_complex::Complex64;
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

/// Index tables for jets in `nvars` variables up to degree `order`.
#[derive(Debug)]
pub struct JetSpace {
    nvars: usize,
    order: usize,
    alphas: Vec<Vec<u8>>,
    /// number of multi-indices of degree `<= d`
    upto: Vec<usize>,
    /// `(i, j, k)` with `alpha_i + alpha_j = alpha_k`, sorted by degree of k
    mul: Vec<(u32, u32, u32)>,
    mul_upto: Vec<usize>,
    /// per variable: `(dst, src, factor)` for `d/dx_v`, sorted by dst degree
    deriv: Vec<Vec<(u32, u32, f64)>>,
    deriv_upto: Vec<Vec<usize>>,
}

impl JetSpace {
    pub fn new(nvars: usize, order: usize) -> Self {
        let mut alphas: Vec<Vec<u8>> = Vec::new();
        let mut upto = Vec::new();
        for d in 0..=order {
            let mut level = Vec::new();
            compositions(nvars, d, &mut vec![0u8; nvars], 0, &mut level);
            level.sort_by(|a, b| b.cmp(a));
            alphas.extend(level);
            upto.push(alphas.len());
        }
        let lookup: HashMap<Vec<u8>, usize> = alphas.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let deg = |a: &Vec<u8>| a.iter().map(|&x| x as usize).sum::<usize>();

        let mut mul = Vec::new();
        let mut mul_upto = Vec::new();
        for d in 0..=order {
            for (k, ak) in alphas.iter().enumerate() {
                if deg(ak) != d {
                    continue;
                }
                for (i, ai) in alphas.iter().enumerate() {
                    if ai.iter().zip(ak).all(|(x, y)| x <= y) {
                        let aj: Vec<u8> = ak.iter().zip(ai).map(|(y, x)| y - x).collect();
                        let j = lookup[&aj];
                        mul.push((i as u32, j as u32, k as u32));
                    }
                }
            }
            mul_upto.push(mul.len());
        }

        let mut deriv = Vec::new();
        let mut deriv_upto = Vec::new();
        for v in 0..nvars {
            let mut tab = Vec::new();
            let mut ends = Vec::new();
            for d in 0..order {
                for (dst, a) in alphas.iter().enumerate() {
                    if deg(a) != d {
                        continue;
                    }
                    let mut b = a.clone();
                    b[v] += 1;
                    tab.push((dst as u32, lookup[&b] as u32, b[v] as f64));
                }
                ends.push(tab.len());
            }
            deriv.push(tab);
            deriv_upto.push(ends);
        }
        JetSpace { nvars, order, alphas, upto, mul, mul_upto, deriv, deriv_upto }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self, ord: usize) -> usize {
        self.upto[ord]
    }

    pub fn multi_index(&self, k: usize) -> &[u8] {
        &self.alphas[k]
    }
}

fn compositions(n: usize, d: usize, cur: &mut Vec<u8>, pos: usize, out: &mut Vec<Vec<u8>>) {
    if pos == n - 1 {
        cur[pos] = d as u8;
        out.push(cur.clone());
        return;
    }
    for k in 0..=d {
        cur[pos] = k as u8;
        compositions(n, d - k, cur, pos + 1, out);
    }
}

#[derive(Clone, Debug)]
pub struct Jet<'s> {
    sp: &'s JetSpace,
    ord: usize,
    c: Vec<C64>,
}

impl<'s> Jet<'s> {
    pub fn constant(sp: &'s JetSpace, ord: usize, v: C64) -> Self {
        let mut c = vec![C64::new(0.0, 0.0); sp.len(ord)];
        c[0] = v;
        Jet { sp, ord, c }
    }

    pub fn real(sp: &'s JetSpace, ord: usize, v: f64) -> Self {
        Self::constant(sp, ord, C64::new(v, 0.0))
    }

    /// The coordinate function `x_v` expanded at `x_v = x0`.
    pub fn var(sp: &'s JetSpace, ord: usize, v: usize, x0: f64) -> Self {
        let mut j = Self::real(sp, ord, x0);
        if ord >= 1 {
            // degree-1 indices follow the constant, ordered e_0, e_1, ...
            j.c[1 + v] = C64::new(1.0, 0.0);
        }
        j
    }

    pub fn space(&self) -> &'s JetSpace {
        self.sp
    }

    pub fn ord(&self) -> usize {
        self.ord
    }

    pub fn value(&self) -> C64 {
        self.c[0]
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.c
    }

    pub fn zero_like(&self) -> Self {
        Self::constant(self.sp, self.ord, C64::new(0.0, 0.0))
    }

    /// Truncates to a lower order.
    pub fn with_ord(&self, ord: usize) -> Self {
        let ord = ord.min(self.ord);
        Jet { sp: self.sp, ord, c: self.c[..self.sp.len(ord)].to_vec() }
    }

    pub fn conj(&self) -> Self {
        Jet { sp: self.sp, ord: self.ord, c: self.c.iter().map(|z| z.conj()).collect() }
    }

    pub fn re(&self) -> Self {
        Jet { sp: self.sp, ord: self.ord, c: self.c.iter().map(|z| C64::new(z.re, 0.0)).collect() }
    }

    pub fn im(&self) -> Self {
        Jet { sp: self.sp, ord: self.ord, c: self.c.iter().map(|z| C64::new(z.im, 0.0)).collect() }
    }

    pub fn scale(&self, s: C64) -> Self {
        Jet { sp: self.sp, ord: self.ord, c: self.c.iter().map(|z| z * s).collect() }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Jet { sp: self.sp, ord: self.ord, c: self.c.iter().map(|z| z * s).collect() }
    }

    pub fn add_const(&self, s: C64) -> Self {
        let mut j = self.clone();
        j.c[0] += s;
        j
    }

    /// Partial derivative in variable `v`; the order drops by one.
    pub fn d(&self, v: usize) -> Self {
        assert!(self.ord >= 1, "cannot differentiate a jet of order 0");
        let ord = self.ord - 1;
        let mut c = vec![C64::new(0.0, 0.0); self.sp.len(ord)];
        let end = self.sp.deriv_upto[v][ord];
        for &(dst, src, f) in &self.sp.deriv[v][..end] {
            c[dst as usize] = self.c[src as usize] * f;
        }
        Jet { sp: self.sp, ord, c }
    }

    /// Evaluates `sum_k derivs[k]/k! (x - x0)^k`, where `x0` is the value of
    /// `self` and `derivs[k]` the k-th derivative of a univariate function at it.
    pub fn compose(&self, derivs: &[C64]) -> Self {
        let n = self.ord;
        assert!(derivs.len() > n, "need {} derivatives", n + 1);
        let mut h = self.clone();
        h.c[0] = C64::new(0.0, 0.0);
        let mut fact = vec![1.0f64; n + 1];
        for k in 1..=n {
            fact[k] = fact[k - 1] * k as f64;
        }
        let mut r = Self::constant(self.sp, n, derivs[n] / fact[n]);
        for k in (0..n).rev() {
            r = (&r * &h).add_const(derivs[k] / fact[k]);
        }
        r
    }

    pub fn recip(&self) -> Self {
        let a = self.value();
        let n = self.ord;
        let mut d = Vec::with_capacity(n + 1);
        let mut p = C64::new(1.0, 0.0) / a;
        let mut s = 1.0;
        for k in 0..=n {
            d.push(p * s);
            p /= a;
            s *= -((k + 1) as f64);
        }
        self.compose(&d)
    }

    pub fn powf(&self, e: f64) -> Self {
        let a = self.value();
        let n = self.ord;
        let mut d = Vec::with_capacity(n + 1);
        let mut coef = 1.0;
        for k in 0..=n {
            d.push(a.powc(C64::new(e - k as f64, 0.0)) * coef);
            coef *= e - k as f64;
        }
        self.compose(&d)
    }

    pub fn sqrt(&self) -> Self {
        self.powf(0.5)
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose(&vec![e; self.ord + 1])
    }

    pub fn sin(&self) -> Self {
        let (s, c) = (self.value().sin(), self.value().cos());
        let cyc = [s, c, -s, -c];
        self.compose(&(0..=self.ord).map(|k| cyc[k % 4]).collect::<Vec<_>>())
    }

    pub fn cos(&self) -> Self {
        let (s, c) = (self.value().sin(), self.value().cos());
        let cyc = [c, -s, -c, s];
        self.compose(&(0..=self.ord).map(|k| cyc[k % 4]).collect::<Vec<_>>())
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut r = Self::constant(self.sp, self.ord, C64::new(1.0, 0.0));
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Largest coefficient modulus.
    pub fn norm_inf(&self) -> f64 {
        self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl<'s> Add for &Jet<'s> {
    type Output = Jet<'s>;
    fn add(self, o: &Jet<'s>) -> Jet<'s> {
        let ord = self.ord.min(o.ord);
        let n = self.sp.len(ord);
        Jet { sp: self.sp, ord, c: (0..n).map(|k| self.c[k] + o.c[k]).collect() }
    }
}

impl<'s> Sub for &Jet<'s> {
    type Output = Jet<'s>;
    fn sub(self, o: &Jet<'s>) -> Jet<'s> {
        let ord = self.ord.min(o.ord);
        let n = self.sp.len(ord);
        Jet { sp: self.sp, ord, c: (0..n).map(|k| self.c[k] - o.c[k]).collect() }
    }
}

impl<'s> Mul for &Jet<'s> {
    type Output = Jet<'s>;
    fn mul(self, o: &Jet<'s>) -> Jet<'s> {
        let ord = self.ord.min(o.ord);
        let mut c = vec![C64::new(0.0, 0.0); self.sp.len(ord)];
        for &(i, j, k) in &self.sp.mul[..self.sp.mul_upto[ord]] {
            c[k as usize] += self.c[i as usize] * o.c[j as usize];
        }
        Jet { sp: self.sp, ord, c }
    }
}

impl<'s> Neg for &Jet<'s> {
    type Output = Jet<'s>;
    fn neg(self) -> Jet<'s> {
        Jet { sp: self.sp, ord: self.ord, c: self.c.iter().map(|z| -z).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<'s> $tr for Jet<'s> {
            type Output = Jet<'s>;
            fn $f(self, o: Jet<'s>) -> Jet<'s> {
                (&self).$f(&o)
            }
        }
        impl<'s> $tr<&Jet<'s>> for Jet<'s> {
            type Output = Jet<'s>;
            fn $f(self, o: &Jet<'s>) -> Jet<'s> {
                (&self).$f(o)
            }
        }
        impl<'s> $tr<Jet<'s>> for &Jet<'s> {
            type Output = Jet<'s>;
            fn $f(self, o: Jet<'s>) -> Jet<'s> {
                self.$f(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<'s> Neg for Jet<'s> {
    type Output = Jet<'s>;
    fn neg(self) -> Jet<'s> {
        -&self
    }
}

/// Inverse of a 3x3 jet matrix via the adjugate.
pub fn inverse3<'s>(m: &[[Jet<'s>; 3]; 3]) -> [[Jet<'s>; 3]; 3] {
    let cof = |r0: usize, r1: usize, c0: usize, c1: usize| &(&m[r0][c0] * &m[r1][c1]) - &(&m[r0][c1] * &m[r1][c0]);
    let adj: [[Jet<'s>; 3]; 3] = [
        [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
        [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
        [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
    ];
    let det = &(&(&m[0][0] * &adj[0][0]) + &(&m[0][1] * &adj[1][0])) + &(&m[0][2] * &adj[2][0]);
    let inv = det.recip();
    std::array::from_fn(|i| std::array::from_fn(|j| &adj[i][j] * &inv))
}

/// Inverse of an n x n jet matrix by Gauss-Jordan elimination with partial
/// pivoting on the constant terms.
pub fn inverse_n<'s>(m: &[Vec<Jet<'s>>]) -> Vec<Vec<Jet<'s>>> {
    let n = m.len();
    let sp = m[0][0].space();
    let ord = m.iter().flatten().map(|x| x.ord()).min().unwrap_or(0);
    let mut a: Vec<Vec<Jet<'s>>> = m.to_vec();
    let mut b: Vec<Vec<Jet<'s>>> = (0..n)
        .map(|i| (0..n).map(|j| Jet::real(sp, ord, if i == j { 1.0 } else { 0.0 })).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).max_by(|&x, &y| a[x][col].value().norm().total_cmp(&a[y][col].value().norm())).unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in 0..n {
            a[col][j] = &a[col][j] * &inv;
            b[col][j] = &b[col][j] * &inv;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                a[r][j] = &a[r][j] - &(&f * &a[col][j]);
                b[r][j] = &b[r][j] - &(&f * &b[col][j]);
            }
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn space_sizes() {
        let sp = JetSpace::new(3, 4);
        assert_eq!(sp.len(4), 35);
        assert_eq!(sp.len(0), 1);
        assert_eq!(sp.multi_index(1), &[1, 0, 0]);
        assert_eq!(sp.multi_index(3), &[0, 0, 1]);
    }

    #[test]
    fn product_rule_and_orders() {
        let sp = JetSpace::new(2, 4);
        let x = Jet::var(&sp, 4, 0, 0.3);
        let y = Jet::var(&sp, 4, 1, -0.7);
        let f = &(&x * &x) * &y; // x^2 y
        let fx = f.d(0);
        assert_eq!(fx.ord(), 3);
        assert!(close(fx.value(), C64::new(2.0 * 0.3 * -0.7, 0.0), 1e-14));
        let fxy = fx.d(1);
        assert!(close(fxy.value(), C64::new(0.6, 0.0), 1e-14));
        assert!(close(f.d(0).d(0).d(1).value(), C64::new(2.0, 0.0), 1e-14));
    }

    #[test]
    fn elementary_functions_match_closed_forms() {
        let sp = JetSpace::new(1, 6);
        let x = Jet::var(&sp, 6, 0, 0.4);
        let s = x.sin();
        let c = x.cos();
        let one = &(&s * &s) + &(&c * &c);
        for (k, z) in one.coeffs().iter().enumerate() {
            let want = if k == 0 { 1.0 } else { 0.0 };
            assert!((z - want).norm() < 1e-14);
        }
        let e = x.exp();
        let mut d = e.clone();
        for _ in 0..5 {
            d = d.d(0);
        }
        assert!(close(d.value(), C64::new(0.4f64.exp(), 0.0), 1e-12));
        let r = &x * &x.recip();
        assert!(close(r.coeffs()[3], C64::new(0.0, 0.0), 1e-13));
        let q = x.sqrt();
        let back = &q * &q;
        assert!(back.coeffs().iter().zip(x.coeffs()).all(|(a, b)| (a - b).norm() < 1e-13));
    }

    #[test]
    fn complex_exponential() {
        let sp = JetSpace::new(1, 5);
        let x = Jet::var(&sp, 5, 0, 0.2);
        let e = x.scale(C64::new(0.0, 1.0)).exp();
        let want = &x.cos() + &x.sin().scale(C64::new(0.0, 1.0));
        assert!(e.coeffs().iter().zip(want.coeffs()).all(|(a, b)| (a - b).norm() < 1e-14));
    }

    #[test]
    fn matrix_inverses_agree() {
        let sp = JetSpace::new(3, 3);
        let x = Jet::var(&sp, 3, 0, 0.1);
        let y = Jet::var(&sp, 3, 1, 0.2);
        let z = Jet::var(&sp, 3, 2, 0.3);
        let one = Jet::real(&sp, 3, 1.0);
        let m = [
            [one.add_const(C64::new(1.0, 0.0)), x.clone(), y.sin()],
            [z.clone(), x.exp(), one.clone()],
            [&y * &z, z.cos(), &x + &one],
        ];
        let a = inverse3(&m);
        let rows: Vec<Vec<Jet>> = m.iter().map(|r| r.to_vec()).collect();
        let b = inverse_n(&rows);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Jet::real(&sp, 3, 0.0);
                for k in 0..3 {
                    acc = &acc + &(&m[i][k] * &a[k][j]);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!(acc.coeffs().iter().enumerate().all(|(n, c)| (c - if n == 0 { want } else { 0.0 }).norm() < 1e-12));
                assert!(a[i][j].coeffs().iter().zip(b[i][j].coeffs()).all(|(p, q)| (p - q).norm() < 1e-12));
            }
        }
    }
}
