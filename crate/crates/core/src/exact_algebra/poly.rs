use super::symbol::Symbol;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub type ExactScalar = BigRational;

/// Rational `n/d`. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> ExactScalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(n))
}

/// A commutative monomial: sorted symbol/exponent pairs, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: Symbol) -> Self {
        Monomial(vec![(s, 1)])
    }

    pub fn from_pairs(pairs: &[(Symbol, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(s, e) in pairs {
            m = m.mul(&Monomial(if e == 0 { vec![] } else { vec![(s, e)] }));
        }
        m
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.0.iter().find(|p| p.0 == s).map_or(0, |p| p.1)
    }

    pub fn divergence_degree(&self) -> u32 {
        self.0.iter().filter(|p| p.0.is_divergence()).map(|p| p.1).sum()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.degree_in(s) > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Symbol, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) if a.0 == b.0 => {
                    out.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a.0 < b.0 => {
                    out.push(*a);
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (Some(a), None) => {
                    out.push(*a);
                    i += 1;
                }
                (None, Some(b)) => {
                    out.push(*b);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// Removes `s` entirely, returning the exponent it had.
    fn split_off(&self, s: Symbol) -> (u32, Monomial) {
        let e = self.degree_in(s);
        (e, Monomial(self.0.iter().copied().filter(|p| p.0 != s).collect()))
    }

    pub fn to_latex(&self) -> String {
        self.0
            .iter()
            .map(|&(s, e)| {
                let base = s.latex();
                let base = if base.contains(' ') || base.starts_with("i(") || base.ends_with("^{2}") && e > 1 {
                    format!("\\left({base}\\right)")
                } else {
                    base.to_string()
                };
                if e == 1 {
                    base
                } else {
                    format!("{base}^{{{e}}}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(s, e)| if e == 1 { s.name().to_string() } else { format!("{}^{}", s.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Polynomial over the fixed symbol alphabet with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymbolicPoly {
    terms: BTreeMap<Monomial, ExactScalar>,
}

impl SymbolicPoly {
    pub fn zero() -> Self {
        SymbolicPoly::default()
    }

    pub fn one() -> Self {
        SymbolicPoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> Self {
        SymbolicPoly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        SymbolicPoly::constant(qi(n))
    }

    pub fn rat(n: i64, d: i64) -> Self {
        SymbolicPoly::constant(q(n, d))
    }

    pub fn var(s: Symbol) -> Self {
        SymbolicPoly::term(ExactScalar::one(), Monomial::var(s))
    }

    pub fn term(c: ExactScalar, m: Monomial) -> Self {
        let mut p = SymbolicPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ExactScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        self.terms.get(m).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// The rational value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<ExactScalar> {
        match self.terms.len() {
            0 => Some(ExactScalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.terms.keys().any(|m| m.contains(s))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL.iter().copied().filter(|&s| self.contains(s)).collect()
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return SymbolicPoly::zero();
        }
        SymbolicPoly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = SymbolicPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replaces every occurrence of `s` by `by`.
    pub fn substitute(&self, s: Symbol, by: &SymbolicPoly) -> Self {
        let mut out = SymbolicPoly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(s);
            let base = SymbolicPoly::term(c.clone(), rest);
            out = &out + &(&base * &by.pow(e));
        }
        out
    }

    /// `|tau|^2 -> t^2`, the canonical form used for all equality checks.
    pub fn normalize_tau(&self) -> Self {
        self.substitute(Symbol::TauSq, &SymbolicPoly::var(Symbol::T).pow(2))
    }

    /// Numerical evaluation with the given symbol values.
    pub fn eval(&self, val: &dyn Fn(Symbol) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut x = c.to_f64().unwrap_or(f64::NAN);
                for &(s, e) in m.factors() {
                    x *= val(s).powi(e as i32);
                }
                x
            })
            .sum()
    }

    pub fn to_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coef = if a.is_integer() {
                a.numer().to_string()
            } else {
                format!("\\frac{{{}}}{{{}}}", a.numer(), a.denom())
            };
            if m.is_one() {
                out.push_str(&coef);
            } else if a.is_one() {
                out.push_str(&m.to_latex());
            } else {
                out.push_str(&format!("{coef} {}", m.to_latex()));
            }
        }
        out
    }

    fn display_order(&self) -> Vec<(&Monomial, &ExactScalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.degree().cmp(&a.0.degree()).then(a.0.cmp(b.0)));
        v
    }
}

impl fmt::Display for SymbolicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a} {m}")?;
            }
        }
        Ok(())
    }
}

impl From<Symbol> for SymbolicPoly {
    fn from(s: Symbol) -> Self {
        SymbolicPoly::var(s)
    }
}

impl<'a> Add<&'a SymbolicPoly> for &'a SymbolicPoly {
    type Output = SymbolicPoly;
    fn add(self, rhs: &SymbolicPoly) -> SymbolicPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&SymbolicPoly> for SymbolicPoly {
    fn add_assign(&mut self, rhs: &SymbolicPoly) {
        for (m, c) in &rhs.terms {
            let slot = self.terms.entry(m.clone()).or_insert_with(ExactScalar::zero);
            *slot += c;
        }
        self.terms.retain(|_, v| !v.is_zero());
    }
}

impl<'a> Sub<&'a SymbolicPoly> for &'a SymbolicPoly {
    type Output = SymbolicPoly;
    fn sub(self, rhs: &SymbolicPoly) -> SymbolicPoly {
        self + &(-rhs)
    }
}

impl Neg for &SymbolicPoly {
    type Output = SymbolicPoly;
    fn neg(self) -> SymbolicPoly {
        SymbolicPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a SymbolicPoly> for &'a SymbolicPoly {
    type Output = SymbolicPoly;
    fn mul(self, rhs: &SymbolicPoly) -> SymbolicPoly {
        let mut acc: BTreeMap<Monomial, ExactScalar> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(ExactScalar::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        SymbolicPoly { terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<SymbolicPoly> for SymbolicPoly {
            type Output = SymbolicPoly;
            fn $f(self, rhs: SymbolicPoly) -> SymbolicPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&SymbolicPoly> for SymbolicPoly {
            type Output = SymbolicPoly;
            fn $f(self, rhs: &SymbolicPoly) -> SymbolicPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<SymbolicPoly> for &SymbolicPoly {
            type Output = SymbolicPoly;
            fn $f(self, rhs: SymbolicPoly) -> SymbolicPoly {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SymbolicPoly {
    type Output = SymbolicPoly;
    fn neg(self) -> SymbolicPoly {
        -&self
    }
}

/// Result of quotienting by the divergence ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub poly: SymbolicPoly,
    /// Monomials containing a divergence symbol that are not linear in it
    /// alone; kept in `poly` and listed for review.
    pub flagged: Vec<Monomial>,
}

/// Deletes every term that is a rational multiple of a single divergence
/// symbol. Nonlinear occurrences are kept and flagged.
pub fn poly_reduce(p: &SymbolicPoly) -> SymbolicPoly {
    reduce_with_flags(p).poly
}

pub fn reduce_with_flags(p: &SymbolicPoly) -> Reduction {
    let mut poly = SymbolicPoly::zero();
    let mut flagged = Vec::new();
    for (m, c) in p.terms() {
        let dd = m.divergence_degree();
        if dd == 1 && m.degree() == 1 {
            continue;
        }
        if dd > 0 {
            flagged.push(m.clone());
        }
        poly.add_term(m.clone(), c.clone());
    }
    Reduction { poly, flagged }
}

/// Canonical comparison form: reduced, then `|tau|^2 = t^2`.
pub fn canonical(p: &SymbolicPoly) -> SymbolicPoly {
    poly_reduce(&p.normalize_tau())
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    monomial: Vec<(Symbol, u32)>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for SymbolicPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr {
                    monomial: m.0.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymbolicPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = PolyRepr::deserialize(d)?;
        let mut p = SymbolicPoly::zero();
        for t in r.terms {
            let n: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            if t.monomial.iter().any(|p| p.1 == 0) {
                return Err(D::Error::custom("zero exponent in monomial"));
            }
            let m = Monomial::from_pairs(&t.monomial);
            p.add_term(m, BigRational::new(n, den));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    fn v(s: Symbol) -> SymbolicPoly {
        SymbolicPoly::var(s)
    }

    #[test]
    fn reduce_drops_linear_divergences() {
        let p = &v(LapR) + &v(R).pow(2);
        assert_eq!(poly_reduce(&p), v(R).pow(2));
        assert_eq!(poly_reduce(&SymbolicPoly::zero()), SymbolicPoly::zero());
        let p = &(&v(R).pow(2).scale(&q(1, 8)) - &v(TauSq)) + &v(Ocal);
        assert_eq!(poly_reduce(&p), &v(R).pow(2).scale(&q(1, 8)) - &v(TauSq));
    }

    #[test]
    fn nonlinear_divergence_terms_are_kept_and_flagged() {
        let p = &(&v(R) * &v(LapR)) + &v(ITau3).scale(&q(2, 3));
        let r = reduce_with_flags(&p);
        assert_eq!(r.poly, &v(R) * &v(LapR));
        assert_eq!(r.flagged, vec![Monomial::from_pairs(&[(R, 1), (LapR, 1)])]);
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let c = q(6, -8);
        assert_eq!(c.numer().to_string(), "-3");
        assert_eq!(c.denom().to_string(), "4");
    }

    #[test]
    fn substitution_and_tau_normalization() {
        let p = &v(TauSq).pow(2) - &v(T).pow(4);
        assert!(p.normalize_tau().is_zero());
        let a = (&v(R) + &v(T)).substitute(T, &v(R));
        assert_eq!(a, v(R).scale(&qi(2)));
    }

    #[test]
    fn json_is_canonical_and_round_trips() {
        let p = &v(R).pow(2).scale(&q(1, 16)) - &v(TauSq).scale(&q(1, 2));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"terms":[{"monomial":[["R",2]],"num":"1","den":"16"},{"monomial":[["tau_sq",1]],"num":"-1","den":"2"}]}"#
        );
        let back: SymbolicPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_and_latex() {
        let p = &v(R).pow(2).scale(&q(-5, 96)) + &v(TauSq).scale(&q(5, 12));
        assert_eq!(p.to_string(), "-5/96 R^2 + 5/12 tau_sq");
        assert_eq!(p.to_latex(), "-\\frac{5}{96} R^{2} + \\frac{5}{12} |\\tau|^{2}");
    }
}
