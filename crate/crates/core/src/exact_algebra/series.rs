use super::coefficient::{CoeffKind, Coefficient};
use super::poly::{q, ExactScalar};
use num::One;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("coefficient of order {order} requested but the series is only known up to o(eps^{trunc})")]
    BeyondTruncation { order: i32, trunc: i32 },
    #[error("order {order} lies below the declared leading order {lead}")]
    BelowLead { order: i32, lead: i32 },
    #[error("order {order} lies beyond the truncation order {trunc}")]
    StoredBeyondTruncation { order: i32, trunc: i32 },
    #[error("leading coefficient must be exactly 1 at order 0")]
    NotUnitLeading,
    #[error("operation needs a truncated series (exact input would give an infinite expansion)")]
    NeedsTruncation,
}

/// Finite expansion in `eps = e^{-r/2}`: orders are integers in units of
/// `eps`, so `e^{2r}` is order -4 and `e^{-2r}` is order 4.
///
/// `lead` is the declared lowest order (all lower coefficients vanish);
/// `trunc = Some(q)` means the remainder is `o(eps^q)`, `None` means exact.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticSeries<C: Coefficient> {
    lead: i32,
    trunc: Option<i32>,
    coeffs: BTreeMap<i32, C>,
}

fn min_opt(a: Option<i32>, b: Option<i32>) -> Option<i32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Coefficient> AsymptoticSeries<C> {
    pub fn zero(lead: i32, trunc: Option<i32>) -> Self {
        AsymptoticSeries { lead, trunc, coeffs: BTreeMap::new() }
    }

    /// `c * eps^order`, known exactly.
    pub fn monomial(order: i32, c: C) -> Self {
        let mut s = Self::zero(order, None);
        if !c.is_zero() {
            s.coeffs.insert(order, c);
        }
        s
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn from_coeffs(
        lead: i32,
        trunc: Option<i32>,
        items: impl IntoIterator<Item = (i32, C)>,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(lead, trunc);
        for (k, c) in items {
            s.insert(k, c)?;
        }
        Ok(s)
    }

    /// Adds `c` to the coefficient of order `k`.
    pub fn insert(&mut self, k: i32, c: C) -> Result<(), SeriesError> {
        if k < self.lead {
            return Err(SeriesError::BelowLead { order: k, lead: self.lead });
        }
        if let Some(t) = self.trunc {
            if k > t {
                return Err(SeriesError::StoredBeyondTruncation { order: k, trunc: t });
            }
        }
        let v = match self.coeffs.remove(&k) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !v.is_zero() {
            self.coeffs.insert(k, v);
        }
        Ok(())
    }

    pub fn kind(&self) -> CoeffKind {
        C::kind()
    }

    pub fn lead(&self) -> i32 {
        self.lead
    }

    pub fn trunc(&self) -> Option<i32> {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    /// Coefficient of `eps^k`; an error beyond the truncation order.
    pub fn coeff(&self, k: i32) -> Result<C, SeriesError> {
        if let Some(t) = self.trunc {
            if k > t {
                return Err(SeriesError::BeyondTruncation { order: k, trunc: t });
            }
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(C::zero))
    }

    /// Stored nonzero coefficients in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, &C)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowers the truncation order to `min(trunc, t)`.
    pub fn truncate(&self, t: i32) -> Self {
        let trunc = min_opt(self.trunc, Some(t));
        let mut s = Self::zero(self.lead, trunc);
        s.coeffs = self.coeffs.iter().filter(|(k, _)| **k <= t).map(|(k, c)| (*k, c.clone())).collect();
        s
    }

    /// Multiplication by `eps^k`.
    pub fn shift(&self, k: i32) -> Self {
        AsymptoticSeries {
            lead: self.lead + k,
            trunc: self.trunc.map(|t| t + k),
            coeffs: self.coeffs.iter().map(|(o, c)| (o + k, c.clone())).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let trunc = min_opt(self.trunc, o.trunc);
        let mut s = Self::zero(self.lead.min(o.lead), trunc);
        for (k, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if trunc.is_none_or(|t| *k <= t) {
                s.insert(*k, c.clone()).expect("orders checked");
            }
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        self.map(|x| x.scaled(c))
    }

    /// Coefficientwise map into another (or the same) coefficient ring.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> AsymptoticSeries<D> {
        let mut s = AsymptoticSeries::<D>::zero(self.lead, self.trunc);
        for (k, c) in &self.coeffs {
            s.insert(*k, f(c)).expect("orders preserved");
        }
        s
    }

    /// Cauchy product. Leading orders add; the remainder is
    /// `o(eps^min(tx + ly, ty + lx))`.
    pub fn mul(&self, o: &Self) -> Self {
        combine2(self, o, |a, b| a.times(b))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Splits `1 + y` for a series with unit constant term and no negative
    /// orders. `y` gets the tightest valid leading order.
    fn unit_split(&self) -> Result<(Self, i32), SeriesError> {
        if self.lead < 0 || self.coeff(0)? != C::one() {
            return Err(SeriesError::NotUnitLeading);
        }
        let mut y = self.clone();
        y.coeffs.remove(&0);
        let first = y.coeffs.keys().next().copied();
        match (first, self.trunc) {
            (None, _) => Ok((Self::zero(1, self.trunc), 1)),
            (Some(_), None) => Err(SeriesError::NeedsTruncation),
            (Some(f), Some(_)) => {
                y.lead = f;
                Ok((y, f))
            }
        }
    }

    /// Binomial series `sum_k binom(a, k) y^k` for `x = 1 + y`.
    fn binomial(&self, a: &ExactScalar) -> Result<Self, SeriesError> {
        let (y, first) = self.unit_split()?;
        let mut out = Self::one();
        out.trunc = self.trunc;
        if y.is_zero() {
            return Ok(out);
        }
        let t = self.trunc.expect("checked in unit_split");
        let mut coef = ExactScalar::one();
        let mut ypow = Self::one();
        let mut k: i64 = 1;
        while (k as i32) * first <= t {
            coef = &coef * &(a - ExactScalar::from_integer((k - 1).into())) / ExactScalar::from_integer(k.into());
            ypow = ypow.mul(&y);
            out = out.add(&ypow.scale(&coef));
            k += 1;
        }
        Ok(out.truncate(t))
    }

    /// `x^{-1/2}` for `x = 1 + o(1)`.
    pub fn inv_sqrt(&self) -> Result<Self, SeriesError> {
        self.binomial(&q(-1, 2))
    }

    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        self.binomial(&q(1, 2))
    }

    /// Neumann series for `x^{-1}`, valid for noncommutative coefficients.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let (y, first) = self.unit_split()?;
        let mut out = Self::one();
        out.trunc = self.trunc;
        if y.is_zero() {
            return Ok(out);
        }
        let t = self.trunc.expect("checked in unit_split");
        let my = y.neg();
        let mut p = Self::one();
        let mut k = 1;
        while k * first <= t {
            p = p.mul(&my);
            out = out.add(&p);
            k += 1;
        }
        Ok(out.truncate(t))
    }

    /// Renders `sum c_k e^{-k r/2} + o(...)` in LaTeX.
    pub fn to_latex(&self) -> String {
        let mut parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let e = exp_latex(*k);
                let body = c.latex();
                match e {
                    None => body,
                    Some(e) => format!("\\left({body}\\right){e}"),
                }
            })
            .collect();
        if parts.is_empty() {
            parts.push("0".into());
        }
        if let Some(t) = self.trunc {
            parts.push(format!("o\\left({}\\right)", exp_latex(t).unwrap_or_else(|| "1".into())));
        }
        parts.join(" + ")
    }
}

/// `eps^k` as a power of `e^r`; `None` for k = 0.
pub fn exp_latex(k: i32) -> Option<String> {
    if k == 0 {
        return None;
    }
    let n = -k;
    let body = if n % 2 == 0 {
        match n / 2 {
            1 => "r".to_string(),
            -1 => "-r".to_string(),
            m => format!("{m}r"),
        }
    } else if n == 1 {
        "r/2".to_string()
    } else if n == -1 {
        "-r/2".to_string()
    } else {
        format!("{n}r/2")
    };
    Some(format!("e^{{{body}}}"))
}

/// Bilinear combination of two series with the product truncation rule.
pub fn combine2<A: Coefficient, B: Coefficient, D: Coefficient>(
    x: &AsymptoticSeries<A>,
    y: &AsymptoticSeries<B>,
    f: impl Fn(&A, &B) -> D,
) -> AsymptoticSeries<D> {
    let lead = x.lead + y.lead;
    let trunc = min_opt(x.trunc.map(|t| t + y.lead), y.trunc.map(|t| t + x.lead));
    let mut s = AsymptoticSeries::<D>::zero(lead, trunc);
    for (i, a) in &x.coeffs {
        for (j, b) in &y.coeffs {
            let k = i + j;
            if trunc.is_none_or(|t| k <= t) {
                s.insert(k, f(a, b)).expect("order within bounds");
            }
        }
    }
    s
}

/// Trilinear combination with the product truncation rule.
pub fn combine3<A: Coefficient, B: Coefficient, C: Coefficient, D: Coefficient>(
    x: &AsymptoticSeries<A>,
    y: &AsymptoticSeries<B>,
    z: &AsymptoticSeries<C>,
    f: impl Fn(&A, &B, &C) -> D,
) -> AsymptoticSeries<D> {
    let lead = x.lead + y.lead + z.lead;
    let trunc = min_opt(
        min_opt(x.trunc.map(|t| t + y.lead + z.lead), y.trunc.map(|t| t + x.lead + z.lead)),
        z.trunc.map(|t| t + x.lead + y.lead),
    );
    let mut s = AsymptoticSeries::<D>::zero(lead, trunc);
    for (i, a) in &x.coeffs {
        for (j, b) in &y.coeffs {
            for (k, c) in &z.coeffs {
                let o = i + j + k;
                if trunc.is_none_or(|t| o <= t) {
                    s.insert(o, f(a, b, c)).expect("order within bounds");
                }
            }
        }
    }
    s
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr<C> {
    kind: CoeffKind,
    unit: String,
    lead: i32,
    trunc: Option<i32>,
    coeffs: Vec<OrderRepr<C>>,
}

#[derive(Serialize, Deserialize)]
struct OrderRepr<C> {
    order: i32,
    value: C,
}

const UNIT: &str = "exp(-r/2)";

impl<C: Coefficient> Serialize for AsymptoticSeries<C> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            kind: C::kind(),
            unit: UNIT.into(),
            lead: self.lead,
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|(k, c)| OrderRepr { order: *k, value: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coefficient> Deserialize<'de> for AsymptoticSeries<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::<C>::deserialize(d)?;
        if r.kind != C::kind() {
            return Err(D::Error::custom(format!("coefficient kind {:?} does not match {:?}", r.kind, C::kind())));
        }
        if r.unit != UNIT {
            return Err(D::Error::custom(format!("unsupported unit {}", r.unit)));
        }
        Self::from_coeffs(r.lead, r.trunc, r.coeffs.into_iter().map(|o| (o.order, o.value)))
            .map_err(D::Error::custom)
    }
}

impl<C: Coefficient> AsymptoticSeries<C> {
    /// True when no stored coefficient is nonzero below order `k`.
    pub fn vanishes_below(&self, k: i32) -> bool {
        self.coeffs.keys().all(|o| *o >= k)
    }

    pub fn max_stored_order(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }
}
