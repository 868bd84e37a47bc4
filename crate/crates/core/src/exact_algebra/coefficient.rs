use super::poly::{ExactScalar, SymbolicPoly};
use num::ToPrimitive;
use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt::Debug;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    Symbolic,
    Numeric,
    Matrix { dim: usize },
    DiagEndo,
}

/// Coefficient ring of an asymptotic series. Series over different
/// coefficient types cannot be combined: mixing kinds fails to compile.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync + Serialize + DeserializeOwned {
    fn kind() -> CoeffKind;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &ExactScalar) -> Self;
    fn latex(&self) -> String;
}

impl Coefficient for SymbolicPoly {
    fn kind() -> CoeffKind {
        CoeffKind::Symbolic
    }
    fn zero() -> Self {
        SymbolicPoly::zero()
    }
    fn one() -> Self {
        SymbolicPoly::one()
    }
    fn is_zero(&self) -> bool {
        SymbolicPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &ExactScalar) -> Self {
        self.scale(c)
    }
    fn latex(&self) -> String {
        self.to_latex()
    }
}

impl Coefficient for f64 {
    fn kind() -> CoeffKind {
        CoeffKind::Numeric
    }
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &ExactScalar) -> Self {
        self * c.to_f64().unwrap_or(f64::NAN)
    }
    fn latex(&self) -> String {
        format!("{self:.12}")
    }
}

/// Square matrix of polynomials. `FrameTensor` is the 4x4 case in the
/// adapted frame; the 6x6 case acts on 2-forms.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix<const N: usize>(pub [[SymbolicPoly; N]; N]);

pub type FrameTensor = PolyMatrix<4>;

impl<const N: usize> PolyMatrix<N> {
    pub fn zero() -> Self {
        PolyMatrix(std::array::from_fn(|_| std::array::from_fn(|_| SymbolicPoly::zero())))
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = SymbolicPoly::one();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> SymbolicPoly) -> Self {
        PolyMatrix(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn diag(d: [SymbolicPoly; N]) -> Self {
        let mut m = Self::zero();
        for (i, x) in d.into_iter().enumerate() {
            m.0[i][i] = x;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &SymbolicPoly {
        &self.0[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: SymbolicPoly) {
        self.0[i][j] = v;
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: SymbolicPoly) {
        self.0[j][i] = v.clone();
        self.0[i][j] = v;
    }

    /// Sets `(i,j) = v` and `(j,i) = -v`.
    pub fn set_anti(&mut self, i: usize, j: usize, v: SymbolicPoly) {
        self.0[j][i] = -&v;
        self.0[i][j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn map(&self, f: impl Fn(&SymbolicPoly) -> SymbolicPoly) -> Self {
        Self::from_fn(|i, j| f(&self.0[i][j]))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..N).all(|i| (0..N).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..N).all(|i| (0..N).all(|j| self.0[i][j] == -&self.0[j][i]))
    }

    pub fn mat_mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            let mut acc = SymbolicPoly::zero();
            for k in 0..N {
                if !self.0[i][k].is_zero() && !o.0[k][j].is_zero() {
                    acc += &(&self.0[i][k] * &o.0[k][j]);
                }
            }
            acc
        })
    }

    /// The `M x M` block starting at `(off, off)`.
    pub fn block<const M: usize>(&self, off: usize) -> PolyMatrix<M> {
        PolyMatrix::<M>::from_fn(|i, j| self.0[off + i][off + j].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SymbolicPoly)> {
        self.0.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| (i, j, x)))
    }
}

impl<const N: usize> Serialize for PolyMatrix<N> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&SymbolicPoly>> = self.0.iter().map(|r| r.iter().collect()).collect();
        rows.serialize(s)
    }
}

impl<'de, const N: usize> Deserialize<'de> for PolyMatrix<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<SymbolicPoly>> = Vec::deserialize(d)?;
        if rows.len() != N || rows.iter().any(|r| r.len() != N) {
            return Err(D::Error::custom(format!("expected a {N}x{N} matrix")));
        }
        Ok(Self::from_fn(|i, j| rows[i][j].clone()))
    }
}

impl<const N: usize> Coefficient for PolyMatrix<N> {
    fn kind() -> CoeffKind {
        CoeffKind::Matrix { dim: N }
    }
    fn zero() -> Self {
        PolyMatrix::zero()
    }
    fn one() -> Self {
        PolyMatrix::identity()
    }
    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| &self.0[i][j] + &o.0[i][j])
    }
    fn times(&self, o: &Self) -> Self {
        self.mat_mul(o)
    }
    fn negate(&self) -> Self {
        self.map(|x| -x)
    }
    fn scaled(&self, c: &ExactScalar) -> Self {
        self.map(|x| x.scale(c))
    }
    fn latex(&self) -> String {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| r.iter().map(|x| x.to_latex()).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join(" \\\\ "))
    }
}

/// Diagonal endomorphism of the tangent space of a sphere `S(r)`:
/// eigenvalues along frame directions 1, 2, 3.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagEndo(pub [SymbolicPoly; 3]);

impl DiagEndo {
    pub fn new(a: SymbolicPoly, b: SymbolicPoly, c: SymbolicPoly) -> Self {
        DiagEndo([a, b, c])
    }

    pub fn rational(v: [(i64, i64); 3]) -> Self {
        DiagEndo(v.map(|(n, d)| SymbolicPoly::rat(n, d)))
    }

    pub fn get(&self, k: usize) -> &SymbolicPoly {
        &self.0[k]
    }

    pub fn map(&self, f: impl Fn(&SymbolicPoly) -> SymbolicPoly) -> Self {
        DiagEndo(std::array::from_fn(|k| f(&self.0[k])))
    }

    pub fn trace(&self) -> SymbolicPoly {
        &(&self.0[0] + &self.0[1]) + &self.0[2]
    }
}

impl Coefficient for DiagEndo {
    fn kind() -> CoeffKind {
        CoeffKind::DiagEndo
    }
    fn zero() -> Self {
        DiagEndo(std::array::from_fn(|_| SymbolicPoly::zero()))
    }
    fn one() -> Self {
        DiagEndo(std::array::from_fn(|_| SymbolicPoly::one()))
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
    fn plus(&self, o: &Self) -> Self {
        DiagEndo(std::array::from_fn(|k| &self.0[k] + &o.0[k]))
    }
    fn times(&self, o: &Self) -> Self {
        DiagEndo(std::array::from_fn(|k| &self.0[k] * &o.0[k]))
    }
    fn negate(&self) -> Self {
        self.map(|x| -x)
    }
    fn scaled(&self, c: &ExactScalar) -> Self {
        self.map(|x| x.scale(c))
    }
    fn latex(&self) -> String {
        format!(
            "\\mathrm{{diag}}\\left({}, {}, {}\\right)",
            self.0[0].to_latex(),
            self.0[1].to_latex(),
            self.0[2].to_latex()
        )
    }
}
