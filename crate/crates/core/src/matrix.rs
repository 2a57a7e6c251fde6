//! Dense matrices attached to a Dirichlet series: `E_n(k)`, `D_n`, `W_n`,
//! `A_n = W_n + D_n` and `Ã_n = W_n + D_n^{-1}`.
//!
//! Two scalar modes exist: exact integers ([`BigInt`]) and double-precision
//! complex numbers ([`Complex64`]). Builders are generic over [`Scalar`];
//! [`AnyMatrix`] carries the mode at runtime and refuses mixed-mode products.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::dirichlet::{dirichlet_inverse, require_len, CoefficientSequence};
use crate::error::{Error, Result};

/// Scalar types a matrix or weight vector can hold.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const MODE: ScalarMode;

    fn from_bigint(v: &BigInt) -> Self;

    fn to_complex(&self) -> Complex64;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    ExactInteger,
    ComplexFloat,
}

impl Scalar for BigInt {
    const MODE: ScalarMode = ScalarMode::ExactInteger;

    fn from_bigint(v: &BigInt) -> Self {
        v.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl Scalar for Complex64 {
    const MODE: ScalarMode = ScalarMode::ComplexFloat;

    fn from_bigint(v: &BigInt) -> Self {
        Complex64::new(v.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Weights `w_1..w_n` placed down the first column of `W_n`; `w_1 = 1`.
///
/// `w_1` never appears in the matrix (its `(1,1)` entry is zero) but enters
/// every weighted sum.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector<S> {
    values: Vec<S>,
}

impl<S: Scalar> WeightVector<S> {
    pub fn new(values: Vec<S>) -> Result<Self> {
        match values.first() {
            None => Err(Error::InvalidInput("weight vector is empty".into())),
            Some(w1) if !w1.is_one() => Err(Error::InvalidInput(format!(
                "first weight must be 1, got {w1:?}"
            ))),
            Some(_) => Ok(Self { values }),
        }
    }

    pub fn unit(len: usize) -> Self {
        assert!(len >= 1, "length must be positive");
        Self {
            values: vec![S::one(); len],
        }
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `w_k` for `1 <= k <= len`.
    pub fn weight(&self, k: usize) -> &S {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(One::is_one)
    }
}

impl WeightVector<BigInt> {
    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }
}

impl WeightVector<Complex64> {
    /// `w_k = k^{-s}` for complex `s`.
    pub fn dirichlet(s: Complex64, len: usize) -> Self {
        assert!(len >= 1, "length must be positive");
        let values = (1..=len)
            .map(|k| {
                if k == 1 {
                    Complex64::one()
                } else {
                    (-s * (k as f64).ln()).exp()
                }
            })
            .collect();
        Self { values }
    }
}

/// Square matrix in row-major order. Indices are 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    dim: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![S::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Dimension {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> ScalarMode {
        S::MODE
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: S) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn row(&self, row: usize) -> &[S] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn to_complex(&self) -> DenseMatrix<Complex64> {
        DenseMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(Scalar::to_complex).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x.clone() + y.clone())
                .collect(),
        })
    }

    /// Standard matrix product.
    pub fn product(&self, right: &Self) -> Result<Self> {
        self.check_dim(right)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let x = self.get(i, l);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let y = right.get(l, j);
                    if !y.is_zero() {
                        let acc = out.get(i, j).clone() + x.clone() * y.clone();
                        out.set(i, j, acc);
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

/// A dense matrix whose scalar mode is only known at runtime.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyMatrix {
    Exact(DenseMatrix<BigInt>),
    Complex(DenseMatrix<Complex64>),
}

impl AnyMatrix {
    pub fn mode(&self) -> ScalarMode {
        match self {
            AnyMatrix::Exact(_) => ScalarMode::ExactInteger,
            AnyMatrix::Complex(_) => ScalarMode::ComplexFloat,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyMatrix::Exact(m) => m.dim(),
            AnyMatrix::Complex(m) => m.dim(),
        }
    }

    /// Product in the common scalar mode; operands of different modes are
    /// rejected, never coerced.
    pub fn product(&self, right: &AnyMatrix) -> Result<AnyMatrix> {
        match (self, right) {
            (AnyMatrix::Exact(l), AnyMatrix::Exact(r)) => Ok(AnyMatrix::Exact(l.product(r)?)),
            (AnyMatrix::Complex(l), AnyMatrix::Complex(r)) => {
                Ok(AnyMatrix::Complex(l.product(r)?))
            }
            _ => Err(Error::ModeMismatch(
                "matrix product of exact-integer and complex-float operands",
            )),
        }
    }
}

impl From<DenseMatrix<BigInt>> for AnyMatrix {
    fn from(m: DenseMatrix<BigInt>) -> Self {
        AnyMatrix::Exact(m)
    }
}

impl From<DenseMatrix<Complex64>> for AnyMatrix {
    fn from(m: DenseMatrix<Complex64>) -> Self {
        AnyMatrix::Complex(m)
    }
}

/// Which of the two matrices attached to `(a, w)` to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `A_n = W_n + D_n`
    A,
    /// `Ã_n = W_n + D_n^{-1}`
    Atilde,
}

/// `E_n(k)`: ones at `(i, k i)` (1-based), zero elsewhere.
pub fn build_e<S: Scalar>(n: usize, k: usize) -> DenseMatrix<S> {
    assert!(k >= 1, "k must be positive");
    let mut m = DenseMatrix::zeros(n);
    for i in 1..=n / k {
        m.set(i - 1, k * i - 1, S::one());
    }
    m
}

/// `D_n = sum_k a_k E_n(k)`.
pub fn build_d<S: Scalar>(a: &CoefficientSequence, n: usize) -> Result<DenseMatrix<S>> {
    require_len(a.len(), n)?;
    let mut m = DenseMatrix::zeros(n);
    for k in 1..=n {
        let ak = a.coeff(k);
        if ak.is_zero() {
            continue;
        }
        let value = S::from_bigint(ak);
        for i in 1..=n / k {
            m.set(i - 1, k * i - 1, value.clone());
        }
    }
    Ok(m)
}

/// `W_n`: first column `(0, w_2, ..., w_n)`.
pub fn build_w<S: Scalar>(w: &WeightVector<S>, n: usize) -> Result<DenseMatrix<S>> {
    require_len(w.len(), n)?;
    let mut m = DenseMatrix::zeros(n);
    for i in 2..=n {
        m.set(i - 1, 0, w.weight(i).clone());
    }
    Ok(m)
}

/// `A_n` or `Ã_n`. `B_n` and `C_n` are the unit-coefficient (and unit-weight)
/// specializations.
pub fn build_a<S: Scalar>(
    a: &CoefficientSequence,
    w: &WeightVector<S>,
    n: usize,
    variant: Variant,
) -> Result<DenseMatrix<S>> {
    require_len(w.len(), n)?;
    let mut m: DenseMatrix<S> = match variant {
        Variant::A => build_d(a, n)?,
        Variant::Atilde => build_d(&dirichlet_inverse(&a.truncated(n)?), n)?,
    };
    for i in 2..=n {
        let entry = m.get(i - 1, 0).clone() + w.weight(i).clone();
        m.set(i - 1, 0, entry);
    }
    Ok(m)
}

/// The Redheffer matrix `C_n` (unit coefficients and weights).
pub fn redheffer(n: usize) -> DenseMatrix<BigInt> {
    build_a(
        &CoefficientSequence::unit(n),
        &WeightVector::unit(n),
        n,
        Variant::A,
    )
    .expect("unit sequences have the right length")
}
