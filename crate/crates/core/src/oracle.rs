//! Brute-force exact references used to validate the formula-based paths:
//! fraction-free determinants, interpolated characteristic polynomials and
//! eigenpair residuals.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Scalar};

/// Largest dimension [`charpoly_exact`] accepts.
pub const CHARPOLY_CAP: usize = 512;

/// Integer polynomial with coefficients stored lowest degree first. The
/// leading coefficient is nonzero unless the polynomial is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - root`
    pub fn linear(root: i64) -> Self {
        Self::from_i64(&[-root, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `p(x + shift)`
    pub fn shift(&self, shift: i64) -> Self {
        let lin = Self::from_i64(&[shift, 1]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            acc.mul(&lin).add(&Self::new(vec![c.clone()]))
        })
    }

    /// Exact division by `x - root`; `None` if the remainder is nonzero.
    pub fn divide_linear(&self, root: &BigInt) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.degree();
        let mut quotient = vec![BigInt::zero(); d];
        let mut carry = BigInt::zero();
        for i in (0..=d).rev() {
            let value = &self.coeffs[i] + &carry * root;
            if i == 0 {
                return value.is_zero().then(|| Self::new(quotient));
            }
            quotient[i - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }

    /// Multiplicity of `root` as a zero of a nonzero polynomial.
    pub fn root_multiplicity(&self, root: &BigInt) -> usize {
        let mut count = 0;
        let mut p = self.clone();
        while let Some(q) = p.divide_linear(root) {
            count += 1;
            p = q;
        }
        count
    }
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn det_exact(m: &DenseMatrix<BigInt>) -> BigInt {
    let n = m.dim();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (upper, lower) = a.split_at_mut(k + 1);
        let pivot_row = &upper[k];
        let pivot = &pivot_row[k];
        for row in lower.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let num = &row[j] * pivot - &lead * &pivot_row[j];
                // Sylvester's identity guarantees exact division.
                row[j] = num / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `k`-th interpolation node: 0, 1, -1, 2, -2, ...
fn node(k: usize) -> i64 {
    let half = k.div_ceil(2) as i64;
    if k % 2 == 1 {
        half
    } else {
        -half
    }
}

/// Exact characteristic polynomial `det(xI - M)` by evaluating the
/// determinant at `n + 1` integer nodes and interpolating.
pub fn charpoly_exact(m: &DenseMatrix<BigInt>) -> Result<IntegerPolynomial> {
    let n = m.dim();
    if n > CHARPOLY_CAP {
        return Err(Error::CapExceeded {
            what: "exact characteristic polynomial",
            n: n as u64,
            cap: CHARPOLY_CAP as u64,
        });
    }
    let nodes: Vec<i64> = (0..=n).map(node).collect();
    let values: Vec<BigInt> = nodes
        .par_iter()
        .map(|&x| {
            let shifted = DenseMatrix::from_fn(n, |i, j| {
                let entry = -m.get(i, j).clone();
                if i == j {
                    entry + BigInt::from(x)
                } else {
                    entry
                }
            });
            det_exact(&shifted)
        })
        .collect();

    // Newton divided differences. For an integer polynomial at integer
    // nodes every divided difference is an integer, so division is exact.
    let mut dd = values;
    for level in 1..=n {
        for i in (level..=n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigInt::from(nodes[i] - nodes[i - level]);
            let (q, r) = num.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::InvalidInput(
                    "non-integral divided difference during interpolation".into(),
                ));
            }
            dd[i] = q;
        }
    }
    let mut poly = IntegerPolynomial::new(vec![dd[n].clone()]);
    for t in (0..n).rev() {
        poly = poly
            .mul(&IntegerPolynomial::linear(nodes[t]))
            .add(&IntegerPolynomial::new(vec![dd[t].clone()]));
    }
    Ok(poly)
}

/// Which side of the matrix a vector is an eigenvector of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `M v = λ v`
    Right,
    /// `M^T v = λ v`
    Left,
}

#[derive(Default, Clone, Copy)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Default, Clone, Copy)]
pub(crate) struct CompensatedComplex {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplex {
    pub(crate) fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

pub(crate) fn norm2(v: &[Complex64]) -> f64 {
    // Scale by the largest modulus so huge entries do not overflow.
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let mut acc = CompensatedSum::default();
    for z in v {
        acc.add((z / scale).norm_sqr());
    }
    scale * acc.value().sqrt()
}

/// Relative residual `‖M v − λ v‖₂ / ‖v‖₂` (or with `M^T` for [`Side::Left`]).
pub fn eig_residual<S: Scalar>(
    m: &DenseMatrix<S>,
    lambda: Complex64,
    vec: &[Complex64],
    side: Side,
) -> Result<f64> {
    let n = m.dim();
    if vec.len() != n {
        return Err(Error::Dimension {
            left: n,
            right: vec.len(),
        });
    }
    let norm = norm2(vec);
    if norm == 0.0 {
        return Err(Error::InvalidInput("zero eigenvector".into()));
    }
    let mc = m.to_complex();
    let residual: Vec<Complex64> = (0..n)
        .map(|i| {
            let mut acc = CompensatedComplex::default();
            for (j, vj) in vec.iter().enumerate() {
                let entry = match side {
                    Side::Right => *mc.get(i, j),
                    Side::Left => *mc.get(j, i),
                };
                if entry != Complex64::zero() {
                    acc.add(entry * vj);
                }
            }
            acc.add(-lambda * vec[i]);
            acc.value()
        })
        .collect();
    Ok(norm2(&residual) / norm)
}

/// Cofactor-expansion determinant; exponential, for tiny test matrices.
pub fn det_cofactor(m: &DenseMatrix<BigInt>) -> BigInt {
    fn rec(m: &DenseMatrix<BigInt>, rows: &[usize], cols: &mut Vec<usize>) -> BigInt {
        let Some((&r, rest)) = rows.split_first() else {
            return BigInt::one();
        };
        let mut total = BigInt::zero();
        for idx in 0..cols.len() {
            let c = cols.remove(idx);
            let entry = m.get(r, c);
            if !entry.is_zero() {
                let minor = rec(m, rest, cols);
                if idx % 2 == 0 {
                    total += entry * minor;
                } else {
                    total -= entry * minor;
                }
            }
            cols.insert(idx, c);
        }
        total
    }
    let rows: Vec<usize> = (0..m.dim()).collect();
    let mut cols = rows.clone();
    rec(m, &rows, &mut cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::mertens_table;
    use crate::matrix::redheffer;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix<BigInt> {
        DenseMatrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-3i64..=3)))
    }

    #[test]
    fn identity_and_redheffer_determinants() {
        for n in 0..6 {
            assert_eq!(det_exact(&DenseMatrix::identity(n)), BigInt::one());
        }
        assert_eq!(det_exact(&redheffer(6)), BigInt::from(-1));
        assert_eq!(det_exact(&redheffer(2)), BigInt::zero());
        let mertens = mertens_table(60);
        for n in 1..=60 {
            assert_eq!(det_exact(&redheffer(n)), BigInt::from(mertens[n - 1]));
        }
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for n in 1..=8 {
            for _ in 0..6 {
                let m = random_matrix(&mut rng, n);
                assert_eq!(det_exact(&m), det_cofactor(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn charpoly_small_cases() {
        let p2 = charpoly_exact(&redheffer(2)).unwrap();
        assert_eq!(p2, IntegerPolynomial::from_i64(&[0, -2, 1]));
        let p_id = charpoly_exact(&DenseMatrix::identity(3)).unwrap();
        assert_eq!(p_id, IntegerPolynomial::linear(1).pow(3));
        // (x-1)^3 ((x-1)^3 - 5(x-1) - 3)
        let y = IntegerPolynomial::linear(1);
        let q = y.pow(3).add(&y.mul(&IntegerPolynomial::from_i64(&[-5]))).add(&IntegerPolynomial::from_i64(&[-3]));
        let expected = y.pow(3).mul(&q);
        assert_eq!(charpoly_exact(&redheffer(6)).unwrap(), expected);
    }

    #[test]
    fn charpoly_constant_term_is_signed_det() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 1..=12 {
            let m = random_matrix(&mut rng, n);
            let p = charpoly_exact(&m).unwrap();
            assert!(p.is_monic());
            assert_eq!(p.degree(), n);
            let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            assert_eq!(p.coeff(0), sign * det_exact(&m));
            // trace appears as -c_{n-1}
            let trace: BigInt = (0..n).map(|i| m.get(i, i).clone()).sum();
            assert_eq!(p.coeff(n - 1), -trace);
        }
    }

    #[test]
    fn charpoly_cap_enforced() {
        let m = DenseMatrix::<BigInt>::zeros(CHARPOLY_CAP + 1);
        assert!(matches!(
            charpoly_exact(&m),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn polynomial_helpers() {
        let p = IntegerPolynomial::linear(1).pow(4).mul(&IntegerPolynomial::linear(-2));
        assert_eq!(p.root_multiplicity(&BigInt::one()), 4);
        assert_eq!(p.root_multiplicity(&BigInt::from(-2)), 1);
        assert_eq!(p.root_multiplicity(&BigInt::from(3)), 0);
        let q = IntegerPolynomial::from_i64(&[3, 0, 1]);
        assert_eq!(q.shift(1), IntegerPolynomial::from_i64(&[4, 2, 1]));
        assert_eq!(q.eval(&BigInt::from(2)), BigInt::from(7));
    }

    #[test]
    fn residual_basics() {
        let id = DenseMatrix::<BigInt>::identity(4);
        let e2 = vec![
            Complex64::zero(),
            Complex64::one(),
            Complex64::zero(),
            Complex64::zero(),
        ];
        assert_eq!(eig_residual(&id, Complex64::one(), &e2, Side::Right).unwrap(), 0.0);
        let wrong = eig_residual(&id, Complex64::new(2.0, 0.0), &e2, Side::Right).unwrap();
        assert!((wrong - 1.0).abs() < 1e-15);
        let zero = vec![Complex64::zero(); 4];
        assert!(eig_residual(&id, Complex64::one(), &zero, Side::Left).is_err());
        assert!(eig_residual(&id, Complex64::one(), &e2[..3], Side::Left).is_err());
    }

    #[test]
    fn residual_for_redheffer_two() {
        // C_2 = [[1,1],[1,1]] has eigenpair (2, (1,1)).
        let m = redheffer(2);
        let u = vec![Complex64::one(), Complex64::one()];
        assert!(eig_residual(&m, Complex64::new(2.0, 0.0), &u, Side::Right).unwrap() < 1e-15);
        let bad = eig_residual(&m, Complex64::new(3.0, 0.0), &u, Side::Right).unwrap();
        assert!(bad > 0.5);
    }
}
