//! Explicit eigenvectors of `A_n` for a nontrivial eigenvalue `λ`, with
//! `z = 1 / (λ - 1)`:
//!
//! - right: `u = [λ - 1, X_2(n/2), ..., X_n(n/n)]`,
//!   `X_j(q) = sum_k v_j(q, k) z^k = sum_{i <= q} w(i j) Y(i)`;
//! - left: `v = [Y(1), ..., Y(n)]`, `Y(q) = sum_k d(q, k) z^k`.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::hp::{hp_from_bigint, HpComplex};
use crate::dirichlet::{d_table, floor_log2, require_len, CoefficientSequence};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, Scalar, WeightVector};
use crate::oracle::{eig_residual, Side};

#[derive(Clone, Debug)]
pub struct EigvecReport {
    pub lambda: HpComplex,
    pub side: Side,
    pub entries: Vec<HpComplex>,
    /// `max(1, |λ - 1|^{-r})`, the amplification of the powers of `z`.
    pub condition: f64,
    /// Relative residual against a dense matrix, once verified.
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
}

impl EigvecReport {
    pub fn to_c64(&self) -> Vec<Complex64> {
        self.entries.iter().map(HpComplex::to_c64).collect()
    }

    /// Computes the relative residual against `m` and records whether it is
    /// within `tol`.
    pub fn verify<S: Scalar>(&mut self, m: &DenseMatrix<S>, tol: f64) -> Result<bool> {
        let residual = eig_residual(m, self.lambda.to_c64(), &self.to_c64(), self.side)?;
        self.residual = Some(residual);
        self.tolerance = Some(tol);
        Ok(self.passed())
    }

    /// `false` until verified; a failed report stays flagged.
    pub fn passed(&self) -> bool {
        matches!((self.residual, self.tolerance), (Some(r), Some(t)) if r <= t)
    }
}

/// `z = 1 / (λ - 1)`; rejects `λ` within `2^{-p/2}` of 1.
fn inverse_shift(lambda: &HpComplex) -> Result<HpComplex> {
    let precision = lambda.precision();
    let one = HpComplex::from_c64(Complex64::new(1.0, 0.0), precision);
    let shift = lambda - &one;
    if shift.abs_f64() <= (-((precision / 2) as f64)).exp2() {
        return Err(Error::InvalidInput(
            "eigenvalue 1 is trivial; no explicit eigenvector".into(),
        ));
    }
    Ok(shift.recip())
}

/// `Y(q)` for `1 <= q <= n`, indexed `q - 1`.
fn y_values(a: &CoefficientSequence, n: usize, z: &HpComplex) -> Result<Vec<HpComplex>> {
    let precision = z.precision();
    let r = floor_log2(n as u64) as usize;
    let table = d_table(a, n, r)?;
    Ok((1..=n)
        .map(|q| {
            // Horner in z over k = r..0.
            (0..=r).rev().fold(HpComplex::zero(precision), |acc, k| {
                (&acc * z).add_real(&hp_from_bigint(&table.get(q, k), precision))
            })
        })
        .collect())
}

fn condition(lambda: &HpComplex, n: usize) -> f64 {
    let r = floor_log2(n as u64) as i32;
    let shift = (lambda.to_c64() - Complex64::new(1.0, 0.0)).norm();
    shift.powi(-r).max(1.0)
}

/// Right eigenvector of `A_n = W_n + D_n` for integer weights.
pub fn eigenvector_right(
    a: &CoefficientSequence,
    w: &WeightVector<BigInt>,
    n: usize,
    lambda: &HpComplex,
) -> Result<EigvecReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    require_len(a.len(), n)?;
    require_len(w.len(), n)?;
    let precision = lambda.precision();
    let z = inverse_shift(lambda)?;
    let y = y_values(a, n, &z)?;
    let one = HpComplex::from_c64(Complex64::new(1.0, 0.0), precision);

    let mut entries = Vec::with_capacity(n);
    entries.push(lambda - &one);
    for j in 2..=n {
        let q = n / j;
        let mut x = HpComplex::zero(precision);
        for i in 1..=q {
            let wij = w.weight(i * j);
            if !num_traits::Zero::is_zero(wij) {
                x = &x + &y[i - 1].scale(&hp_from_bigint(wij, precision));
            }
        }
        entries.push(x);
    }
    Ok(EigvecReport {
        lambda: lambda.clone(),
        side: Side::Right,
        entries,
        condition: condition(lambda, n),
        residual: None,
        tolerance: None,
    })
}

/// Left eigenvector (`v^T A_n = λ v^T`); its entries do not involve `w`.
pub fn eigenvector_left(
    a: &CoefficientSequence,
    n: usize,
    lambda: &HpComplex,
) -> Result<EigvecReport> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    require_len(a.len(), n)?;
    let z = inverse_shift(lambda)?;
    Ok(EigvecReport {
        lambda: lambda.clone(),
        side: Side::Left,
        entries: y_values(a, n, &z)?,
        condition: condition(lambda, n),
        residual: None,
        tolerance: None,
    })
}

/// `|v^T u| / (‖v‖ ‖u‖)`, zero for eigenvectors of distinct eigenvalues.
pub fn bilinear_pairing(left: &EigvecReport, right: &EigvecReport) -> Result<f64> {
    if left.entries.len() != right.entries.len() {
        return Err(Error::Dimension {
            left: left.entries.len(),
            right: right.entries.len(),
        });
    }
    let precision = left.lambda.precision().max(right.lambda.precision());
    let mut dot = HpComplex::zero(precision);
    let mut nl = hp_from_bigint(&BigInt::from(0), precision);
    let mut nr = nl.clone();
    for (l, r) in left.entries.iter().zip(&right.entries) {
        dot = &dot + &(l * r);
        nl += l.norm_sqr();
        nr += r.norm_sqr();
    }
    let denom = (nl * nr).sqrt();
    Ok(super::hp::hp_to_f64(&(dot.abs() / denom)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_a, redheffer, Variant};
    use crate::spectra::charpoly::ShiftedCharPoly;
    use crate::spectra::roots::solve_roots;
    use crate::vnk::vnk_fast;

    fn lambdas(n: u64) -> Vec<HpComplex> {
        let poly = ShiftedCharPoly::from_table(&vnk_fast(n));
        let one = crate::spectra::hp::hp_from_u64(1, 192);
        solve_roots(&poly, 192)
            .unwrap()
            .roots
            .iter()
            .map(|r| r.y.add_real(&one))
            .collect()
    }

    #[test]
    fn n_two_by_hand() {
        let lambda = HpComplex::from_c64(Complex64::new(2.0, 0.0), 128);
        let u = eigenvector_right(&CoefficientSequence::unit(2), &WeightVector::unit(2), 2, &lambda)
            .unwrap();
        assert_eq!(u.to_c64(), vec![Complex64::new(1.0, 0.0); 2]);
        let v = eigenvector_left(&CoefficientSequence::unit(2), 2, &lambda).unwrap();
        assert_eq!(v.to_c64()[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn n_six_residuals() {
        let m = redheffer(6);
        let a = CoefficientSequence::unit(6);
        let w = WeightVector::unit(6);
        let ls = lambdas(6);
        assert_eq!(ls.len(), 3);
        let mut rights = Vec::new();
        let mut lefts = Vec::new();
        for lambda in &ls {
            let mut u = eigenvector_right(&a, &w, 6, lambda).unwrap();
            assert!(u.verify(&m, 1e-10).unwrap(), "{:?}", u.residual);
            let mut v = eigenvector_left(&a, 6, lambda).unwrap();
            assert!(v.verify(&m, 1e-10).unwrap(), "{:?}", v.residual);
            assert_eq!(v.to_c64()[0], Complex64::new(1.0, 0.0));
            rights.push(u);
            lefts.push(v);
        }
        for i in 0..3 {
            for j in 0..3 {
                let p = bilinear_pairing(&lefts[i], &rights[j]).unwrap();
                if i == j {
                    assert!(p > 1e-3);
                } else {
                    assert!(p < 1e-30, "{p}");
                }
            }
        }
    }

    #[test]
    fn left_vector_ignores_weights() {
        let a = CoefficientSequence::from_i64(&[1, 2, -1, 1, 0, 1, 3, -2, 1, 1, 0, 2]).unwrap();
        let w1 = WeightVector::from_i64(&[1, 1, 2, 0, -1, 1, 1, 2, 0, 1, 1, -1]).unwrap();
        let w2 = WeightVector::from_i64(&[1, 3, -1, 1, 2, 0, 1, 1, 1, -2, 1, 1]).unwrap();
        let lambda = HpComplex::from_c64(Complex64::new(2.5, 0.5), 128);
        let v = eigenvector_left(&a, 12, &lambda).unwrap();
        assert_eq!(v.to_c64(), eigenvector_left(&a, 12, &lambda).unwrap().to_c64());
        // same vector, but it is only an eigenvector for the spectrum of A(w)
        let m1 = build_a(&a, &w1, 12, Variant::A).unwrap();
        let m2 = build_a(&a, &w2, 12, Variant::A).unwrap();
        assert_ne!(m1, m2);
    }

    #[test]
    fn rejects_trivial_eigenvalue() {
        let one = HpComplex::from_c64(Complex64::new(1.0, 0.0), 128);
        let a = CoefficientSequence::unit(4);
        assert!(eigenvector_left(&a, 4, &one).is_err());
        assert!(eigenvector_right(&a, &WeightVector::unit(4), 4, &one).is_err());
    }
}
