//! All-roots solver for monic integer polynomials: companion-matrix seeds in
//! double precision, Aberth iteration at working precision, Newton polish.

use nalgebra::{DMatrix, Schur};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::charpoly::ShiftedCharPoly;
use super::hp::{hp_from_bigint, HpComplex, HpFloat};
use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: usize = 192;
pub const MIN_PRECISION: usize = 64;
pub const MAX_PRECISION: usize = 1024;
pub const ITERATION_CAP: usize = 200;

const GUARD_BITS: usize = 16;
const POLISH_STEPS: usize = 2;

#[derive(Clone, Debug)]
pub struct RootReport {
    pub y: HpComplex,
    /// `|q(y) / q'(y)|` after polishing.
    pub newton_correction: f64,
    /// `|q(y)| / sum_k |c_k| |y|^k`.
    pub backward_error: f64,
    pub converged: bool,
    /// Deflated exact root `y = 0`.
    pub exact_zero: bool,
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub precision: usize,
    pub roots: Vec<RootReport>,
    pub iterations: usize,
    /// Smallest pairwise distance between the nonzero roots; the deflated
    /// zeros are copies of the trivial eigenvalue and do not count.
    pub min_separation: f64,
    /// `false` when two nonzero roots are closer than the precision can
    /// resolve.
    pub simple: bool,
}

impl RootSet {
    pub fn all_converged(&self) -> bool {
        self.roots.iter().all(|r| r.converged)
    }

    pub fn unconverged(&self) -> usize {
        self.roots.iter().filter(|r| !r.converged).count()
    }

    /// Error if any root is flagged.
    pub fn require_converged(&self) -> Result<&Self> {
        match self.unconverged() {
            0 => Ok(self),
            unconverged => Err(Error::NonConvergence {
                unconverged,
                total: self.roots.len(),
                iterations: self.iterations,
            }),
        }
    }
}

pub fn check_precision(precision: usize) -> Result<()> {
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&precision) {
        return Err(Error::InvalidInput(format!(
            "precision must be between {MIN_PRECISION} and {MAX_PRECISION} bits, got {precision}"
        )));
    }
    Ok(())
}

/// Roots of `q(y)`; the nontrivial eigenvalues are `1 + y`.
pub fn solve_roots(poly: &ShiftedCharPoly, precision: usize) -> Result<RootSet> {
    solve_monic(&poly.q_coeffs(), precision)
}

/// Roots of a monic integer polynomial given lowest degree first.
pub fn solve_monic(coeffs: &[BigInt], precision: usize) -> Result<RootSet> {
    check_precision(precision)?;
    let Some(lead) = coeffs.last() else {
        return Err(Error::InvalidInput("empty polynomial".into()));
    };
    if *lead != BigInt::from(1) {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    let zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
    let reduced = &coeffs[zeros..];
    let degree = reduced.len() - 1;

    let mut roots: Vec<RootReport> = (0..zeros)
        .map(|_| RootReport {
            y: HpComplex::zero(precision),
            newton_correction: 0.0,
            backward_error: 0.0,
            converged: true,
            exact_zero: true,
        })
        .collect();
    let mut iterations = 0;

    if degree > 0 {
        let hp_coeffs: Vec<HpFloat> = reduced.iter().map(|c| hp_from_bigint(c, precision)).collect();
        let abs_coeffs: Vec<f64> = reduced
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::MAX).abs())
            .collect();
        let tol = (-((precision - GUARD_BITS) as f64)).exp2();

        let mut ys: Vec<HpComplex> = seeds(reduced)
            .into_iter()
            .map(|z| HpComplex::from_c64(z, precision))
            .collect();
        let mut done = vec![false; degree];
        if degree == 1 {
            ys[0] = HpComplex::real(-hp_coeffs[0].clone());
            done[0] = true;
        }

        while iterations < ITERATION_CAP && done.iter().any(|d| !d) {
            iterations += 1;
            for i in 0..degree {
                if done[i] {
                    continue;
                }
                let (q, dq) = eval_with_derivative(&hp_coeffs, &ys[i]);
                if q.is_zero() {
                    done[i] = true;
                    continue;
                }
                let newton = &q / &dq;
                let mut repulsion = HpComplex::zero(precision);
                for (j, yj) in ys.iter().enumerate() {
                    if j != i {
                        repulsion = &repulsion + &(&ys[i] - yj).recip();
                    }
                }
                let one = HpComplex::from_c64(Complex64::new(1.0, 0.0), precision);
                let step = &newton / &(&one - &(&newton * &repulsion));
                ys[i] = &ys[i] - &step;

                let scale = ys[i].abs_f64().max(1.0);
                let be = backward_error(&q, &ys[i], &abs_coeffs);
                if step.abs_f64() <= tol * scale || be <= tol {
                    done[i] = true;
                }
            }
        }

        for (y, converged) in ys.into_iter().zip(done) {
            let mut y = y;
            for _ in 0..POLISH_STEPS {
                let (q, dq) = eval_with_derivative(&hp_coeffs, &y);
                if q.is_zero() || dq.is_zero() {
                    break;
                }
                y = &y - &(&q / &dq);
            }
            let (q, dq) = eval_with_derivative(&hp_coeffs, &y);
            let newton_correction = if q.is_zero() {
                0.0
            } else if dq.is_zero() {
                f64::INFINITY
            } else {
                (&q / &dq).abs_f64()
            };
            roots.push(RootReport {
                backward_error: backward_error(&q, &y, &abs_coeffs),
                y,
                newton_correction,
                converged,
                exact_zero: false,
            });
        }
    }

    let (min_separation, simple) = separation(&roots, precision);
    Ok(RootSet {
        precision,
        roots,
        iterations,
        min_separation,
        simple,
    })
}

/// `(q(y), q'(y))` by Horner's rule.
fn eval_with_derivative(coeffs: &[HpFloat], y: &HpComplex) -> (HpComplex, HpComplex) {
    let precision = y.precision();
    let mut p = HpComplex::real(coeffs[coeffs.len() - 1].clone());
    let mut dp = HpComplex::zero(precision);
    for c in coeffs[..coeffs.len() - 1].iter().rev() {
        dp = &(&dp * y) + &p;
        p = (&p * y).add_real(c);
    }
    (p, dp)
}

fn backward_error(q: &HpComplex, y: &HpComplex, abs_coeffs: &[f64]) -> f64 {
    let ay = y.abs_f64();
    let scale = abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * ay + c);
    if scale == 0.0 {
        return 0.0;
    }
    q.abs_f64() / scale
}

/// A double root splits into two roots about `2^{-p/2}` apart at precision
/// `p`; pairs closer than `2^{-p/4}` are reported as not simple.
fn separation(roots: &[RootReport], precision: usize) -> (f64, bool) {
    let resolvable = (-((precision / 4) as f64)).exp2();
    let mut min = f64::INFINITY;
    let mut simple = true;
    let nonzero: Vec<&RootReport> = roots.iter().filter(|r| !r.exact_zero).collect();
    for (i, a) in nonzero.iter().enumerate() {
        for b in &nonzero[i + 1..] {
            let d = (&a.y - &b.y).abs_f64();
            min = min.min(d);
            if d <= resolvable * a.y.abs_f64().max(b.y.abs_f64()).max(1.0) {
                simple = false;
            }
        }
    }
    (min, simple)
}

/// Double-precision starting points: eigenvalues of the companion matrix of
/// `q(rho z)`, scaled back by `rho`, then nudged off any exact coincidence.
/// Falls back to a circle of radius `rho`.
fn seeds(coeffs: &[BigInt]) -> Vec<Complex64> {
    let degree = coeffs.len() - 1;
    let c: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::MAX)).collect();
    let rho = (0..degree)
        .map(|k| c[k].abs().powf(1.0 / (degree - k) as f64))
        .fold(0.0, f64::max)
        .max(1e-3);

    let base = companion_eigenvalues(&c, rho).unwrap_or_else(|| {
        (0..degree)
            .map(|k| {
                let theta = std::f64::consts::TAU * k as f64 / degree as f64 + 0.4;
                Complex64::from_polar(rho, theta)
            })
            .collect()
    });
    base.into_iter()
        .enumerate()
        .map(|(k, z)| {
            let nudge = Complex64::from_polar(1e-7, 1.0 + k as f64);
            let z = z * (Complex64::new(1.0, 0.0) + nudge);
            if z.norm() < 1e-12 {
                nudge * rho
            } else {
                z
            }
        })
        .collect()
}

fn companion_eigenvalues(c: &[f64], rho: f64) -> Option<Vec<Complex64>> {
    let degree = c.len() - 1;
    // q(rho z) / rho^d has coefficients c_k rho^(k-d), all at most 1 in size.
    let scaled: Vec<f64> = (0..degree)
        .map(|k| c[k] * rho.powi(k as i32 - degree as i32))
        .collect();
    let mut m = DMatrix::<f64>::zeros(degree, degree);
    for i in 1..degree {
        m[(i, i - 1)] = 1.0;
    }
    for (k, s) in scaled.iter().enumerate() {
        m[(k, degree - 1)] = -s;
    }
    let schur = Schur::try_new(m, f64::EPSILON, 10_000)?;
    let eig: Vec<Complex64> = schur
        .complex_eigenvalues()
        .iter()
        .map(|z| Complex64::new(z.re * rho, z.im * rho))
        .collect();
    eig.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some(eig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vnk::vnk_fast;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quadratic() {
        let set = solve_monic(&big(&[-1, 0, 1]), 128).unwrap();
        assert!(set.all_converged() && set.simple);
        let mut ys: Vec<f64> = set.roots.iter().map(|r| r.y.to_c64().re).collect();
        ys.sort_by(f64::total_cmp);
        assert!((ys[0] + 1.0).abs() < 1e-30 && (ys[1] - 1.0).abs() < 1e-30);
        assert!((set.min_separation - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cubic_product_matches_mertens() {
        // y^3 - 5y - 3; prod (1 + y_i) = -q(-1) = -(-1 + 5 - 3) = -1 = M(6)
        let set = solve_monic(&big(&[-3, -5, 0, 1]), 192).unwrap();
        assert!(set.all_converged());
        let one = HpComplex::from_c64(Complex64::new(1.0, 0.0), 192);
        let prod = set
            .roots
            .iter()
            .fold(one.clone(), |acc, r| &acc * &r.y.add_real(&one.re));
        assert!((prod.to_c64() - Complex64::new(-1.0, 0.0)).norm() < 1e-40);
        for r in &set.roots {
            assert!(r.backward_error < 1e-50, "{}", r.backward_error);
        }
    }

    #[test]
    fn deflates_zero_roots() {
        // y^2 (y^2 + 1)
        let set = solve_monic(&big(&[0, 0, 1, 0, 1]), 96).unwrap();
        assert_eq!(set.roots.iter().filter(|r| r.exact_zero).count(), 2);
        assert!(set.simple);
        assert!((set.min_separation - 2.0).abs() < 1e-20);
        let imag: Vec<f64> = set
            .roots
            .iter()
            .filter(|r| !r.exact_zero)
            .map(|r| r.y.to_c64().im.abs())
            .collect();
        assert!(imag.iter().all(|v| (v - 1.0).abs() < 1e-20));
    }

    #[test]
    fn flags_repeated_roots() {
        // (y - 1)^2 (y + 2)
        let set = solve_monic(&big(&[2, -3, 0, 1]), 128).unwrap();
        assert!(!set.simple);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(solve_monic(&big(&[1, 2]), 32).is_err());
        assert!(solve_monic(&big(&[1, 2]), 4096).is_err());
        assert!(solve_monic(&big(&[1, 2]), 64).is_err());
        assert!(solve_monic(&[], 64).is_err());
    }

    #[test]
    fn degree_one_and_large_n() {
        let set = solve_monic(&big(&[5, 1]), 64).unwrap();
        assert_eq!(set.roots[0].y.to_c64(), Complex64::new(-5.0, 0.0));

        let poly = ShiftedCharPoly::from_table(&vnk_fast(1 << 20));
        let set = solve_roots(&poly, DEFAULT_PRECISION).unwrap();
        assert!(set.all_converged() && set.simple);
        assert_eq!(set.roots.len(), 21);
        assert!(set.iterations < ITERATION_CAP);
        for r in &set.roots {
            assert!(r.backward_error < 1e-45, "{}", r.backward_error);
        }
    }
}
