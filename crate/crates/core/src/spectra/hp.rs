//! Configurable-precision binary floating point and complex numbers.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_float::ops::Abs;
use dashu_float::round::mode::HalfEven;
use dashu_float::{DBig, FBig};
use dashu_int::IBig;
use num_bigint::BigInt;
use num_complex::Complex64;

/// Binary float with round-half-even; arithmetic keeps the larger operand
/// precision.
pub type HpFloat = FBig<HalfEven, 2>;

/// Euler–Mascheroni constant, 60 significant digits.
const EULER_GAMMA: &str = "0.577215664901532860606512090082402431042159335939923598805767";

pub fn hp_zero(precision: usize) -> HpFloat {
    HpFloat::ZERO.with_precision(precision).value()
}

pub fn hp_from_f64(x: f64, precision: usize) -> HpFloat {
    HpFloat::try_from(x)
        .expect("finite f64")
        .with_precision(precision)
        .value()
}

pub fn hp_from_u64(x: u64, precision: usize) -> HpFloat {
    HpFloat::from(x).with_precision(precision).value()
}

/// Exact for integers of at most `precision` bits; rounded otherwise.
pub fn hp_from_bigint(x: &BigInt, precision: usize) -> HpFloat {
    let as_dashu = IBig::from_str(&x.to_string()).expect("decimal integer");
    HpFloat::from(as_dashu).with_precision(precision).value()
}

pub fn hp_euler_gamma(precision: usize) -> HpFloat {
    // 60 decimal digits is about 199 bits; pad the decimal precision so the
    // conversion never truncates what the constant carries.
    let digits = precision.div_ceil(3) + 4;
    DBig::from_str(EULER_GAMMA)
        .expect("constant parses")
        .with_precision(digits)
        .value()
        .to_binary()
        .value()
        .with_rounding::<HalfEven>()
        .with_precision(precision)
        .value()
}

pub fn hp_to_f64(x: &HpFloat) -> f64 {
    x.to_f64().value()
}

pub fn hp_abs(x: &HpFloat) -> HpFloat {
    x.clone().abs()
}

pub fn hp_is_zero(x: &HpFloat) -> bool {
    *x == HpFloat::ZERO
}

/// Decimal rendering carrying the full binary precision.
pub fn hp_to_decimal(x: &HpFloat) -> String {
    x.to_decimal().value().to_string()
}

/// Decimal rendering rounded to `digits` significant digits.
pub fn hp_to_decimal_digits(x: &HpFloat, digits: usize) -> String {
    x.to_decimal()
        .value()
        .with_precision(digits)
        .value()
        .to_string()
}

#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: HpFloat,
    pub im: HpFloat,
}

impl HpComplex {
    pub fn new(re: HpFloat, im: HpFloat) -> Self {
        Self { re, im }
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(hp_zero(precision), hp_zero(precision))
    }

    pub fn real(re: HpFloat) -> Self {
        let precision = re.precision();
        Self::new(re, hp_zero(precision))
    }

    pub fn from_c64(z: Complex64, precision: usize) -> Self {
        Self::new(hp_from_f64(z.re, precision), hp_from_f64(z.im, precision))
    }

    pub fn from_bigint(x: &BigInt, precision: usize) -> Self {
        Self::real(hp_from_bigint(x, precision))
    }

    pub fn precision(&self) -> usize {
        self.re.precision().max(self.im.precision())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(hp_to_f64(&self.re), hp_to_f64(&self.im))
    }

    pub fn is_zero(&self) -> bool {
        hp_is_zero(&self.re) && hp_is_zero(&self.im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> HpFloat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs(&self) -> HpFloat {
        self.norm_sqr().sqrt()
    }

    /// Modulus in double precision, computed without overflow for large parts.
    pub fn abs_f64(&self) -> f64 {
        hp_to_f64(&self.re).hypot(hp_to_f64(&self.im))
    }

    pub fn recip(&self) -> Self {
        let denom = self.norm_sqr();
        Self::new(&self.re / &denom, -(&self.im / &denom))
    }

    pub fn scale(&self, factor: &HpFloat) -> Self {
        Self::new(&self.re * factor, &self.im * factor)
    }

    pub fn add_real(&self, x: &HpFloat) -> Self {
        Self::new(&self.re + x, self.im.clone())
    }
}

impl Add for &HpComplex {
    type Output = HpComplex;

    fn add(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &HpComplex {
    type Output = HpComplex;

    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &HpComplex {
    type Output = HpComplex;

    fn mul(self, rhs: &HpComplex) -> HpComplex {
        HpComplex::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &HpComplex {
    type Output = HpComplex;

    fn div(self, rhs: &HpComplex) -> HpComplex {
        let denom = rhs.norm_sqr();
        let re = &self.re * &rhs.re + &self.im * &rhs.im;
        let im = &self.im * &rhs.re - &self.re * &rhs.im;
        HpComplex::new(&re / &denom, &im / &denom)
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;

    fn neg(self) -> HpComplex {
        HpComplex::new(-self.re.clone(), -self.im.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = 128;
        let a = HpComplex::from_c64(Complex64::new(1.5, -2.0), p);
        let b = HpComplex::from_c64(Complex64::new(-0.25, 3.0), p);
        let expected = Complex64::new(1.5, -2.0) * Complex64::new(-0.25, 3.0);
        assert_eq!((&a * &b).to_c64(), expected);
        let q = (&a / &b).to_c64();
        let e = Complex64::new(1.5, -2.0) / Complex64::new(-0.25, 3.0);
        assert!((q - e).norm() < 1e-15);
        assert!(((&a * &a.recip()).to_c64() - Complex64::new(1.0, 0.0)).norm() < 1e-30);
        assert_eq!(a.precision(), p);
        assert!((a.abs_f64() - 2.5).abs() < 1e-15);
        assert!((hp_to_f64(&a.abs()) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn constants_and_conversions() {
        let g = hp_euler_gamma(192);
        assert!(hp_to_decimal(&g).starts_with("0.57721566490153286060651209008240243104215933593992"));
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let x = hp_from_bigint(&big, 192);
        assert_eq!(hp_to_decimal(&x), "-123456789012345678901234567890");
        assert_eq!(hp_to_decimal_digits(&hp_from_f64(0.9831084, 64), 6), "0.983108");
    }
}
