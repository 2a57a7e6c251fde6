use std::cmp::Ordering;

use serde::Serialize;

use super::charpoly::ShiftedCharPoly;
use super::hp::{hp_euler_gamma, hp_from_f64, hp_from_u64, hp_to_decimal, hp_to_f64, HpComplex, HpFloat};
use super::roots::{solve_roots, RootSet};
use crate::error::{Error, Result};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EigenClass {
    LargePositive,
    LargeNegative,
    Small,
    /// An extra copy of the eigenvalue 1 from a root `y = 0` of `q`.
    Trivial,
}

impl EigenClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EigenClass::LargePositive => "large_positive",
            EigenClass::LargeNegative => "large_negative",
            EigenClass::Small => "small",
            EigenClass::Trivial => "trivial",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Eigenvalue {
    pub lambda: HpComplex,
    pub class: EigenClass,
    pub newton_correction: f64,
    pub backward_error: f64,
    pub converged: bool,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub n: u64,
    pub r: u32,
    pub precision: usize,
    /// `n - r - 1`
    pub trivial_multiplicity: u64,
    /// Roots `y = 0` of `q`, adding to the multiplicity of 1.
    pub extra_trivial: usize,
    /// Large positive, large negative, then the rest by descending real part.
    pub eigenvalues: Vec<Eigenvalue>,
    pub lambda_plus: HpFloat,
    pub lambda_minus: HpFloat,
    /// `λ+ - sqrt n - log sqrt n - (γ - 1/2)`
    pub delta_plus: HpFloat,
    /// `λ- + sqrt n - log sqrt n - (γ - 1/2)`
    pub delta_minus: HpFloat,
    /// Over the small eigenvalues; `None` when there are none.
    pub max_abs: Option<HpFloat>,
    pub max_re: Option<HpFloat>,
    pub min_separation: f64,
    pub simple: bool,
    pub iterations: usize,
}

impl SpectrumReport {
    pub fn all_converged(&self) -> bool {
        self.eigenvalues.iter().all(|e| e.converged)
    }

    pub fn unconverged(&self) -> usize {
        self.eigenvalues.iter().filter(|e| !e.converged).count()
    }

    pub fn small(&self) -> impl Iterator<Item = &Eigenvalue> {
        self.eigenvalues.iter().filter(|e| e.class == EigenClass::Small)
    }

    pub fn max_abs_f64(&self) -> Option<f64> {
        self.max_abs.as_ref().map(hp_to_f64)
    }

    pub fn max_re_f64(&self) -> Option<f64> {
        self.max_re.as_ref().map(hp_to_f64)
    }

    /// `5 log^2 n / sqrt n`, the tolerance used for the asymptotic check.
    pub fn asymptotic_bound(&self) -> f64 {
        let n = self.n as f64;
        5.0 * n.ln().powi(2) / n.sqrt()
    }

    /// `"max_abs=0.983108 max_re=0.983108"`, six decimals.
    pub fn summary_line(&self) -> String {
        let fmt = |v: Option<f64>| v.map_or_else(|| "none".to_string(), |x| format!("{x:.6}"));
        format!(
            "max_abs={} max_re={}",
            fmt(self.max_abs_f64()),
            fmt(self.max_re_f64())
        )
    }

    /// Line-delimited JSON records: header, one per eigenvalue, asymptotic,
    /// summary. Big values are decimal strings.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let mut push = |value: serde_json::Value| {
            out.push_str(&value.to_string());
            out.push('\n');
        };
        push(serde_json::json!({
            "record": "header",
            "version": REPORT_VERSION,
            "n": self.n.to_string(),
            "r": self.r,
            "precision_bits": self.precision,
            "trivial_multiplicity": self.trivial_multiplicity.to_string(),
            "extra_trivial": self.extra_trivial,
            "nontrivial_count": self.eigenvalues.len(),
        }));
        for (index, e) in self.eigenvalues.iter().enumerate() {
            push(serde_json::json!({
                "record": "eigenvalue",
                "index": index,
                "class": e.class,
                "re": hp_to_decimal(&e.lambda.re),
                "im": hp_to_decimal(&e.lambda.im),
                "newton_correction": e.newton_correction,
                "backward_error": e.backward_error,
                "converged": e.converged,
            }));
        }
        push(serde_json::json!({
            "record": "asymptotic",
            "lambda_plus": hp_to_decimal(&self.lambda_plus),
            "lambda_minus": hp_to_decimal(&self.lambda_minus),
            "delta_plus": hp_to_decimal(&self.delta_plus),
            "delta_minus": hp_to_decimal(&self.delta_minus),
            "bound": self.asymptotic_bound(),
        }));
        push(serde_json::json!({
            "record": "summary",
            "max_abs": self.max_abs.as_ref().map(hp_to_decimal),
            "max_re": self.max_re.as_ref().map(hp_to_decimal),
            "min_separation": self.min_separation,
            "simple": self.simple,
            "iterations": self.iterations,
            "all_converged": self.all_converged(),
        }));
        out
    }

    /// One row per eigenvalue under a header row.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("index,class,re,im,newton_correction,backward_error,converged\n");
        for (index, e) in self.eigenvalues.iter().enumerate() {
            out.push_str(&format!(
                "{index},{},{},{},{:e},{:e},{}\n",
                e.class.as_str(),
                hp_to_decimal(&e.lambda.re),
                hp_to_decimal(&e.lambda.im),
                e.newton_correction,
                e.backward_error,
                e.converged
            ));
        }
        out
    }
}

/// Solves `q` and classifies the result.
pub fn spectrum(poly: &ShiftedCharPoly, precision: usize) -> Result<SpectrumReport> {
    let roots = solve_roots(poly, precision)?;
    classify_spectrum(poly, &roots)
}

/// Splits the nontrivial eigenvalues `1 + y` into the two large real ones
/// (the largest and smallest real roots) and the small rest.
pub fn classify_spectrum(poly: &ShiftedCharPoly, roots: &RootSet) -> Result<SpectrumReport> {
    let precision = roots.precision;
    let expected = poly.r() as usize + 1;
    if roots.roots.len() != expected {
        return Err(Error::Structure(format!(
            "expected {expected} roots, got {}",
            roots.roots.len()
        )));
    }
    let one = hp_from_u64(1, precision);
    let real_tol = (-((precision / 2) as f64)).exp2();
    let is_real = |y: &HpComplex| {
        let scale = hp_from_f64(real_tol * y.abs_f64().max(1.0), precision);
        super::hp::hp_abs(&y.im) <= scale
    };

    let mut plus: Option<usize> = None;
    let mut minus: Option<usize> = None;
    let mut real_count = 0;
    for (i, root) in roots.roots.iter().enumerate() {
        if root.exact_zero || !is_real(&root.y) {
            continue;
        }
        real_count += 1;
        if plus.is_none_or(|p| root.y.re > roots.roots[p].y.re) {
            plus = Some(i);
        }
        if minus.is_none_or(|m| root.y.re < roots.roots[m].y.re) {
            minus = Some(i);
        }
    }
    let (Some(plus), Some(minus)) = (plus, minus) else {
        return Err(Error::Structure(format!(
            "n = {}: need two real roots, found {real_count}",
            poly.n()
        )));
    };
    if real_count < 2 || plus == minus {
        return Err(Error::Structure(format!(
            "n = {}: need two real roots, found {real_count}",
            poly.n()
        )));
    }

    let mut eigenvalues: Vec<Eigenvalue> = roots
        .roots
        .iter()
        .enumerate()
        .map(|(i, root)| {
            let class = if root.exact_zero {
                EigenClass::Trivial
            } else if i == plus {
                EigenClass::LargePositive
            } else if i == minus {
                EigenClass::LargeNegative
            } else {
                EigenClass::Small
            };
            let mut lambda = root.y.add_real(&one);
            if matches!(class, EigenClass::LargePositive | EigenClass::LargeNegative) {
                lambda = HpComplex::real(lambda.re);
            }
            Eigenvalue {
                lambda,
                class,
                newton_correction: root.newton_correction,
                backward_error: root.backward_error,
                converged: root.converged,
            }
        })
        .collect();
    eigenvalues.sort_by(|a, b| order(a, b));

    let lambda_plus = eigenvalues[0].lambda.re.clone();
    let lambda_minus = eigenvalues[1].lambda.re.clone();
    let n = hp_from_u64(poly.n(), precision);
    let sqrt_n = n.sqrt();
    let log_sqrt_n = n.ln() / hp_from_u64(2, precision);
    let offset = &log_sqrt_n + &(hp_euler_gamma(precision) - hp_from_f64(0.5, precision));
    let delta_plus = &lambda_plus - &sqrt_n - &offset;
    let delta_minus = &lambda_minus + &sqrt_n - &offset;

    let mut max_abs: Option<HpFloat> = None;
    let mut max_re: Option<HpFloat> = None;
    for e in eigenvalues.iter().filter(|e| e.class == EigenClass::Small) {
        let abs = e.lambda.abs();
        if max_abs.as_ref().is_none_or(|m| abs > *m) {
            max_abs = Some(abs);
        }
        if max_re.as_ref().is_none_or(|m| e.lambda.re > *m) {
            max_re = Some(e.lambda.re.clone());
        }
    }

    Ok(SpectrumReport {
        n: poly.n(),
        r: poly.r(),
        precision,
        trivial_multiplicity: poly.trivial_multiplicity(),
        extra_trivial: roots.roots.iter().filter(|r| r.exact_zero).count(),
        eigenvalues,
        lambda_plus,
        lambda_minus,
        delta_plus,
        delta_minus,
        max_abs,
        max_re,
        min_separation: roots.min_separation,
        simple: roots.simple,
        iterations: roots.iterations,
    })
}

fn rank(class: EigenClass) -> u8 {
    match class {
        EigenClass::LargePositive => 0,
        EigenClass::LargeNegative => 1,
        EigenClass::Small => 2,
        EigenClass::Trivial => 3,
    }
}

fn order(a: &Eigenvalue, b: &Eigenvalue) -> Ordering {
    rank(a.class)
        .cmp(&rank(b.class))
        .then_with(|| b.lambda.re.partial_cmp(&a.lambda.re).unwrap_or(Ordering::Equal))
        .then_with(|| b.lambda.im.partial_cmp(&a.lambda.im).unwrap_or(Ordering::Equal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::roots::DEFAULT_PRECISION;
    use crate::vnk::vnk_fast;

    fn report(n: u64) -> SpectrumReport {
        spectrum(&ShiftedCharPoly::from_table(&vnk_fast(n)), DEFAULT_PRECISION).unwrap()
    }

    #[test]
    fn n_two() {
        let rep = report(2);
        assert_eq!(rep.eigenvalues.len(), 2);
        assert!((hp_to_f64(&rep.lambda_plus) - 2.0).abs() < 1e-40);
        assert!(hp_to_f64(&rep.lambda_minus).abs() < 1e-40);
        assert!(rep.max_abs.is_none() && rep.max_re.is_none());
        assert_eq!(rep.summary_line(), "max_abs=none max_re=none");
    }

    #[test]
    fn n_six() {
        let rep = report(6);
        assert_eq!(rep.eigenvalues.len(), 3);
        assert_eq!(rep.trivial_multiplicity, 3);
        let prod = rep
            .eigenvalues
            .iter()
            .fold(num_complex::Complex64::new(1.0, 0.0), |acc, e| acc * e.lambda.to_c64());
        assert!((prod.re + 1.0).abs() < 1e-12 && prod.im.abs() < 1e-12);
        assert_eq!(rep.small().count(), 1);
        assert!(rep.lambda_plus > hp_from_u64(0, 64) && rep.lambda_minus < hp_from_u64(0, 64));
    }

    #[test]
    fn serialization_shapes() {
        let rep = report(1000);
        let json = rep.to_json_lines();
        let lines: Vec<serde_json::Value> =
            json.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), rep.eigenvalues.len() + 3);
        assert_eq!(lines[0]["record"], "header");
        assert_eq!(lines[0]["n"], "1000");
        assert_eq!(lines[1]["class"], "large_positive");
        assert_eq!(lines.last().unwrap()["record"], "summary");
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), rep.eigenvalues.len() + 1);
        assert!(csv.lines().all(|l| l.split(',').count() == 7));
        assert_eq!(json, report(1000).to_json_lines());
    }

    #[test]
    fn published_columns_give_published_extrema() {
        use crate::reference::{reference_eigen_row, reference_vnk, VNK_REFERENCE_N};
        for n in VNK_REFERENCE_N {
            let poly = ShiftedCharPoly::from_values(n, &reference_vnk(n).unwrap()).unwrap();
            let rep = spectrum(&poly, DEFAULT_PRECISION).unwrap();
            assert!(rep.all_converged() && rep.simple);
            let expected = reference_eigen_row(n).unwrap();
            let (abs, re) = (rep.max_abs_f64().unwrap(), rep.max_re_f64().unwrap());
            assert!((abs - expected.max_abs_f64()).abs() < 1e-6, "n={n} {abs}");
            assert!((re - expected.max_re_f64()).abs() < 1e-6, "n={n} {re}");
        }
    }
}
