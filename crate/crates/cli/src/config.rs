use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_complex::Complex64;

use redheffer::spectra::check_precision;
use redheffer::{CoefficientSequence, ScalarMode, WeightVector};

use crate::args::{CommonArgs, Format, MatrixKind};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Unit,
    /// `w_k = k^{-s}`
    Dirichlet(Complex64),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoeffSpec {
    Unit,
    File(PathBuf),
}

/// Validated settings for one command.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: &'static str,
    pub n: Option<u64>,
    pub k: Option<u32>,
    pub precision: usize,
    pub mode: ScalarMode,
    pub weights: WeightSpec,
    pub coeffs: CoeffSpec,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub verify_dense: bool,
    pub extended: bool,
    pub heroic: bool,
    pub matrix: MatrixKind,
}

pub enum Weights {
    Exact(WeightVector<BigInt>),
    Complex(WeightVector<Complex64>),
}

impl RunConfig {
    pub fn from_args(command: &'static str, args: &CommonArgs) -> Result<Self, CliError> {
        check_precision(args.precision).map_err(CliError::from)?;
        if args.n == Some(0) {
            return Err(CliError::invalid("--n must be at least 1"));
        }
        let weights = parse_weights(&args.weights)?;
        let coeffs = match args.coeffs.as_str() {
            "unit" => CoeffSpec::Unit,
            path => CoeffSpec::File(PathBuf::from(path)),
        };
        let mode = match weights {
            WeightSpec::Dirichlet(_) => ScalarMode::ComplexFloat,
            _ => ScalarMode::ExactInteger,
        };
        Ok(Self {
            command,
            n: args.n,
            k: args.k,
            precision: args.precision,
            mode,
            weights,
            coeffs,
            format: args.format,
            cache_dir: args.cache_dir.clone(),
            verify_dense: args.verify_dense,
            extended: args.extended || args.heroic,
            heroic: args.heroic,
            matrix: args.matrix,
        })
    }

    pub fn require_n(&self) -> Result<u64, CliError> {
        self.n
            .ok_or_else(|| CliError::invalid(format!("{} needs --n", self.command)))
    }

    /// Whether both specs name the all-ones sequence.
    pub fn is_unit(&self) -> bool {
        self.weights == WeightSpec::Unit && self.coeffs == CoeffSpec::Unit
    }

    pub fn coefficients(&self, n: usize) -> Result<CoefficientSequence, CliError> {
        match &self.coeffs {
            CoeffSpec::Unit => Ok(CoefficientSequence::unit(n)),
            CoeffSpec::File(path) => {
                let values = read_integers(path, n)?;
                Ok(CoefficientSequence::new(values)?)
            }
        }
    }

    pub fn weight_vector(&self, n: usize) -> Result<Weights, CliError> {
        match &self.weights {
            WeightSpec::Unit => Ok(Weights::Exact(WeightVector::unit(n))),
            WeightSpec::Dirichlet(s) => Ok(Weights::Complex(WeightVector::dirichlet(*s, n))),
            WeightSpec::File(path) => {
                let values = read_integers(path, n)?;
                Ok(Weights::Exact(WeightVector::new(values)?))
            }
        }
    }
}

fn parse_weights(spec: &str) -> Result<WeightSpec, CliError> {
    if spec == "unit" {
        return Ok(WeightSpec::Unit);
    }
    let Some(s) = spec.strip_prefix("dirichlet:") else {
        return Ok(WeightSpec::File(PathBuf::from(spec)));
    };
    let bad = || CliError::invalid(format!("bad Dirichlet exponent {s:?}; expected <re> or <re>,<im>"));
    let mut parts = s.split(',');
    let re: f64 = parts.next().and_then(|p| p.trim().parse().ok()).ok_or_else(bad)?;
    let im: f64 = match parts.next() {
        Some(p) => p.trim().parse().map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() || !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(WeightSpec::Dirichlet(Complex64::new(re, im)))
}

/// First `n` integers of a file; separators are whitespace or commas, `#`
/// starts a comment.
fn read_integers(path: &Path, n: usize) -> Result<Vec<BigInt>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        for token in line.split(|c: char| c.is_whitespace() || c == ',') {
            if token.is_empty() {
                continue;
            }
            let v: BigInt = token.parse().map_err(|_| {
                CliError::invalid(format!("{}: {token:?} is not an integer", path.display()))
            })?;
            values.push(v);
            if values.len() == n {
                return Ok(values);
            }
        }
    }
    Err(CliError::invalid(format!(
        "{} has {} values, need {n}",
        path.display(),
        values.len()
    )))
}
