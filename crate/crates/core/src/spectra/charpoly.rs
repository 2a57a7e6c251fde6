use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dirichlet::{dirichlet_inverse, floor_log2, require_len, CoefficientSequence};
use crate::error::{Error, Result};
use crate::matrix::{Scalar, Variant, WeightVector};
use crate::oracle::IntegerPolynomial;
use crate::vnk::VnkTable;

/// `p_n(x) = (x-1)^{n-r-1} q(x-1)` with
/// `q(y) = y^{r+1} - sum_{k=1}^{r} v(n,k) y^{r-k}`, `r = floor(log2 n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedCharPoly {
    n: u64,
    r: u32,
    /// `v(n, 1..=r)`
    values: Vec<BigInt>,
}

impl ShiftedCharPoly {
    /// From `v(n, k)` for `k = 0..=r` (the `k = 0` entry is not used) or for
    /// `k = 1..=r` when `values.len() == r`.
    pub fn from_values(n: u64, values: &[BigInt]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        let r = floor_log2(n);
        let tail = match values.len() {
            len if len == r as usize + 1 => &values[1..],
            len if len == r as usize => values,
            len => {
                return Err(Error::Missing(format!(
                    "v({n}, k) for 1 <= k <= {r}: got {len} values"
                )))
            }
        };
        Ok(Self {
            n,
            r,
            values: tail.to_vec(),
        })
    }

    /// Unit case, from the top row of a fast table.
    pub fn from_table(table: &VnkTable) -> Self {
        Self::from_values(table.n(), &table.row(table.n())).expect("table row has r + 1 entries")
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `v(n, k)` for `1 <= k <= r`.
    pub fn vnk(&self, k: u32) -> Option<&BigInt> {
        (k >= 1).then(|| self.values.get(k as usize - 1)).flatten()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Coefficients of `q(y)`, lowest degree first; length `r + 2`.
    pub fn q_coeffs(&self) -> Vec<BigInt> {
        let r = self.r as usize;
        let mut c = vec![BigInt::zero(); r + 2];
        c[r + 1] = BigInt::one();
        for (k, v) in self.values.iter().enumerate() {
            c[r - (k + 1)] = -v;
        }
        c
    }

    pub fn q(&self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.q_coeffs())
    }

    /// `n - r - 1`, the multiplicity of the eigenvalue 1 outside `q`.
    pub fn trivial_multiplicity(&self) -> u64 {
        self.n - self.r as u64 - 1
    }

    /// Roots `y = 0` of `q`: extra copies of the eigenvalue 1. Zero whenever
    /// `v(n, r) != 0`.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.q_coeffs().iter().take_while(|c| c.is_zero()).count()
    }

    /// Full multiplicity of the eigenvalue 1.
    pub fn total_trivial_multiplicity(&self) -> u64 {
        self.trivial_multiplicity() + self.zero_root_multiplicity() as u64
    }

    /// `p_n(x)` in the monomial basis. Degree `n`; only for small `n`.
    pub fn expand(&self) -> IntegerPolynomial {
        let shifted = self.q().shift(-1);
        IntegerPolynomial::linear(1)
            .pow(self.trivial_multiplicity() as usize)
            .mul(&shifted)
    }

    /// `q(0) = -v(n, r)` (zero when `r = 0`).
    pub fn q_at_zero(&self) -> BigInt {
        self.q_coeffs()[0].clone()
    }
}

/// `det C_n = sum_{k=0}^{r} (-1)^k v(n, k)` from the unit-case values
/// `v(n, 0..=r)`.
pub fn det_from_vnk(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (k, v)| if k % 2 == 0 { acc + v } else { acc - v })
}

/// `det A_n = sum_k w_k b_k` (`b` the Dirichlet inverse of `a`) or
/// `det Ã_n = sum_k w_k a_k`.
pub fn det_weighted<S: Scalar>(
    a: &CoefficientSequence,
    w: &WeightVector<S>,
    n: usize,
    variant: Variant,
) -> Result<S> {
    require_len(a.len(), n)?;
    require_len(w.len(), n)?;
    let coeffs = match variant {
        Variant::A => dirichlet_inverse(&a.truncated(n)?).into_values(),
        Variant::Atilde => a.values()[..n].to_vec(),
    };
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(S::zero(), |acc, (k, c)| {
            acc + w.weight(k + 1).clone() * S::from_bigint(c)
        }))
}

/// Sign-corrected constant term: `(-1)^n p_n(0)`, which equals `det A_n`.
pub fn det_from_charpoly(p: &IntegerPolynomial) -> BigInt {
    let c0 = p.coeff(0);
    if p.degree() % 2 == 0 {
        c0
    } else {
        -c0
    }
}

/// Whether every coefficient of `q` past the leading one is non-positive, as
/// in the unit case.
pub fn has_unit_sign_pattern(poly: &ShiftedCharPoly) -> bool {
    poly.values().iter().all(|v| !v.is_negative())
}
