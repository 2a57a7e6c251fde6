//! Exact arithmetic on truncated Dirichlet coefficient sequences.
//!
//! Sequences are stored 0-based: element `i` of a `Vec` holds the
//! coefficient of `(i + 1)^{-s}`. The accessors on [`CoefficientSequence`]
//! and [`DnkTable`] take the 1-based index used in the formulas.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficients `a_1..a_N` of a formal Dirichlet series with `a_1 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence {
    values: Vec<BigInt>,
}

impl CoefficientSequence {
    /// Builds a sequence from `a_1..a_N`. Rejects empty input and `a_1 != 1`.
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        match values.first() {
            None => Err(Error::InvalidInput("coefficient sequence is empty".into())),
            Some(first) if !first.is_one() => Err(Error::InvalidInput(format!(
                "leading coefficient must be 1, got {first}"
            ))),
            Some(_) => Ok(Self { values }),
        }
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// All-ones sequence (the coefficients of the zeta function).
    pub fn unit(len: usize) -> Self {
        assert!(len >= 1, "length must be positive");
        Self {
            values: vec![BigInt::one(); len],
        }
    }

    /// `(1, 0, 0, ...)`, the identity for Dirichlet convolution.
    pub fn identity(len: usize) -> Self {
        assert!(len >= 1, "length must be positive");
        let mut values = vec![BigInt::zero(); len];
        values[0] = BigInt::one();
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficient `a_k` for `1 <= k <= len`.
    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.values[k - 1]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn into_values(self) -> Vec<BigInt> {
        self.values
    }

    pub fn is_unit(&self) -> bool {
        self.values.iter().all(One::is_one)
    }

    /// Truncates (or checks) to the first `len` coefficients.
    pub fn truncated(&self, len: usize) -> Result<Self> {
        require_len(self.len(), len)?;
        Ok(Self {
            values: self.values[..len].to_vec(),
        })
    }
}

pub(crate) fn require_len(actual: usize, needed: usize) -> Result<()> {
    if actual < needed {
        Err(Error::Length { needed, actual })
    } else {
        Ok(())
    }
}

/// Dirichlet convolution `(a * b)_m = sum_{d | m} a_d b_{m/d}` for `m <= n`.
///
/// The result carries no normalization guarantee, so it is returned as a
/// plain 0-based vector.
pub fn dirichlet_convolve(
    a: &CoefficientSequence,
    b: &CoefficientSequence,
    n: usize,
) -> Result<Vec<BigInt>> {
    convolve_slices(a.values(), b.values(), n)
}

pub(crate) fn convolve_slices(a: &[BigInt], b: &[BigInt], n: usize) -> Result<Vec<BigInt>> {
    require_len(a.len(), n)?;
    require_len(b.len(), n)?;
    let mut out = vec![BigInt::zero(); n];
    for d in 1..=n {
        let ad = &a[d - 1];
        if ad.is_zero() {
            continue;
        }
        for q in 1..=n / d {
            let bq = &b[q - 1];
            if !bq.is_zero() {
                out[d * q - 1] += ad * bq;
            }
        }
    }
    Ok(out)
}

/// Formal inverse `b` of `a` under Dirichlet convolution, truncated to the
/// length of `a`.
pub fn dirichlet_inverse(a: &CoefficientSequence) -> CoefficientSequence {
    let n = a.len();
    let mut b = vec![BigInt::zero(); n];
    b[0] = BigInt::one();
    // b[m] is final once every proper divisor of m has been visited, so a
    // forward sweep pushing -a[d] * b[m] into b[d*m] realizes
    // b[n] = -sum_{d | n, d > 1} a[d] b[n/d].
    for m in 1..=n {
        if b[m - 1].is_zero() {
            continue;
        }
        let bm = b[m - 1].clone();
        for d in 2..=n / m {
            let ad = &a.values[d - 1];
            if !ad.is_zero() {
                b[d * m - 1] -= ad * &bm;
            }
        }
    }
    CoefficientSequence { values: b }
}

/// Möbius function `mu(1..=n)` by a linear sieve.
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return Vec::new();
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            composite[ip] = true;
            if i % p == 0 {
                mu[ip] = 0;
                break;
            }
            mu[ip] = -mu[i];
        }
    }
    mu.remove(0);
    mu
}

/// Mertens function values `M(1..=n)`.
pub fn mertens_table(n: usize) -> Vec<i64> {
    let mut acc = 0i64;
    mobius_sieve(n)
        .into_iter()
        .map(|mu| {
            acc += i64::from(mu);
            acc
        })
        .collect()
}

/// Coefficients `d(n, k)` of `(L(s) - 1)^k` for `1 <= n <= N`, `0 <= k <= Kmax`.
#[derive(Clone, Debug)]
pub struct DnkTable {
    n_max: usize,
    k_max: usize,
    // levels[k][n - 1]
    levels: Vec<Vec<BigInt>>,
}

impl DnkTable {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `d(n, k)`; zero for `k > Kmax`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.level(k)
            .map(|row| row[n - 1].clone())
            .unwrap_or_default()
    }

    pub fn level(&self, k: usize) -> Option<&[BigInt]> {
        self.levels.get(k).map(Vec::as_slice)
    }
}

/// Builds the `d(n, k)` table from the recurrence
/// `d(n, k) = sum_{i | n, i > 1} a(i) d(n/i, k-1)`.
pub fn d_table(a: &CoefficientSequence, n_max: usize, k_max: usize) -> Result<DnkTable> {
    if n_max == 0 {
        return Err(Error::InvalidInput("table size must be positive".into()));
    }
    require_len(a.len(), n_max)?;
    let mut levels = Vec::with_capacity(k_max + 1);
    let mut base = vec![BigInt::zero(); n_max];
    base[0] = BigInt::one();
    levels.push(base);
    for k in 1..=k_max {
        let prev = &levels[k - 1];
        let mut row = vec![BigInt::zero(); n_max];
        // Entries below 2^(k-1) in the previous level are zero.
        let start = 1usize.checked_shl((k - 1) as u32).unwrap_or(usize::MAX);
        if start <= n_max {
            for j in start..=n_max / 2 {
                let dj = &prev[j - 1];
                if dj.is_zero() {
                    continue;
                }
                for i in 2..=n_max / j {
                    let ai = &a.values[i - 1];
                    if !ai.is_zero() {
                        row[i * j - 1] += ai * dj;
                    }
                }
            }
        }
        levels.push(row);
    }
    Ok(DnkTable {
        n_max,
        k_max,
        levels,
    })
}

/// `floor(log2(n))` for `n >= 1`.
pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1, "log2 of zero");
    63 - n.leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // Convolution by explicit divisor enumeration.
    fn brute_convolve(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
        (1..=n)
            .map(|m| {
                (1..=m)
                    .filter(|d| m % d == 0)
                    .map(|d| a[d - 1] * b[m / d - 1])
                    .sum()
            })
            .collect()
    }

    // Ordered factorizations of n into exactly k parts, each >= 2.
    fn count_factorizations(n: usize, k: usize) -> u64 {
        if k == 0 {
            return u64::from(n == 1);
        }
        (2..=n)
            .filter(|i| n % i == 0)
            .map(|i| count_factorizations(n / i, k - 1))
            .sum()
    }

    #[test]
    fn rejects_bad_leading_coefficient() {
        assert!(CoefficientSequence::from_i64(&[2, 1]).is_err());
        assert!(CoefficientSequence::new(Vec::new()).is_err());
    }

    #[test]
    fn divisor_count_from_unit_convolution() {
        let ones = CoefficientSequence::unit(6);
        let out = dirichlet_convolve(&ones, &ones, 6).unwrap();
        assert_eq!(out[5], BigInt::from(4));
        let expected = brute_convolve(&[1; 6], &[1; 6], 6);
        assert_eq!(out, big(&expected));
    }

    #[test]
    fn identity_is_neutral() {
        let a = CoefficientSequence::from_i64(&[1, -3, 5, 0, 7, 2, -1, 4]).unwrap();
        let e = CoefficientSequence::identity(8);
        assert_eq!(dirichlet_convolve(&a, &e, 8).unwrap(), a.values().to_vec());
        assert_eq!(dirichlet_convolve(&a, &e, 5).unwrap(), a.values()[..5].to_vec());
    }

    #[test]
    fn ones_times_mobius_is_identity() {
        let mu: Vec<i64> = mobius_sieve(8).into_iter().map(i64::from).collect();
        let ones = CoefficientSequence::unit(8);
        let mu_seq = CoefficientSequence::from_i64(&mu).unwrap();
        let out = dirichlet_convolve(&ones, &mu_seq, 8).unwrap();
        assert_eq!(out, big(&brute_convolve(&[1; 8], &mu, 8)));
        assert_eq!(out, CoefficientSequence::identity(8).into_values());
    }

    #[test]
    fn convolution_length_mismatch() {
        let a = CoefficientSequence::unit(4);
        let b = CoefficientSequence::unit(8);
        assert!(matches!(
            dirichlet_convolve(&a, &b, 6),
            Err(Error::Length { needed: 6, actual: 4 })
        ));
    }

    #[test]
    fn inverse_of_ones_is_mobius() {
        let b = dirichlet_inverse(&CoefficientSequence::unit(30));
        let mu: Vec<i64> = mobius_sieve(30).into_iter().map(i64::from).collect();
        assert_eq!(b.values(), big(&mu).as_slice());
        assert_eq!(&b.values()[..6], big(&[1, -1, -1, 0, -1, 1]).as_slice());
    }

    #[test]
    fn inverse_small_cases() {
        let e = CoefficientSequence::identity(10);
        assert_eq!(dirichlet_inverse(&e), e);
        let a = CoefficientSequence::from_i64(&[1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            dirichlet_inverse(&a).into_values(),
            big(&[1, -1, 0, 1, 0, 0, 0, -1])
        );
    }

    #[test]
    fn mobius_values() {
        let mu = mobius_sieve(10);
        assert_eq!(mu[0], 1);
        assert_eq!(mu[3], 0);
        assert_eq!(mu[5], 1);
        assert_eq!(mu.iter().map(|&m| i64::from(m)).sum::<i64>(), -1);
        assert_eq!(mertens_table(10)[9], -1);
        assert!(mobius_sieve(0).is_empty());
    }

    #[test]
    fn mobius_matches_factorization() {
        fn mu_by_trial(mut n: usize) -> i8 {
            let mut sign = 1;
            let mut p = 2;
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    sign = -sign;
                }
                p += 1;
            }
            if n > 1 {
                sign = -sign;
            }
            sign
        }
        let mu = mobius_sieve(2000);
        for n in 1..=2000 {
            assert_eq!(mu[n - 1], mu_by_trial(n), "n = {n}");
        }
    }

    #[test]
    fn d_table_base_cases() {
        let t = d_table(&CoefficientSequence::unit(64), 64, 6).unwrap();
        assert_eq!(t.get(1, 0), BigInt::one());
        assert_eq!(t.get(2, 0), BigInt::zero());
        assert_eq!(t.get(7, 3), BigInt::zero());
        assert_eq!(t.get(12, 2), BigInt::from(4));
        assert_eq!(t.get(5, 40), BigInt::zero());
        for k in 0..=6 {
            for n in 1..(1usize << k).min(65) {
                assert!(t.get(n, k).is_zero(), "d({n},{k})");
            }
        }
    }

    #[test]
    fn d_table_counts_ordered_factorizations() {
        let n_max = 200;
        let t = d_table(&CoefficientSequence::unit(n_max), n_max, 7).unwrap();
        for n in 1..=n_max {
            let mut row_sum = BigInt::zero();
            for k in 0..=7 {
                let expected = count_factorizations(n, k);
                assert_eq!(t.get(n, k), BigInt::from(expected), "d({n},{k})");
                row_sum += t.get(n, k);
            }
            // n <= 200 < 2^8, so k <= 7 covers every factorization.
            let total: u64 = (0..=8).map(|k| count_factorizations(n, k)).sum();
            assert_eq!(row_sum, BigInt::from(total));
        }
    }

    #[test]
    fn d_table_general_coefficients() {
        let a = CoefficientSequence::from_i64(&[1, 2, -1, 3, 0, 5, 1, -2, 4, 1, 0, 2]).unwrap();
        let t = d_table(&a, 12, 3).unwrap();
        // d(n, 1) = a_n for n > 1
        for n in 2..=12 {
            assert_eq!(&t.get(n, 1), a.coeff(n));
        }
        // d(12, 2) = sum over ordered pairs (i, j), i*j = 12, i, j >= 2
        let pairs = [(2, 6), (6, 2), (3, 4), (4, 3)];
        let expected: BigInt = pairs.iter().map(|&(i, j)| a.coeff(i) * a.coeff(j)).sum();
        assert_eq!(t.get(12, 2), expected);
    }

    #[test]
    fn floor_log2_values() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(2), 1);
        assert_eq!(floor_log2(3), 1);
        assert_eq!(floor_log2(1_000_000), 19);
        assert_eq!(floor_log2(1 << 36), 36);
    }
}
