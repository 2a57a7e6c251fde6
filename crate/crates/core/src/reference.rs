//! Published reference values embedded for hermetic reproduction checks.

use num_bigint::BigInt;

const VNK_DATA: &str = include_str!("../data/vnk_reference.txt");
const EIGEN_DATA: &str = include_str!("../data/eigen_reference.txt");

/// The `n` with a published `v(n, k)` column.
pub const VNK_REFERENCE_N: [u64; 3] = [1_000_000, 1 << 28, 1 << 36];

/// Tolerance the six-decimal eigenvalue extrema are compared with.
pub const EIGEN_TOLERANCE: f64 = 1e-4;

fn data_lines(text: &str) -> impl Iterator<Item = Vec<&str>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().collect())
}

/// Published `v(n, k)` for `k = 1..=floor(log2 n)`, if `n` has a column.
pub fn reference_vnk(n: u64) -> Option<Vec<BigInt>> {
    let mut column: Vec<(u32, BigInt)> = data_lines(VNK_DATA)
        .filter(|f| f[0].parse::<u64>().ok() == Some(n))
        .map(|f| (f[1].parse().expect("k"), f[2].parse().expect("v(n,k)")))
        .collect();
    if column.is_empty() {
        return None;
    }
    column.sort_by_key(|(k, _)| *k);
    debug_assert!(column.iter().enumerate().all(|(i, (k, _))| *k as usize == i + 1));
    Some(column.into_iter().map(|(_, v)| v).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenReference {
    pub n: u64,
    /// Max modulus over the small nontrivial eigenvalues, as published.
    pub max_abs: String,
    /// Max real part over the same set, as published.
    pub max_re: String,
}

impl EigenReference {
    pub fn max_abs_f64(&self) -> f64 {
        self.max_abs.parse().expect("decimal")
    }

    pub fn max_re_f64(&self) -> f64 {
        self.max_re.parse().expect("decimal")
    }
}

pub fn reference_eigen() -> Vec<EigenReference> {
    data_lines(EIGEN_DATA)
        .map(|f| EigenReference {
            n: f[0].parse().expect("n"),
            max_abs: f[1].to_string(),
            max_re: f[2].to_string(),
        })
        .collect()
}

pub fn reference_eigen_row(n: u64) -> Option<EigenReference> {
    reference_eigen().into_iter().find(|e| e.n == n)
}
