//! The characteristic-polynomial coefficients
//! `v(n, k) = sum_{j <= n} w(j) d(j, k)` and their shifted variants
//! `v_l(n, k) = sum_{j <= n} w(j l) d(j, k)`.
//!
//! Three routes exist:
//!
//! * [`vnk_naive`] / [`vl_nk`] sum the defining series over a `d(n, k)`
//!   table; any weights, small `n` only.
//! * [`vnk_lattice`] counts ordered `k`-tuples of integers `>= 2` whose
//!   product is at most `n`; unit case, tiny `n`.
//! * [`vnk_fast`] runs the floor-division recursion over the floor-value set
//!   of `n`, one `k` level at a time, in `O(n^{3/4})` work per level.

mod cache;
mod engine;
mod floor_set;

pub use cache::{cache_path, parse_cache, read_cache, render_cache, write_cache, CACHE_HEADER};
pub use engine::{vnk_fast, vnk_fast_with, VnkTable, Width};
pub use floor_set::{split_point, FloorValueSet};

use num_bigint::BigInt;

use crate::dirichlet::{d_table, floor_log2, require_len, CoefficientSequence, DnkTable};
use crate::error::{Error, Result};
use crate::matrix::{Scalar, WeightVector};

/// Largest `n` the definition-based routes accept.
pub const NAIVE_CAP: u64 = 100_000;

/// Largest `n` [`vnk_lattice`] enumerates.
pub const LATTICE_CAP: u64 = 5_000;

fn check_naive_cap(n: usize) -> Result<()> {
    if n as u64 > NAIVE_CAP {
        return Err(Error::CapExceeded {
            what: "definition-based v(n,k)",
            n: n as u64,
            cap: NAIVE_CAP,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    Ok(())
}

fn weighted_sum<S: Scalar>(
    table: &DnkTable,
    n: usize,
    k: usize,
    weight: impl Fn(usize) -> S,
) -> S {
    let Some(level) = table.level(k) else {
        return S::zero();
    };
    level[..n]
        .iter()
        .enumerate()
        .filter(|(_, d)| !num_traits::Zero::is_zero(*d))
        .fold(S::zero(), |acc, (j, d)| acc + weight(j + 1) * S::from_bigint(d))
}

/// `v(n, k)` straight from the definition.
pub fn vnk_naive<S: Scalar>(
    a: &CoefficientSequence,
    w: &WeightVector<S>,
    n: usize,
    k: usize,
) -> Result<S> {
    check_naive_cap(n)?;
    require_len(w.len(), n)?;
    let k_max = k.min(floor_log2(n as u64) as usize);
    let table = d_table(a, n, k_max)?;
    Ok(weighted_sum(&table, n, k, |j| w.weight(j).clone()))
}

/// `v_l(n, k) = sum_{j <= n} w(j l) d(j, k)`.
pub fn vl_nk<S: Scalar>(
    a: &CoefficientSequence,
    w: &WeightVector<S>,
    ell: usize,
    n: usize,
    k: usize,
) -> Result<S> {
    if ell == 0 {
        return Err(Error::InvalidInput("ell must be positive".into()));
    }
    check_naive_cap(n)?;
    require_len(w.len(), n * ell)?;
    let k_max = k.min(floor_log2(n as u64) as usize);
    let table = d_table(a, n, k_max)?;
    Ok(weighted_sum(&table, n, k, |j| w.weight(j * ell).clone()))
}

/// `v(n, k)` for `0 <= k <= floor(log2 n)` from the definition.
pub fn vnk_naive_row<S: Scalar>(
    a: &CoefficientSequence,
    w: &WeightVector<S>,
    n: usize,
) -> Result<Vec<S>> {
    check_naive_cap(n)?;
    require_len(w.len(), n)?;
    let r = floor_log2(n as u64) as usize;
    let table = d_table(a, n, r)?;
    Ok((0..=r)
        .map(|k| weighted_sum(&table, n, k, |j| w.weight(j).clone()))
        .collect())
}

/// `v(m, k)` for every `1 <= m <= n_max` and `0 <= k <= floor(log2 n_max)`,
/// by prefix sums over one `d(n, k)` table. Indexed `[k][m - 1]`.
pub fn vnk_naive_all<S: Scalar>(
    a: &CoefficientSequence,
    w: &WeightVector<S>,
    n_max: usize,
) -> Result<Vec<Vec<S>>> {
    check_naive_cap(n_max)?;
    require_len(w.len(), n_max)?;
    let r = floor_log2(n_max as u64) as usize;
    let table = d_table(a, n_max, r)?;
    Ok((0..=r)
        .map(|k| {
            let level = table.level(k).expect("level within k_max");
            let mut acc = S::zero();
            level
                .iter()
                .enumerate()
                .map(|(j, d)| {
                    if !num_traits::Zero::is_zero(d) {
                        acc = acc.clone() + w.weight(j + 1).clone() * S::from_bigint(d);
                    }
                    acc.clone()
                })
                .collect()
        })
        .collect())
}

/// Number of ordered `k`-tuples of integers `>= 2` with product `<= n`.
pub fn vnk_lattice(n: u64, k: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    if n > LATTICE_CAP {
        return Err(Error::CapExceeded {
            what: "lattice enumeration",
            n,
            cap: LATTICE_CAP,
        });
    }

    fn descend(bound: u64, remaining: u32) -> u64 {
        match remaining {
            0 => 1,
            // the last coordinate ranges over 2..=bound
            1 => bound.saturating_sub(1),
            _ => {
                let mut total = 0;
                let mut first = 2;
                // the other coordinates need product >= 2^(remaining-1)
                while first << (remaining - 1) <= bound {
                    total += descend(bound / first, remaining - 1);
                    first += 1;
                }
                total
            }
        }
    }

    if k >= 64 || (1u64 << k) > n {
        return Ok(0);
    }
    Ok(descend(n, k))
}

/// `v(n, k)` values `0..=r` of the unit case as signed integers, taken from
/// the top row of a fast table.
pub fn unit_row(table: &VnkTable) -> Vec<BigInt> {
    table.row(table.n())
}
