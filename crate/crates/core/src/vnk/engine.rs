use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::floor_set::FloorValueSet;
use crate::dirichlet::floor_log2;

/// Integer width the fast engine starts in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Width {
    /// Checked 64-bit arithmetic, promoted to arbitrary width on overflow.
    #[default]
    Auto,
    /// Arbitrary-width integers from the start.
    Arbitrary,
}

/// Accumulator type for one level of the recursion.
pub(crate) trait LevelValue: Clone + Send + Sync + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self += other * mult`; `false` on overflow.
    fn add_scaled(&mut self, other: &Self, mult: u64) -> bool;
    fn to_biguint(&self) -> BigUint;
}

macro_rules! fixed_level_value {
    ($($t:ty),*) => {$(
        impl LevelValue for $t {
            fn zero() -> Self {
                0
            }

            fn one() -> Self {
                1
            }

            #[inline]
            fn add_scaled(&mut self, other: &Self, mult: u64) -> bool {
                let Some(mult) = <$t>::try_from(mult).ok() else {
                    return *other == 0;
                };
                match other.checked_mul(mult).and_then(|p| self.checked_add(p)) {
                    Some(v) => {
                        *self = v;
                        true
                    }
                    None => false,
                }
            }

            fn to_biguint(&self) -> BigUint {
                BigUint::from(*self)
            }
        }
    )*};
}

fixed_level_value!(u16, u32, u64);

impl LevelValue for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn add_scaled(&mut self, other: &Self, mult: u64) -> bool {
        if mult == 1 {
            *self += other;
        } else {
            *self += other * mult;
        }
        true
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }
}

#[derive(Clone, Debug)]
enum Levels {
    Fixed(Vec<Vec<u64>>),
    Big(Vec<Vec<BigUint>>),
}

/// `v(m, k)` in the unit case for every `m` in the floor-value set of `n` and
/// `0 <= k <= floor(log2 m)`.
///
/// Level `k` stores only the slots with `m >= 2^k`; entries below are zero.
#[derive(Clone, Debug)]
pub struct VnkTable {
    set: FloorValueSet,
    r: u32,
    levels: Levels,
}

impl PartialEq for VnkTable {
    fn eq(&self, other: &Self) -> bool {
        self.set == other.set
            && self.r == other.r
            && self.entries().eq(other.entries())
    }
}

impl Eq for VnkTable {}

impl VnkTable {
    pub fn n(&self) -> u64 {
        self.set.n()
    }

    /// `floor(log2 n)`
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn floor_set(&self) -> &FloorValueSet {
        &self.set
    }

    /// Whether the table had to leave 64-bit arithmetic.
    pub fn is_arbitrary_width(&self) -> bool {
        matches!(self.levels, Levels::Big(_))
    }

    /// First stored slot of level `k`.
    pub fn level_start(&self, k: u32) -> usize {
        level_start(&self.set, k)
    }

    /// `v(m, k)`; `None` when `m` is not a floor value of `n`.
    pub fn get(&self, m: u64, k: u32) -> Option<BigUint> {
        let slot = self.set.slot_of(m)?;
        Some(self.get_slot(slot, k))
    }

    /// `v(m, k)` as `u64`, if it fits.
    pub fn get_u64(&self, m: u64, k: u32) -> Option<u64> {
        self.get(m, k)?.to_u64()
    }

    fn get_slot(&self, slot: usize, k: u32) -> BigUint {
        if k > self.r {
            return <BigUint as Zero>::zero();
        }
        let start = self.level_start(k);
        if slot < start {
            return <BigUint as Zero>::zero();
        }
        match &self.levels {
            Levels::Fixed(levels) => BigUint::from(levels[k as usize][slot - start]),
            Levels::Big(levels) => levels[k as usize][slot - start].clone(),
        }
    }

    /// `[v(m, 0), ..., v(m, r)]` as signed integers, `r = floor(log2 n)`.
    ///
    /// Panics if `m` is not a floor value of `n`.
    pub fn row(&self, m: u64) -> Vec<BigInt> {
        let slot = self
            .set
            .slot_of(m)
            .unwrap_or_else(|| panic!("{m} is not a floor value of {}", self.n()));
        (0..=self.r)
            .map(|k| BigInt::from(self.get_slot(slot, k)))
            .collect()
    }

    /// Every stored `(m, k, v(m, k))`, sorted by `(k, m)`.
    pub fn entries(&self) -> impl Iterator<Item = (u64, u32, BigUint)> + '_ {
        (0..=self.r).flat_map(move |k| {
            (self.level_start(k)..self.set.len())
                .map(move |slot| (self.set.value(slot), k, self.get_slot(slot, k)))
        })
    }

    pub(crate) fn from_levels(n: u64, levels: Vec<Vec<BigUint>>) -> Self {
        let set = FloorValueSet::new(n);
        let r = floor_log2(n);
        debug_assert_eq!(levels.len(), r as usize + 1);
        let fixed: Option<Vec<Vec<u64>>> = levels
            .iter()
            .map(|level| level.iter().map(ToPrimitive::to_u64).collect())
            .collect();
        let levels = match fixed {
            Some(fixed) => Levels::Fixed(fixed),
            None => Levels::Big(levels),
        };
        Self { set, r, levels }
    }
}

pub(crate) fn level_start(set: &FloorValueSet, k: u32) -> usize {
    if k >= 64 {
        return set.len();
    }
    set.first_slot_at_least(1u64 << k)
}

/// Computes the unit-case table for `n` with the floor-division recursion,
/// starting in 64-bit arithmetic and promoting on overflow.
pub fn vnk_fast(n: u64) -> VnkTable {
    vnk_fast_with(n, Width::Auto)
}

pub fn vnk_fast_with(n: u64, width: Width) -> VnkTable {
    match width {
        Width::Auto => run_promoting::<u64>(n),
        Width::Arbitrary => {
            let set = FloorValueSet::new(n);
            let levels = run_levels::<BigUint>(&set, vec![vec![BigUint::from(1u8); set.len()]])
                .expect("arbitrary width cannot overflow");
            VnkTable {
                set,
                r: floor_log2(n),
                levels: Levels::Big(levels),
            }
        }
    }
}

/// Runs in `T` until a level overflows, then finishes in `BigUint` from the
/// last completed level.
pub(crate) fn run_promoting<T: LevelValue + Into<u64>>(n: u64) -> VnkTable {
    assert!(n >= 1, "n must be positive");
    let set = FloorValueSet::new(n);
    let r = floor_log2(n);
    let mut levels: Vec<Vec<T>> = vec![vec![T::one(); set.len()]];
    for k in 1..=r {
        match compute_level(&set, &levels[k as usize - 1], k) {
            Some(level) => levels.push(level),
            None => {
                let promoted: Vec<Vec<BigUint>> = levels
                    .iter()
                    .map(|l| l.iter().map(LevelValue::to_biguint).collect())
                    .collect();
                let levels = run_levels(&set, promoted).expect("arbitrary width cannot overflow");
                return VnkTable {
                    set,
                    r,
                    levels: Levels::Big(levels),
                };
            }
        }
    }
    VnkTable {
        set,
        r,
        levels: Levels::Fixed(
            levels
                .into_iter()
                .map(|l| l.into_iter().map(Into::into).collect())
                .collect(),
        ),
    }
}

fn run_levels<T: LevelValue>(set: &FloorValueSet, mut levels: Vec<Vec<T>>) -> Option<Vec<Vec<T>>> {
    let r = floor_log2(set.n());
    for k in levels.len() as u32..=r {
        let level = compute_level(set, &levels[k as usize - 1], k)?;
        levels.push(level);
    }
    Some(levels)
}

/// Level `k` from level `k - 1`. For each stored `m`:
///
/// `v(m,k) = sum_{i=2}^{s} v(m/i, k-1) + sum_{j=2^{k-1}}^{isqrt m} (m/j - m/(j+1)) v(j, k-1)`
///
/// with `s = m / (isqrt(m) + 1)`. Every `m/i` is again a floor value of `n`.
fn compute_level<T: LevelValue>(set: &FloorValueSet, prev: &[T], k: u32) -> Option<Vec<T>> {
    let start = level_start(set, k);
    let prev_start = level_start(set, k - 1);
    let half = 1u64 << (k - 1);
    let root = set.root();
    let large = set.large_count();

    (start..set.len())
        .into_par_iter()
        .map(|slot| {
            let m = set.value(slot);
            let m_root = m.isqrt();
            let s = m / (m_root + 1);
            let mut acc = T::zero();

            // First sum; terms with m/i < 2^(k-1) vanish.
            let i_max = s.min(m / half);
            match set.large_index(slot) {
                Some(u) => {
                    // m = n/u, so m/i = n/(u i): a large slot while u i <= s_n.
                    for i in 2..=i_max {
                        let t = u * i;
                        let x_slot = if t <= large {
                            set.large_slot(t)
                        } else {
                            (m / i - 1) as usize
                        };
                        if !acc.add_scaled(&prev[x_slot - prev_start], 1) {
                            return None;
                        }
                    }
                }
                None => {
                    for i in 2..=i_max {
                        let x_slot = (m / i - 1) as usize;
                        if !acc.add_scaled(&prev[x_slot - prev_start], 1) {
                            return None;
                        }
                    }
                }
            }

            // Second sum over the small values j <= isqrt(m) <= isqrt(n).
            if half <= m_root {
                debug_assert!(m_root <= root);
                let mut upper = m / half;
                for j in half..=m_root {
                    let lower = m / (j + 1);
                    let count = upper - lower;
                    upper = lower;
                    if count != 0 && !acc.add_scaled(&prev[(j - 1) as usize - prev_start], count) {
                        return None;
                    }
                }
            }
            Some(acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vnk::vnk_lattice;

    #[test]
    fn small_tables_match_lattice() {
        for n in 1..=400u64 {
            let table = vnk_fast(n);
            assert_eq!(table.r(), floor_log2(n));
            for m in table.floor_set().values() {
                for k in 0..=table.r() + 1 {
                    let expected = vnk_lattice(m, k).unwrap();
                    assert_eq!(table.get_u64(m, k), Some(expected), "n={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn unit_row_structure() {
        let table = vnk_fast(1 << 12);
        let row = table.row(1 << 12);
        assert_eq!(row.len(), 13);
        assert_eq!(row[0], BigInt::from(1));
        assert_eq!(row[1], BigInt::from(4095));
        assert_eq!(row[12], BigInt::from(1));
        // 4096 / 7 = 585 and 4096 / 585 = 7, so 7 is a floor value
        assert_eq!(table.get_u64(7, 1), Some(6));
        assert!(table.get(100, 1).is_none());
    }

    #[test]
    fn promotion_preserves_values() {
        // v(4000, k) exceeds u16 for middle k, forcing promotion.
        let n = 4000;
        let narrow = run_promoting::<u16>(n);
        assert!(narrow.is_arbitrary_width());
        let wide = vnk_fast(n);
        assert!(!wide.is_arbitrary_width());
        assert_eq!(narrow, wide);
        let big = vnk_fast_with(n, Width::Arbitrary);
        assert_eq!(big, wide);
    }

    #[test]
    fn million_first_levels() {
        let table = vnk_fast(1_000_000);
        assert_eq!(table.get_u64(1_000_000, 1), Some(999_999));
        assert_eq!(table.get_u64(1_000_000, 2), Some(11_970_035));
        assert_eq!(table.get_u64(1_000_000, 19), Some(20));
        assert_eq!(table.get_u64(1_000_000, 20), Some(0));
    }
}
