/// The distinct values of `floor(n / i)` for `1 <= i <= n`, in ascending
/// order.
///
/// With `L = isqrt(n)` and `s = floor(n / (L + 1))`, the set is the integers
/// `1..=L` followed by `floor(n / u)` for `u = s, s-1, ..., 1`. No table is
/// stored; slots and values convert arithmetically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FloorValueSet {
    n: u64,
    root: u64,
    large: u64,
}

impl FloorValueSet {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "floor-value set of zero");
        let root = n.isqrt();
        Self {
            n,
            root,
            large: split_point(n),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn len(&self) -> usize {
        (self.root + self.large) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Value held in `slot`.
    #[inline]
    pub fn value(&self, slot: usize) -> u64 {
        let slot = slot as u64;
        if slot < self.root {
            slot + 1
        } else {
            self.n / (self.root + self.large - slot)
        }
    }

    /// Slot of `x`, or `None` if `x` is not a floor value of `n`.
    pub fn slot_of(&self, x: u64) -> Option<usize> {
        if x == 0 || x > self.n {
            return None;
        }
        if x <= self.root {
            return Some((x - 1) as usize);
        }
        let u = self.n / x;
        (self.n / u == x).then(|| (self.root + self.large - u) as usize)
    }

    /// Slot of `floor(n / u)` for `1 <= u <= s`, where the value exceeds `L`.
    #[inline]
    pub(crate) fn large_slot(&self, u: u64) -> usize {
        debug_assert!(u >= 1 && u <= self.large);
        (self.root + self.large - u) as usize
    }

    /// For a slot holding a value above `L`, the `u` with value `floor(n / u)`.
    #[inline]
    pub(crate) fn large_index(&self, slot: usize) -> Option<u64> {
        let slot = slot as u64;
        (slot >= self.root).then(|| self.root + self.large - slot)
    }

    pub(crate) fn root(&self) -> u64 {
        self.root
    }

    pub(crate) fn large_count(&self) -> u64 {
        self.large
    }

    /// First slot whose value is at least `bound` (`len()` if none).
    pub fn first_slot_at_least(&self, bound: u64) -> usize {
        if bound <= 1 {
            return 0;
        }
        if bound <= self.root + 1 {
            // values 1..=root occupy slots 0..root, so bound lands at slot bound-1
            // (or at the first large slot when bound == root + 1).
            return (bound - 1) as usize;
        }
        if bound > self.n {
            return self.len();
        }
        // Large values floor(n/u) >= bound iff u <= floor(n / bound).
        let u_max = (self.n / bound).min(self.large);
        (self.root + self.large - u_max) as usize
    }

    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len()).map(move |slot| self.value(slot))
    }
}

/// `s = floor(n / (isqrt(n) + 1))`, the cut between the two sums of the
/// floor-division recursion. Equals `isqrt(n)` when `n - isqrt(n)^2 >= isqrt(n)`
/// and `isqrt(n) - 1` otherwise.
pub fn split_point(n: u64) -> u64 {
    let root = n.isqrt();
    let s = n / (root + 1);
    let expected = if n - root * root >= root {
        root
    } else {
        root - 1
    };
    assert_eq!(s, expected, "split point characterization failed for n = {n}");
    s
}
