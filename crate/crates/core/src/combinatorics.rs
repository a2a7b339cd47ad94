//! Binomials, lexicographic subset ranking and q-ary digit strings.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Exact `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `C(n, k)` in machine integers, `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Bijection between the `size`-subsets of `{0, .., ground-1}` in
/// lexicographic order and the ranks `0..C(ground, size)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetRanker {
    ground: usize,
    size: usize,
    count: u64,
}

impl SubsetRanker {
    pub fn new(ground: usize, size: usize) -> Result<Self> {
        if size > ground {
            return Err(Error::InvalidSubset(format!(
                "subset size {size} exceeds ground size {ground}"
            )));
        }
        let count = binomial_u64(ground as u64, size as u64).ok_or_else(|| {
            Error::ParameterOutOfRange(format!("C({ground},{size}) overflows u64"))
        })?;
        Ok(Self {
            ground,
            size,
            count,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of subsets, `C(ground, size)`.
    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Rank of a subset given in any order.
    pub fn rank(&self, subset: &[usize]) -> Result<u64> {
        if subset.len() != self.size {
            return Err(Error::InvalidSubset(format!(
                "expected {} elements, got {}",
                self.size,
                subset.len()
            )));
        }
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset(format!(
                "repeated element in {subset:?}"
            )));
        }
        if let Some(&x) = sorted.last().filter(|&&x| x >= self.ground) {
            return Err(Error::InvalidSubset(format!(
                "element {x} outside [0,{})",
                self.ground
            )));
        }
        Ok(self.rank_sorted(&sorted))
    }

    pub(crate) fn rank_sorted(&self, sorted: &[usize]) -> u64 {
        let (n, r) = (self.ground as u64, self.size as u64);
        let mut rank = 0;
        let mut next = 0u64;
        for (i, &x) in sorted.iter().enumerate() {
            let x = x as u64;
            // Subsets agreeing on the first i elements and with a smaller
            // i-th element come first.
            for v in next..x {
                rank += binomial_u64(n - v - 1, r - i as u64 - 1).unwrap_or(0);
            }
            next = x + 1;
        }
        rank
    }

    /// Subset at `rank`, ascending.
    pub fn unrank(&self, mut rank: u64) -> Result<Vec<usize>> {
        if rank >= self.count {
            return Err(Error::IndexOutOfRange {
                index: rank as usize,
                limit: self.count as usize,
            });
        }
        let (n, r) = (self.ground as u64, self.size as u64);
        let mut out = Vec::with_capacity(self.size);
        let mut v = 0u64;
        for i in 0..r {
            loop {
                let below = binomial_u64(n - v - 1, r - i - 1).unwrap_or(0);
                if rank < below {
                    break;
                }
                rank -= below;
                v += 1;
            }
            out.push(v as usize);
            v += 1;
        }
        Ok(out)
    }

    /// All subsets in rank order.
    pub fn iter(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.count).map(move |x| self.unrank(x).expect("rank in range"))
    }
}

/// A value in `[0, q^n)` viewed as its `n` base-`q` digits.
///
/// Digits are stored least significant first: `digits[l]` is `s_l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QaryIndex {
    base: u64,
    digits: Vec<u64>,
}

impl QaryIndex {
    pub fn from_value(base: u64, len: usize, mut value: u64) -> Self {
        debug_assert!(base >= 2);
        let mut digits = Vec::with_capacity(len);
        for _ in 0..len {
            digits.push(value % base);
            value /= base;
        }
        debug_assert_eq!(value, 0, "value does not fit in {len} digits");
        Self { base, digits }
    }

    /// Builds from digits listed most significant first, reducing each mod `base`.
    pub fn from_msd(base: u64, msd_first: &[u64]) -> Self {
        Self {
            base,
            digits: msd_first.iter().rev().map(|d| d % base).collect(),
        }
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The digit `s_l`.
    pub fn digit(&self, l: usize) -> u64 {
        self.digits[l]
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0, |acc, &d| acc * self.base + d)
    }

    /// Sum of the digits, reduced mod `base`.
    pub fn digit_sum_mod(&self) -> u64 {
        self.digits.iter().sum::<u64>() % self.base
    }
}

/// `q^n`, or an error when it does not fit.
pub(crate) fn checked_pow(q: u64, n: u32) -> Result<u64> {
    q.checked_pow(n)
        .ok_or_else(|| Error::ParameterOutOfRange(format!("{q}^{n} overflows u64")))
}
