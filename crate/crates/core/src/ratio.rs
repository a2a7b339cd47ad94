//! Exact rationals for memory ratios and rates.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact non-negative rational used for rates.
pub type Rate = Ratio<u64>;

/// The cache-to-library ratio `M/N`, kept as a reduced fraction in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemoryRatio(Ratio<u64>);

impl MemoryRatio {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if n == 0 || m > n {
            return Err(Error::UnsupportedRatio(format!("{m}/{n}")));
        }
        Ok(Self(Ratio::new(m, n)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn as_ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `1 - M/N`.
    pub fn complement(&self) -> Ratio<u64> {
        Ratio::from_integer(1) - self.0
    }

    /// `K*M/N` when it is an integer (a corner point).
    pub fn corner(&self, k: usize) -> Result<u64> {
        let t = self.0 * Ratio::from_integer(k as u64);
        if t.is_integer() {
            Ok(t.to_integer())
        } else {
            Err(Error::NonCornerPoint(format!("{k}*{self}")))
        }
    }

    /// `ceil(N/M)`; undefined for `M = 0`.
    pub fn ceil_inverse(&self) -> Result<u64> {
        if self.numer() == 0 {
            return Err(Error::UnsupportedRatio(self.to_string()));
        }
        Ok(self.denom().div_ceil(self.numer()))
    }

    /// `q` when the ratio is `1/q` with `q >= 2`.
    pub fn small_cache_q(&self) -> Option<u64> {
        (self.numer() == 1 && self.denom() >= 2).then_some(self.denom())
    }

    /// `q` when the ratio is `(q-1)/q` with `q >= 2`.
    pub fn large_cache_q(&self) -> Option<u64> {
        (self.denom() >= 2 && self.denom() - self.numer() == 1).then_some(self.denom())
    }
}

impl fmt::Display for MemoryRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for MemoryRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedRatio(s.to_string());
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let q = q.trim().parse().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

/// Renders `numer/denom` with `places` decimals, rounding half up.
pub fn render_decimal(numer: &BigUint, denom: &BigUint, places: u32) -> String {
    assert!(!denom.is_zero(), "zero denominator");
    let scale = BigUint::from(10u32).pow(places);
    let (q, r) = (numer * &scale).div_rem(denom);
    let scaled = if r * 2u32 >= *denom { q + 1u32 } else { q };
    let (int, frac) = scaled.div_rem(&scale);
    if places == 0 {
        return int.to_string();
    }
    format!(
        "{int}.{:0>width$}",
        frac.to_string(),
        width = places as usize
    )
}

/// Four-decimal rendering of a rate, as printed in comparison tables.
pub fn render_rate(rate: &Rate) -> String {
    render_decimal(
        &BigUint::from(*rate.numer()),
        &BigUint::from(*rate.denom()),
        4,
    )
}

/// Formats an unreduced-looking `p/q`; integers print as `p/1`.
pub fn fraction_string(rate: &Rate) -> String {
    format!("{}/{}", rate.numer(), rate.denom())
}

pub(crate) fn big_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
