use std::f64::consts::PI;

use num_bigint::BigUint;
use num_rational::{BigRational, Ratio};
use num_traits::ToPrimitive;

use crate::combinatorics::binomial;
use crate::constructions::large_cache_q;
use crate::error::{Error, Result};
use crate::ratio::{MemoryRatio, Rate};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupBranch {
    /// `M/N <= 1/2`, construction A groups.
    A,
    /// `M/N > 1/2`, construction B groups.
    B,
}

/// Grouped Ali-Niesen versus grouped q-ary scheme at a target gain `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupingComparison {
    pub branch: GroupBranch,
    pub q: u64,
    pub r_an: Rate,
    pub f_an: BigUint,
    pub r_new: Rate,
    pub f_new: BigUint,
    /// `F_AN,G / F_new,G`.
    pub f_ratio: BigRational,
    /// `R_new,G / R_AN,G`.
    pub rate_ratio: Rate,
    /// A branch: grouped rates coincide.
    pub rates_equal: Option<bool>,
    /// B branch: grouped B rate does not exceed grouped Ali-Niesen.
    pub rate_not_worse: Option<bool>,
    /// B branch: `F_AN,G / F_B,G >= 2^g / ((q-1) sqrt(8 pi))`.
    pub f_ratio_bound: Option<bool>,
}

impl GroupingComparison {
    pub fn f_ratio_f64(&self) -> f64 {
        self.f_ratio.to_f64().unwrap_or(f64::INFINITY)
    }
}

/// `2^g / ((q-1) sqrt(8 pi))`.
pub fn b_branch_f_ratio_floor(q: u64, gain: usize) -> f64 {
    2f64.powi(gain as i32) / ((q - 1) as f64 * (8.0 * PI).sqrt())
}

/// Closed-form comparison of the two grouping strategies, `K` users at
/// memory ratio `M/N` and coding gain `g`.
pub fn grouping_compare(
    users: usize,
    ratio: MemoryRatio,
    gain: usize,
) -> Result<GroupingComparison> {
    if gain < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "coding gain g = {gain} must be >= 2"
        )));
    }
    let k = users as u64;
    let g = gain as u64;
    let c = ratio.ceil_inverse()?;
    let r_an = Ratio::new(k, g) * (Ratio::from_integer(1) - Ratio::new(1, c));
    let f_an = binomial((g - 1) * c, g - 1);

    let (branch, q, r_new, f_new) = if ratio.as_ratio() <= Ratio::new(1, 2) {
        let q = c;
        (
            GroupBranch::A,
            q,
            Ratio::new(k * (q - 1), g * q),
            BigUint::from(q).pow(gain as u32 - 1),
        )
    } else {
        let q = large_cache_q(ratio)?;
        let blocks = g.div_ceil(q - 1);
        let r = Ratio::new(k, (q - 1) * blocks * q);
        (
            GroupBranch::B,
            q,
            r,
            BigUint::from(q).pow(blocks as u32 - 1) * (q - 1),
        )
    };

    let f_ratio = BigRational::new(f_an.clone().into(), f_new.clone().into());
    let rate_ratio = r_new / r_an;
    let (rates_equal, rate_not_worse, f_ratio_bound) = match branch {
        GroupBranch::A => (Some(r_new == r_an), None, None),
        GroupBranch::B => {
            let lhs = f_ratio.to_f64().unwrap_or(f64::INFINITY);
            (
                None,
                Some(r_new <= r_an),
                Some(lhs >= b_branch_f_ratio_floor(q, gain)),
            )
        }
    };
    Ok(GroupingComparison {
        branch,
        q,
        r_an,
        f_an,
        r_new,
        f_new,
        f_ratio,
        rate_ratio,
        rates_equal,
        rate_not_worse,
        f_ratio_bound,
    })
}
