//! Serving many users by splitting them into equal groups, each running an
//! independent small scheme.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::pda::Pda;
use crate::ratio::{MemoryRatio, Rate};

use super::{construction_a, construction_b, maddah_ali_niesen};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    AliNiesen,
    A,
    B,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedScheme {
    pub family: GroupFamily,
    pub total_users: usize,
    pub group_size: usize,
    /// Array run inside every full group.
    pub group_pda: Pda,
    pub full_groups: usize,
    /// The group array with trailing columns removed, serving leftover users.
    pub partial_group: Option<Pda>,
    /// Memory ratio the group array is designed for (at most the system's).
    pub group_ratio: MemoryRatio,
    /// Sum of per-group rates, counting a partial group as a full one.
    pub rate: Rate,
}

impl GroupedScheme {
    pub fn group_count(&self) -> usize {
        self.full_groups + usize::from(self.partial_group.is_some())
    }

    /// Packets per file, `F` of the group array.
    pub fn packets(&self) -> usize {
        self.group_pda.packets()
    }

    pub fn group_rate(&self) -> Rate {
        self.group_pda.rate()
    }

    fn build(
        family: GroupFamily,
        total_users: usize,
        group_pda: Pda,
        group_ratio: MemoryRatio,
    ) -> Result<Self> {
        let group_size = group_pda.users();
        if group_size > total_users {
            return Err(Error::ParameterOutOfRange(format!(
                "group size {group_size} exceeds K = {total_users}"
            )));
        }
        let full_groups = total_users / group_size;
        let leftover = total_users % group_size;
        let partial_group = (leftover > 0)
            .then(|| group_pda.delete_columns(leftover))
            .transpose()?;
        let groups = full_groups + usize::from(leftover > 0);
        let rate = group_pda.rate() * Ratio::from_integer(groups as u64);
        Ok(Self {
            family,
            total_users,
            group_size,
            group_pda,
            full_groups,
            partial_group,
            group_ratio,
            rate,
        })
    }
}

fn check_gain(gain: usize) -> Result<()> {
    if gain < 2 {
        return Err(Error::ParameterOutOfRange(format!(
            "coding gain g = {gain} must be >= 2"
        )));
    }
    Ok(())
}

/// Groups of `K' = (g-1)*ceil(N/M)` users, each running the Ali-Niesen
/// array with `t = g - 1`.
pub fn group_scheme_an(users: usize, ratio: MemoryRatio, gain: usize) -> Result<GroupedScheme> {
    check_gain(gain)?;
    let c = ratio.ceil_inverse()?;
    let group_size = (gain as u64 - 1) * c;
    let pda = maddah_ali_niesen(group_size as usize, gain - 1)?;
    GroupedScheme::build(GroupFamily::AliNiesen, users, pda, MemoryRatio::new(1, c)?)
}

/// Groups of `g*q` users with `q = ceil(N/M)`, each running construction A
/// with `m = g - 1`. Needs `M/N <= 1/2`.
pub fn group_scheme_a(users: usize, ratio: MemoryRatio, gain: usize) -> Result<GroupedScheme> {
    check_gain(gain)?;
    if ratio.numer() == 0 || ratio.as_ratio() > Ratio::new(1, 2) {
        return Err(Error::UnsupportedRatio(format!(
            "{ratio} (need 0 < M/N <= 1/2)"
        )));
    }
    let q = ratio.ceil_inverse()?;
    let pda = construction_a(q, gain as u32 - 1)?;
    GroupedScheme::build(GroupFamily::A, users, pda, MemoryRatio::new(1, q)?)
}

/// `q = floor(N/(N-M))` for `1/2 < M/N < 1`.
pub fn large_cache_q(ratio: MemoryRatio) -> Result<u64> {
    let (n, d) = (ratio.numer(), ratio.denom());
    if ratio.as_ratio() <= Ratio::new(1, 2) || n == d {
        return Err(Error::UnsupportedRatio(format!(
            "{ratio} (need 1/2 < M/N < 1)"
        )));
    }
    Ok(d / (d - n))
}

/// Groups of `q*ceil(g/(q-1))` users with `q = floor(N/(N-M))`, each running
/// construction B with `m = ceil(g/(q-1)) - 1`. Needs `M/N > 1/2` and `m >= 1`.
pub fn group_scheme_b(users: usize, ratio: MemoryRatio, gain: usize) -> Result<GroupedScheme> {
    check_gain(gain)?;
    let q = large_cache_q(ratio)?;
    let m = (gain as u64).div_ceil(q - 1) - 1;
    if m == 0 {
        return Err(Error::ParameterOutOfRange(format!(
            "g = {gain} with q = {q} gives m = 0; construction B needs m >= 1"
        )));
    }
    let pda = construction_b(q, m as u32)?;
    GroupedScheme::build(GroupFamily::B, users, pda, MemoryRatio::new(q - 1, q)?)
}
