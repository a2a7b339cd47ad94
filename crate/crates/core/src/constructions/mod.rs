//! Generators for the Ali-Niesen array and the two q-ary families, plus
//! user grouping built on top of them.

mod an;
mod grouping;
mod qary;

pub use an::maddah_ali_niesen;
pub use grouping::{
    group_scheme_a, group_scheme_an, group_scheme_b, large_cache_q, GroupFamily, GroupedScheme,
};
pub use qary::{
    construction_a, construction_b, partition_cell, partition_cell_b, placement_sets_b,
};

use crate::error::{Error, Result};
use crate::pda::Pda;
use crate::ratio::MemoryRatio;

type Builder = fn(u64, u32) -> Result<Pda>;

/// Largest array (in cells) any generator will materialize.
pub const MAX_CELLS: u64 = 1 << 26;

pub(crate) fn check_size(rows: u64, cols: u64) -> Result<()> {
    match rows.checked_mul(cols) {
        Some(n) if n <= MAX_CELLS => Ok(()),
        _ => Err(Error::ParameterOutOfRange(format!(
            "{rows}x{cols} array exceeds {MAX_CELLS} cells"
        ))),
    }
}

/// Array for `K` users at memory ratio `1/q` (construction A) or `(q-1)/q`
/// (construction B), built for `q*ceil(K/q)` users with the trailing columns
/// removed. A ratio of `1/2` uses construction A.
pub fn for_system(users: usize, ratio: MemoryRatio) -> Result<Pda> {
    let (q, build): (u64, Builder) = if let Some(q) = ratio.small_cache_q() {
        (q, construction_a)
    } else if let Some(q) = ratio.large_cache_q() {
        (q, construction_b)
    } else {
        return Err(Error::UnsupportedRatio(ratio.to_string()));
    };
    if (users as u64) < 2 * q {
        return Err(Error::ParameterOutOfRange(format!(
            "K = {users} must be at least 2q = {}",
            2 * q
        )));
    }
    let m = (users as u64).div_ceil(q) - 1;
    let m = u32::try_from(m).map_err(|_| Error::ParameterOutOfRange(format!("m = {m}")))?;
    build(q, m)?.delete_columns(users)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{grid, A22};
    use crate::ratio::Rate;

    fn ratio(s: &str) -> MemoryRatio {
        s.parse().unwrap()
    }

    #[test]
    fn six_users_half_is_a22() {
        let p = for_system(6, ratio("1/2")).unwrap();
        assert_eq!(p, Pda::from_rows(grid(A22)).unwrap());
    }

    #[test]
    fn five_users_half_truncates() {
        let p = for_system(5, ratio("1/2")).unwrap();
        assert_eq!(p.users(), 5);
        assert!(p.is_valid());
        assert!(p.rate() <= Rate::from_integer(1));
        let full = construction_a(2, 2).unwrap();
        for j in 0..4 {
            for k in 0..5 {
                assert_eq!(p.get(j, k).is_star(), full.get(j, k).is_star());
            }
        }
    }

    #[test]
    fn six_users_third() {
        let p = for_system(6, ratio("1/3")).unwrap();
        assert_eq!(p, construction_a(3, 1).unwrap());
        assert_eq!((p.packets(), p.users()), (3, 6));
        assert!(p.is_valid());
    }

    #[test]
    fn large_cache_uses_b() {
        let p = for_system(7, ratio("2/3")).unwrap();
        assert_eq!(p.users(), 7);
        assert!(p.is_valid());
        assert!(p.rate() <= Rate::new(1, 2));
    }

    #[test]
    fn unsupported_ratios() {
        assert!(matches!(
            for_system(10, ratio("2/5")),
            Err(Error::UnsupportedRatio(_))
        ));
        assert!(matches!(
            for_system(3, ratio("1/2")),
            Err(Error::ParameterOutOfRange(_))
        ));
    }
}
