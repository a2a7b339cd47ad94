use crate::combinatorics::SubsetRanker;
use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};

use super::check_size;

/// The Ali-Niesen array for `K` users and `t = K*M/N`.
///
/// Rows are the `t`-subsets of the users in lexicographic order; the entry
/// at `(T, k)` is a star when `k` is in `T` and otherwise the lexicographic
/// rank of `T + {k}` among `(t+1)`-subsets.
pub fn maddah_ali_niesen(users: usize, t: usize) -> Result<Pda> {
    if users == 0 || t > users {
        return Err(Error::ParameterOutOfRange(format!(
            "need 0 <= t <= K and K >= 1, got K = {users}, t = {t}"
        )));
    }
    let rows = SubsetRanker::new(users, t)?;
    check_size(rows.len(), users as u64)?;
    let wider = (t < users)
        .then(|| SubsetRanker::new(users, t + 1))
        .transpose()?;

    let mut cells = Vec::with_capacity(rows.len() as usize * users);
    let mut merged = Vec::with_capacity(t + 1);
    for subset in rows.iter() {
        for k in 0..users {
            if subset.binary_search(&k).is_ok() {
                cells.push(Cell::Star);
                continue;
            }
            merged.clear();
            merged.extend_from_slice(&subset);
            let at = merged.partition_point(|&x| x < k);
            merged.insert(at, k);
            let rank = wider.as_ref().expect("t < K").rank_sorted(&merged);
            cells.push(Cell::Symbol(rank as u32));
        }
    }
    Ok(Pda::from_parts(rows.len() as usize, users, cells))
}
