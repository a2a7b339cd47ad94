//! Constructions A and B, built from partitions of q-ary digit strings.
//!
//! Users are indexed as `k = u*q + v` with `0 <= u <= m` and `0 <= v < q`.
//! All digit arithmetic is mod `q`.

use crate::combinatorics::{checked_pow, QaryIndex};
use crate::error::{Error, Result};
use crate::pda::{Cell, Pda, PlacementSet};

use super::check_size;

fn check_qm(q: u64, m: u32) -> Result<()> {
    if q < 2 || m < 1 {
        return Err(Error::ParameterOutOfRange(format!(
            "need q >= 2 and m >= 1, got q = {q}, m = {m}"
        )));
    }
    Ok(())
}

/// `(a - b - 1) mod q` for digits `a, b < q`.
fn sub1(a: u64, b: u64, q: u64) -> u64 {
    (a + 2 * q - b - 1) % q
}

/// Cell `V_{u,v}` of the `n + 1` partitions of `[0, q^n)`: for `u < n` the
/// values whose digit `u` is `v`, for `u = n` those whose digit sum is `v`.
pub fn partition_cell(q: u64, n: u32, u: u32, v: u64) -> Result<Vec<u64>> {
    if q < 2 || n < 1 || u > n || v >= q {
        return Err(Error::ParameterOutOfRange(format!(
            "partition cell q = {q}, n = {n}, u = {u}, v = {v}"
        )));
    }
    let size = checked_pow(q, n)?;
    check_size(size, 1)?;
    Ok((0..size)
        .filter(|&s| {
            let d = QaryIndex::from_value(q, n as usize, s);
            if u < n {
                d.digit(u as usize) == v
            } else {
                d.digit_sum_mod() == v
            }
        })
        .collect())
}

/// Cell `V_{u,v}` of the partitions of `[0, (q-1)q^m)` used by construction
/// B. Values are `(s_m, .., s_0)` with `s_m < q - 1`. For `u < m` the cell
/// fixes digit `u`; `u = m + 1` fixes the sum of all `m + 1` digits.
pub fn partition_cell_b(q: u64, m: u32, u: u32, v: u64) -> Result<Vec<u64>> {
    check_qm(q, m)?;
    if !(u < m || u == m + 1) || v >= q {
        return Err(Error::ParameterOutOfRange(format!(
            "partition cell q = {q}, m = {m}, u = {u}, v = {v}"
        )));
    }
    let low = checked_pow(q, m)?;
    let size = (q - 1) * low;
    check_size(size, 1)?;
    Ok((0..size)
        .filter(|&s| {
            let d = QaryIndex::from_value(q, m as usize + 1, s);
            if u < m {
                d.digit(u as usize) == v
            } else {
                d.digit_sum_mod() == v
            }
        })
        .collect())
}

/// Construction A: the `q^m x q(m+1)` array for memory ratio `1/q`.
///
/// Row `j = (j_{m-1}, .., j_0)`. For `u < m` the entry is a star iff
/// `j_u = v`, else `(j_u - v - 1, j with digit u set to v)`. For `u = m`
/// it is a star iff the digit sum is `v`, else `(v - sum - 1, j)`.
/// The leading digit is in `[0, q-1)`, so labels cover `[0, q^{m+1} - q^m)`.
pub fn construction_a(q: u64, m: u32) -> Result<Pda> {
    check_qm(q, m)?;
    let rows = checked_pow(q, m)?;
    let cols = q * (m as u64 + 1);
    check_size(rows, cols)?;
    let mut cells = Vec::with_capacity((rows * cols) as usize);
    for j in 0..rows {
        let digits = QaryIndex::from_value(q, m as usize, j);
        let sum = digits.digit_sum_mod();
        for u in 0..=m as usize {
            let place = if u < m as usize { q.pow(u as u32) } else { 0 };
            for v in 0..q {
                let cell = if u < m as usize {
                    let ju = digits.digit(u);
                    if ju == v {
                        Cell::Star
                    } else {
                        let low = j - ju * place + v * place;
                        Cell::Symbol((sub1(ju, v, q) * rows + low) as u32)
                    }
                } else if sum == v {
                    Cell::Star
                } else {
                    Cell::Symbol((sub1(v, sum, q) * rows + j) as u32)
                };
                cells.push(cell);
            }
        }
    }
    Ok(Pda::from_parts(rows as usize, cols as usize, cells))
}

/// Construction B: the `(q-1)q^m x q(m+1)` array for memory ratio `(q-1)/q`.
///
/// Row `j = (j_m, .., j_0)` with `j_m < q - 1`. For `u < m` the entry is
/// `(j_{m-1}, .., j_u + j_m + 1, .., j_0)` when `j_u = v` and a star
/// otherwise. For `u = m` it is `(j_{m-1}, .., j_0)` when
/// `j_0 + .. + j_m = v - 1` and a star otherwise.
pub fn construction_b(q: u64, m: u32) -> Result<Pda> {
    check_qm(q, m)?;
    let low_size = checked_pow(q, m)?;
    let rows = (q - 1) * low_size;
    let cols = q * (m as u64 + 1);
    check_size(rows, cols)?;
    let mut cells = Vec::with_capacity((rows * cols) as usize);
    for j in 0..rows {
        let top = j / low_size;
        let low = j % low_size;
        let digits = QaryIndex::from_value(q, m as usize, low);
        let sum = (digits.digit_sum_mod() + top) % q;
        for u in 0..=m as usize {
            for v in 0..q {
                let cell = if u < m as usize {
                    let ju = digits.digit(u);
                    if ju == v {
                        let place = q.pow(u as u32);
                        let replaced = (ju + top + 1) % q;
                        Cell::Symbol((low - ju * place + replaced * place) as u32)
                    } else {
                        Cell::Star
                    }
                } else if sum == (v + q - 1) % q {
                    Cell::Symbol(low as u32)
                } else {
                    Cell::Star
                };
                cells.push(cell);
            }
        }
    }
    Ok(Pda::from_parts(rows as usize, cols as usize, cells))
}

/// Placement sets of construction B, derived from the partitions alone:
/// user `uq + v` caches everything outside `V_{u,v}` (for `u < m`) or
/// outside `V_{m+1, v-1}` (for `u = m`).
pub fn placement_sets_b(q: u64, m: u32) -> Result<Vec<PlacementSet>> {
    check_qm(q, m)?;
    let size = (q - 1) * checked_pow(q, m)?;
    let mut out = Vec::with_capacity((q * (m as u64 + 1)) as usize);
    for u in 0..=m {
        for v in 0..q {
            let excluded = if u < m {
                partition_cell_b(q, m, u, v)?
            } else {
                partition_cell_b(q, m, m + 1, (v + q - 1) % q)?
            };
            let rows = (0..size)
                .filter(|r| excluded.binary_search(r).is_err())
                .map(|r| r as usize)
                .collect();
            out.push(PlacementSet {
                user: (u as u64 * q + v) as usize,
                rows,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{grid, A22};

    #[test]
    fn partitions() {
        assert_eq!(partition_cell(2, 2, 0, 1).unwrap(), vec![1, 3]);
        assert_eq!(partition_cell(2, 2, 2, 0).unwrap(), vec![0, 3]);
        assert_eq!(partition_cell(3, 2, 2, 1).unwrap(), vec![1, 3, 8]);
        assert!(partition_cell(2, 2, 3, 0).is_err());
        assert!(partition_cell(2, 2, 0, 2).is_err());
        assert!(partition_cell(1, 2, 0, 0).is_err());
    }

    #[test]
    fn a22_matches_published_array() {
        assert_eq!(
            construction_a(2, 2).unwrap(),
            Pda::from_rows(grid(A22)).unwrap()
        );
    }

    #[test]
    fn a21_small_case() {
        // Rows j = 0, 1; columns (u,v) = (0,0),(0,1),(1,0),(1,1).
        // (0,0): star iff j_0 = 0; (0,1): star iff j_0 = 1, else (0-1-1, 1) = 1.
        // (1,v): star iff j_0 = v, else (v - j_0 - 1, j).
        let p = construction_a(2, 1).unwrap();
        assert_eq!(p, Pda::from_rows(grid("* 1 * 0; 0 * 1 *")).unwrap());
        assert_eq!(p.params().to_string(), "(4,2,1,2)");
        assert_eq!(p.regularity().gain, Some(2));
        assert!(p.is_valid());
    }

    #[test]
    fn b22_parameters_from_formula_and_array() {
        let (q, m) = (2u64, 2u32);
        let p = construction_b(q, m).unwrap();
        let expected = (
            (q * (m as u64 + 1)) as usize,
            ((q - 1) * q.pow(m)) as usize,
            ((q - 1).pow(2) * q.pow(m - 1)) as usize,
            q.pow(m) as usize,
        );
        let got = p.params();
        assert_eq!((got.k, got.f, got.z, got.s), expected);
        assert_eq!(expected, (6, 4, 2, 4));
        assert_eq!(p.regularity().gain, Some(3));
        assert!(p.is_valid());
    }

    #[test]
    fn b31_parameters() {
        let p = construction_b(3, 1).unwrap();
        assert_eq!(p.params().to_string(), "(6,6,4,3)");
        assert_eq!(p.regularity().gain, Some(4));
        assert!(p.is_valid());
    }

    #[test]
    fn placement_sets_b_match_array() {
        for (q, m) in [(2, 1), (2, 2), (3, 1), (3, 2), (4, 2)] {
            let p = construction_b(q, m).unwrap();
            assert_eq!(
                placement_sets_b(q, m).unwrap(),
                p.placement_sets(),
                "q={q} m={m}"
            );
        }
    }

    #[test]
    fn b21_sets_are_partition_complements() {
        // F_B = {0, 1}: digit 0 is s_0, s_1 = 0 always.
        let sets = placement_sets_b(2, 1).unwrap();
        let rows: Vec<_> = sets.iter().map(|s| s.rows.clone()).collect();
        assert_eq!(rows, vec![vec![1], vec![0], vec![0], vec![1]]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(construction_a(1, 2).is_err());
        assert!(construction_a(2, 0).is_err());
        assert!(construction_b(2, 0).is_err());
        assert!(construction_a(2, 40).is_err());
        assert!(placement_sets_b(1, 1).is_err());
    }
}
