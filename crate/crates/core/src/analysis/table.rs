use num_bigint::BigUint;

use crate::error::Result;
use crate::ratio::{render_rate, MemoryRatio, Rate};

use super::rates::{f_new, gain_an, gain_new, min_f_bound, rate_an, rate_new};

pub const CSV_HEADER: &str = "K,MN,g_an,g_new,R_an,R_new,F_an,F_new";

/// Ali-Niesen versus the q-ary constructions at one `(K, M/N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub users: usize,
    pub ratio: MemoryRatio,
    pub g_an: u64,
    pub g_new: u64,
    pub r_an: Rate,
    pub r_new: Rate,
    pub f_an: BigUint,
    pub f_new: BigUint,
}

impl ComparisonRow {
    /// One CSV record; rates at four decimals.
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.users,
            self.ratio,
            self.g_an,
            self.g_new,
            render_rate(&self.r_an),
            render_rate(&self.r_new),
            self.f_an,
            self.f_new
        )
    }
}

pub fn comparison_row(users: usize, ratio: MemoryRatio) -> Result<ComparisonRow> {
    Ok(ComparisonRow {
        users,
        ratio,
        g_an: gain_an(users, ratio)?,
        g_new: gain_new(users, ratio)?,
        r_an: rate_an(users, ratio)?,
        r_new: rate_new(users, ratio)?,
        f_an: min_f_bound(users, ratio)?,
        f_new: f_new(users, ratio)?,
    })
}

/// The 18-row grid `K in {6,..,36}` by `M/N in {1/3, 1/2, 2/3}`, grouped by ratio.
pub fn table_vi() -> Vec<ComparisonRow> {
    let mut rows = Vec::with_capacity(18);
    for (m, n) in [(1, 3), (1, 2), (2, 3)] {
        let ratio = MemoryRatio::new(m, n).expect("valid ratio");
        for users in (6..=36).step_by(6) {
            rows.push(comparison_row(users, ratio).expect("grid point is conforming"));
        }
    }
    rows
}

pub fn table_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighteen_rows() {
        let rows = table_vi();
        assert_eq!(rows.len(), 18);
        assert!(rows.iter().all(|r| r.g_an == r.g_new + 1));
    }

    #[test]
    fn csv_shape() {
        let row = comparison_row(18, "1/3".parse().unwrap()).unwrap();
        assert_eq!(row.csv(), "18,1/3,7,6,1.7143,2.0000,18564,243");
        let text = table_csv(&[row]);
        assert!(text.starts_with("K,MN,g_an,g_new,R_an,R_new,F_an,F_new\n"));
    }

    #[test]
    fn off_grid_point() {
        let row = comparison_row(8, "1/4".parse().unwrap()).unwrap();
        assert_eq!((row.g_an, row.g_new), (3, 2));
        assert_eq!(row.r_an, Rate::from_integer(2));
        assert_eq!(row.r_new, Rate::from_integer(3));
        assert_eq!(row.f_an, BigUint::from(28u32));
        assert_eq!(row.f_new, BigUint::from(4u32));
    }
}
