//! Closed-form rates and subpacketization, comparison tables, grouping
//! comparisons and an exhaustive minimal-`F` search.

mod grouping;
mod rates;
mod search;
mod table;

pub use grouping::{b_branch_f_ratio_floor, grouping_compare, GroupBranch, GroupingComparison};
pub use rates::{
    eta_ratio, f_new, gain_an, gain_new, lambda_ratio, min_f_bound, rate_an, rate_new,
    rate_uncoded, stirling_binom, AsymptoticEstimate, EtaRatio,
};
pub use search::{brute_force_min_f, SearchResult, DEFAULT_SEARCH_BUDGET};
pub use table::{comparison_row, table_csv, table_vi, ComparisonRow, CSV_HEADER};
