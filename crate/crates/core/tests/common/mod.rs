#![allow(dead_code)]

use coded_caching::{Cell, Pda};

pub fn parse_grid(text: &str) -> Vec<Vec<Cell>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|t| match t {
                    "*" => Cell::Star,
                    n => Cell::Symbol(n.parse().expect("integer cell")),
                })
                .collect()
        })
        .collect()
}

pub fn pda(text: &str) -> Pda {
    Pda::from_rows(parse_grid(text)).expect("rectangular grid")
}

pub const TWO_USERS: &str = "
* 0
0 *
";

pub const A_2_2: &str = "
* 1 * 2 * 0
0 * * 3 1 *
* 3 0 * 2 *
2 * 1 * * 3
";

pub const A_3_2: &str = "
 *  10   2   *  12   6   *   0   9
 0   *  11   *  13   7  10   *   1
 9   1   *   *  14   8   2  11   *
 *  13   5   0   *  15  12   *   3
 3   *  14   1   *  16   4  13   *
12   4   *   2   *  17   *   5  14
 *  16   8   9   3   *   6  15   *
 6   *  17  10   4   *   *   7  16
15   7   *  11   5   *  17   *   8
";

pub const B_3_2: &str = "
1 * * 3 * * * 0 *
* 2 * 4 * * * * 1
* * 0 5 * * 2 * *
4 * * * 6 * * * 3
* 5 * * 7 * 4 * *
* * 3 * 8 * * 5 *
7 * * * * 0 6 * *
* 8 * * * 1 * 7 *
* * 6 * * 2 * * 8
2 * * 6 * * * * 0
* 0 * 7 * * 1 * *
* * 1 8 * * * 2 *
5 * * * 0 * 3 * *
* 3 * * 1 * * 4 *
* * 4 * 2 * * * 5
8 * * * * 3 * 6 *
* 6 * * * 4 * * 7
* * 7 * * 5 8 * *
";

pub const D_6_3: &str = "
* * * 0 1 2
* * 0 * 3 4
* * 1 3 * 5
* * 2 4 5 *
* 0 * * 6 7
* 1 * 6 * 8
* 2 * 7 8 *
* 3 6 * * 9
* 4 7 * 9 *
* 5 8 9 * *
0 * * * 10 11
1 * * 10 * 12
2 * * 11 12 *
3 * 10 * * 13
4 * 11 * 13 *
5 * 12 13 * *
6 10 * * * 14
7 11 * * 14 *
8 12 * 14 * *
9 13 14 * * *
";

/// Delivery for demand `(0,1,2,3,4,5)` over `A_2_2`, as `(file, packet)`
/// summands per slot.
pub const A_2_2_SCHEDULE: [[(usize, usize); 3]; 4] = [
    [(0, 1), (2, 2), (5, 0)],
    [(1, 0), (2, 3), (4, 1)],
    [(0, 3), (3, 0), (4, 2)],
    [(1, 2), (3, 1), (5, 3)],
];

/// `(user, cached packet indices)` for `A_2_2`.
pub const A_2_2_CACHES: [[usize; 2]; 6] = [[0, 2], [1, 3], [0, 1], [2, 3], [0, 3], [1, 2]];

/// Exact binomial by Pascal's triangle in `u128`, independent of the
/// library's big-integer routine.
pub fn pascal(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; n + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=i).rev() {
            row[j] += row[j - 1];
        }
    }
    row[k]
}
