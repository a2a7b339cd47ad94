//! Exhaustive search for the fewest rows of an array in which every integer
//! occurs exactly `g` times, equal integers sit on a star-crossed diagonal,
//! and every row holds a fixed number of stars. Column condition C1 is not
//! imposed.
//!
//! Symmetry breaking: row star patterns are non-decreasing in lexicographic
//! rank, row 0 uses the first pattern, and new integers are introduced in
//! increasing order. Any solution can be brought to this form by permuting
//! columns, then rows, then relabeling.

use crate::combinatorics::SubsetRanker;
use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};

pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    /// Smallest row count admitting an array.
    pub packets: usize,
    pub witness: Pda,
    /// Nodes visited across all row counts tried.
    pub nodes: u64,
}

/// Tries `F = 1..=max_packets` in turn; returns the first `F` with a
/// witness, or `None`.
pub fn brute_force_min_f(
    users: usize,
    gain: usize,
    stars_per_row: usize,
    max_packets: usize,
    budget: u64,
) -> Result<Option<SearchResult>> {
    if gain < 2 || gain > users || stars_per_row >= users {
        return Err(Error::ParameterOutOfRange(format!(
            "need 2 <= g <= K and stars per row < K, got K = {users}, g = {gain}, \
             stars per row = {stars_per_row}"
        )));
    }
    let patterns: Vec<u64> = SubsetRanker::new(users, stars_per_row)?
        .iter()
        .map(|s| s.iter().fold(0u64, |m, &k| m | 1 << k))
        .collect();
    let mut nodes = 0;
    for packets in 1..=max_packets {
        let integer_cells = packets * (users - stars_per_row);
        if !integer_cells.is_multiple_of(gain) {
            continue;
        }
        let mut search = Search {
            users,
            gain,
            packets,
            patterns: &patterns,
            row_pattern: vec![0; packets],
            grid: vec![Cell::Star; packets * users],
            labels: Vec::new(),
            deficit: 0,
            nodes,
            budget,
        };
        let found = search.fill_row(0, 0)?;
        nodes = search.nodes;
        if found {
            let rows = search.grid.chunks(users).map(<[Cell]>::to_vec).collect();
            return Ok(Some(SearchResult {
                packets,
                witness: Pda::from_rows(rows)?,
                nodes,
            }));
        }
    }
    Ok(None)
}

struct Label {
    cells: Vec<(usize, usize)>,
    cols: u64,
}

struct Search<'a> {
    users: usize,
    gain: usize,
    packets: usize,
    patterns: &'a [u64],
    row_pattern: Vec<usize>,
    grid: Vec<Cell>,
    labels: Vec<Label>,
    /// Occurrences still owed by open labels.
    deficit: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn integer_cells_after(&self, row: usize, col: usize) -> usize {
        let per_row = self.users - self.patterns[0].count_ones() as usize;
        let in_row = (col + 1..self.users)
            .filter(|&k| self.patterns[self.row_pattern[row]] >> k & 1 == 0)
            .count();
        in_row + (self.packets - row - 1) * per_row
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchBudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn fill_row(&mut self, row: usize, min_pattern: usize) -> Result<bool> {
        if row == self.packets {
            return Ok(self.deficit == 0);
        }
        // Every open label needs its missing occurrences in distinct rows.
        let rows_left = self.packets - row;
        if self
            .labels
            .iter()
            .any(|l| l.cells.len() < self.gain && self.gain - l.cells.len() > rows_left)
        {
            return Ok(false);
        }
        let last = if row == 0 { 0 } else { self.patterns.len() - 1 };
        for p in min_pattern..=last {
            self.tick()?;
            self.row_pattern[row] = p;
            if self.fill_cell(row, 0)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn fill_cell(&mut self, row: usize, col: usize) -> Result<bool> {
        if col == self.users {
            return self.fill_row(row + 1, self.row_pattern[row]);
        }
        let mask = self.patterns[self.row_pattern[row]];
        if mask >> col & 1 == 1 {
            return self.fill_cell(row, col + 1);
        }
        let remaining = self.integer_cells_after(row, col);

        for s in 0..=self.labels.len() {
            let fresh = s == self.labels.len();
            if !fresh && !self.compatible(s, row, col, mask) {
                continue;
            }
            // Deficit after placing `s` here.
            let deficit = if fresh {
                self.deficit + self.gain - 1
            } else {
                self.deficit - 1
            };
            if deficit > remaining {
                continue;
            }
            self.tick()?;
            if fresh {
                self.labels.push(Label {
                    cells: Vec::with_capacity(self.gain),
                    cols: 0,
                });
            }
            self.labels[s].cells.push((row, col));
            self.labels[s].cols |= 1 << col;
            self.grid[row * self.users + col] = Cell::Symbol(s as u32);
            let saved = self.deficit;
            self.deficit = deficit;

            if self.fill_cell(row, col + 1)? {
                return Ok(true);
            }

            self.deficit = saved;
            self.grid[row * self.users + col] = Cell::Star;
            self.labels[s].cells.pop();
            self.labels[s].cols &= !(1 << col);
            if fresh {
                self.labels.pop();
            }
        }
        Ok(false)
    }

    fn compatible(&self, s: usize, row: usize, col: usize, row_mask: u64) -> bool {
        let label = &self.labels[s];
        if label.cells.len() >= self.gain || label.cols >> col & 1 == 1 {
            return false;
        }
        label.cells.iter().all(|&(j, k)| {
            j != row && row_mask >> k & 1 == 1 && self.grid[j * self.users + col].is_star()
        })
    }
}
