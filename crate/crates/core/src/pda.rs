//! Placement delivery arrays: representation, validation and derived data.
//!
//! A PDA is an `F x K` grid whose rows index packets and whose columns index
//! users. A star at `(j, k)` means user `k` caches packet `j` of every file;
//! an integer `s` at `(j, k)` means user `k` receives packet `j` of its
//! requested file in delivery slot `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::ratio::Rate;

/// One entry of a PDA.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Star,
    Symbol(u32),
}

impl Cell {
    pub fn is_star(self) -> bool {
        matches!(self, Cell::Star)
    }

    pub fn symbol(self) -> Option<u32> {
        match self {
            Cell::Star => None,
            Cell::Symbol(s) => Some(s),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Star => f.write_str("*"),
            Cell::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// The `(K, F, Z, S)` tuple of an array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PdaParams {
    pub k: usize,
    pub f: usize,
    pub z: usize,
    pub s: usize,
}

impl fmt::Display for PdaParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.k, self.f, self.z, self.s)
    }
}

/// An `F x K` array of stars and integers together with its declared
/// star count per column and symbol count.
///
/// Construction checks only the shape. Use [`Pda::validate`] to check the
/// defining conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pda {
    rows: usize,
    cols: usize,
    cells: Vec<Cell>,
    z: usize,
    s: usize,
}

impl Pda {
    /// Builds an array from rows, taking `Z` from column 0 and `S` as one
    /// more than the largest integer present.
    pub fn from_rows(grid: Vec<Vec<Cell>>) -> Result<Self> {
        let (rows, cols, cells) = flatten(grid)?;
        let z = (0..rows).filter(|&j| cells[j * cols].is_star()).count();
        let s = cells
            .iter()
            .filter_map(|c| c.symbol())
            .max()
            .map_or(0, |m| m as usize + 1);
        Ok(Self {
            rows,
            cols,
            cells,
            z,
            s,
        })
    }

    /// Builds an array with explicitly declared `Z` and `S`, as read from a
    /// file header. Validation checks the grid against these values.
    pub fn with_declared(grid: Vec<Vec<Cell>>, z: usize, s: usize) -> Result<Self> {
        let (rows, cols, cells) = flatten(grid)?;
        Ok(Self {
            rows,
            cols,
            cells,
            z,
            s,
        })
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, cells: Vec<Cell>) -> Self {
        debug_assert_eq!(cells.len(), rows * cols);
        let grid = cells.chunks(cols).map(<[Cell]>::to_vec).collect();
        Self::from_rows(grid).expect("non-empty rectangular grid")
    }

    /// Number of users, `K`.
    pub fn users(&self) -> usize {
        self.cols
    }

    /// Number of packets per file, `F`.
    pub fn packets(&self) -> usize {
        self.rows
    }

    /// Stars per column, `Z`.
    pub fn stars_per_column(&self) -> usize {
        self.z
    }

    /// Number of delivery slots, `S`.
    pub fn symbol_count(&self) -> usize {
        self.s
    }

    pub fn params(&self) -> PdaParams {
        PdaParams {
            k: self.cols,
            f: self.rows,
            z: self.z,
            s: self.s,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Cell] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Cell]> {
        self.cells.chunks(self.cols)
    }

    pub fn to_rows(&self) -> Vec<Vec<Cell>> {
        self.rows().map(<[Cell]>::to_vec).collect()
    }

    /// Positions `(row, col)` of every integer, grouped by integer value
    /// (including values outside `[0, S)`), in row-major order.
    pub fn occurrences(&self) -> BTreeMap<u32, Vec<(usize, usize)>> {
        let mut map: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (idx, cell) in self.cells.iter().enumerate() {
            if let Cell::Symbol(s) = cell {
                map.entry(*s)
                    .or_default()
                    .push((idx / self.cols, idx % self.cols));
            }
        }
        map
    }

    pub fn occurrences_of(&self, symbol: u32) -> Vec<(usize, usize)> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == Cell::Symbol(symbol))
            .map(|(idx, _)| (idx / self.cols, idx % self.cols))
            .collect()
    }

    /// Checks every defining condition and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        for k in 0..self.cols {
            let stars = (0..self.rows).filter(|&j| self.get(j, k).is_star()).count();
            if stars != self.z {
                violations.push(Violation {
                    condition: Condition::C1,
                    rows: vec![],
                    cols: vec![k],
                    message: format!("column {k} has {stars} stars, expected {}", self.z),
                });
            }
        }

        let occurrences = self.occurrences();
        let max_present = occurrences.keys().next_back().copied();
        for s in 0..self.s as u32 {
            if occurrences.contains_key(&s) {
                continue;
            }
            // A hole below a larger label is a labeling gap; a missing tail
            // means fewer integers than declared.
            let condition = match max_present {
                Some(max) if s < max => Condition::Labeling,
                _ => Condition::C2,
            };
            violations.push(Violation {
                condition,
                rows: vec![],
                cols: vec![],
                message: format!("integer {s} does not occur"),
            });
        }
        for (&s, cells) in occurrences.range(self.s as u32..) {
            violations.push(Violation {
                condition: Condition::Labeling,
                rows: cells.iter().map(|c| c.0).collect(),
                cols: cells.iter().map(|c| c.1).collect(),
                message: format!("integer {s} is outside [0,{})", self.s),
            });
        }

        for (&s, cells) in &occurrences {
            for (a, &(j1, k1)) in cells.iter().enumerate() {
                for &(j2, k2) in &cells[a + 1..] {
                    if j1 == j2 || k1 == k2 {
                        violations.push(Violation {
                            condition: Condition::C3a,
                            rows: dedup_pair(j1, j2),
                            cols: dedup_pair(k1, k2),
                            message: format!(
                                "integer {s} at ({j1},{k1}) and ({j2},{k2}) shares a row or column"
                            ),
                        });
                    } else if !self.get(j1, k2).is_star() || !self.get(j2, k1).is_star() {
                        violations.push(Violation {
                            condition: Condition::C3b,
                            rows: dedup_pair(j1, j2),
                            cols: dedup_pair(k1, k2),
                            message: format!(
                                "integer {s} at ({j1},{k1}) and ({j2},{k2}): cross entries \
                                 ({j1},{k2})={} and ({j2},{k1})={} must both be stars",
                                self.get(j1, k2),
                                self.get(j2, k1)
                            ),
                        });
                    }
                }
            }
        }

        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid()
    }

    /// Occurrence count of each integer in `[0, S)`.
    pub fn occurrence_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.s];
        for s in self.cells.iter().filter_map(|c| c.symbol()) {
            if let Some(c) = counts.get_mut(s as usize) {
                *c += 1;
            }
        }
        counts
    }

    /// The common occurrence count `g`, when every integer occurs equally often.
    pub fn regularity(&self) -> Regularity {
        let counts = self.occurrence_counts();
        let gain = match counts.split_first() {
            Some((&first, rest)) if first > 0 && rest.iter().all(|&c| c == first) => Some(first),
            _ => None,
        };
        Regularity { gain }
    }

    /// The delivery rate `S/F`.
    pub fn rate(&self) -> Rate {
        Ratio::new(self.s as u64, self.rows as u64)
    }

    /// Rows holding a star in column `user`, ascending.
    pub fn placement_set(&self, user: usize) -> Result<PlacementSet> {
        if user >= self.cols {
            return Err(Error::IndexOutOfRange {
                index: user,
                limit: self.cols,
            });
        }
        let rows = (0..self.rows)
            .filter(|&j| self.get(j, user).is_star())
            .collect();
        Ok(PlacementSet { user, rows })
    }

    pub fn placement_sets(&self) -> Vec<PlacementSet> {
        (0..self.cols)
            .map(|k| self.placement_set(k).expect("column in range"))
            .collect()
    }

    /// Checks `g <= K*Z/F + 1` together with the counting identity
    /// `S*g = K*(F-Z)`.
    pub fn check_gain_bound(&self) -> Result<bool> {
        let g = self.regularity().gain.ok_or(Error::NotRegular)?;
        let identity = self.s * g == self.cols * (self.rows - self.z.min(self.rows));
        Ok(identity && gain_bound_holds(self.cols, self.rows, self.z, g))
    }

    /// Keeps the first `keep` columns and compacts the surviving labels.
    pub fn delete_columns(&self, keep: usize) -> Result<Pda> {
        if keep == 0 || keep > self.cols {
            return Err(Error::IndexOutOfRange {
                index: keep,
                limit: self.cols,
            });
        }
        let mask: Vec<bool> = (0..self.cols).map(|k| k < keep).collect();
        self.select_columns(&mask)
    }

    /// Keeps the columns whose mask entry is true, in order, and compacts the
    /// surviving labels to `0..S'` preserving their relative order.
    pub fn select_columns(&self, mask: &[bool]) -> Result<Pda> {
        if mask.len() != self.cols {
            return Err(Error::IndexOutOfRange {
                index: mask.len(),
                limit: self.cols,
            });
        }
        let kept: Vec<usize> = (0..self.cols).filter(|&k| mask[k]).collect();
        if kept.is_empty() {
            return Err(Error::Empty);
        }
        let grid: Vec<Vec<Cell>> = (0..self.rows)
            .map(|j| kept.iter().map(|&k| self.get(j, k)).collect())
            .collect();
        let mut survivors: Vec<u32> = grid.iter().flatten().filter_map(|c| c.symbol()).collect();
        survivors.sort_unstable();
        survivors.dedup();
        let remap: BTreeMap<u32, u32> = survivors
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        let grid = grid
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| match c {
                        Cell::Star => Cell::Star,
                        Cell::Symbol(s) => Cell::Symbol(remap[&s]),
                    })
                    .collect()
            })
            .collect();
        Pda::from_rows(grid)
    }

    /// Renumbers integers by first occurrence in a row-major scan.
    pub fn canonical_relabel(&self) -> Pda {
        let mut remap: BTreeMap<u32, u32> = BTreeMap::new();
        let cells = self
            .cells
            .iter()
            .map(|c| match *c {
                Cell::Star => Cell::Star,
                Cell::Symbol(s) => {
                    let next = remap.len() as u32;
                    Cell::Symbol(*remap.entry(s).or_insert(next))
                }
            })
            .collect();
        Pda {
            rows: self.rows,
            cols: self.cols,
            cells,
            z: self.z,
            s: remap.len(),
        }
    }

    /// Applies `f` to every integer label, leaving `Z` and `S` unchanged.
    pub fn map_symbols(&self, f: impl Fn(u32) -> u32) -> Pda {
        let cells = self
            .cells
            .iter()
            .map(|c| match *c {
                Cell::Star => Cell::Star,
                Cell::Symbol(s) => Cell::Symbol(f(s)),
            })
            .collect();
        Pda { cells, ..*self }
    }

    /// Returns a copy with one cell replaced; `Z` and `S` are kept as declared.
    pub fn with_cell(&self, row: usize, col: usize, cell: Cell) -> Pda {
        let mut out = self.clone();
        out.cells[row * self.cols + col] = cell;
        out
    }

    /// Placement-set characterization of the integer `symbol`.
    ///
    /// With occurrences at rows `i_0..i_{g-1}` and columns `k_0..k_{g-1}`
    /// (pairwise distinct), holds iff no occurrence row is cached by every
    /// occurrence column, and for each `l` the rows cached by all occurrence
    /// columns other than `k_l` meet the occurrence rows exactly in `i_l`.
    /// Returns false when rows or columns repeat.
    pub fn placement_characterization(&self, symbol: u32) -> bool {
        let occ = self.occurrences_of(symbol);
        let rows: Vec<usize> = occ.iter().map(|o| o.0).collect();
        let cols: Vec<usize> = occ.iter().map(|o| o.1).collect();
        if has_duplicates(&rows) || has_duplicates(&cols) {
            return false;
        }
        // Rows among `rows` cached by every column in `cached_by`.
        let common = |cached_by: &mut dyn Iterator<Item = usize>| -> Vec<usize> {
            let cached_by: Vec<usize> = cached_by.collect();
            rows.iter()
                .copied()
                .filter(|&j| cached_by.iter().all(|&k| self.get(j, k).is_star()))
                .collect()
        };
        if !common(&mut cols.iter().copied()).is_empty() {
            return false;
        }
        (0..occ.len()).all(|l| {
            let others = &mut cols
                .iter()
                .enumerate()
                .filter(|&(h, _)| h != l)
                .map(|(_, &k)| k);
            common(others) == [rows[l]]
        })
    }
}

impl fmt::Display for Pda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .cells
            .iter()
            .map(|c| c.to_string().len())
            .max()
            .unwrap_or(1);
        for row in self.rows() {
            let line: Vec<String> = row
                .iter()
                .map(|c| format!("{:>width$}", c.to_string()))
                .collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// `g <= K*Z/F + 1`, compared as `g*F <= K*Z + F`.
pub fn gain_bound_holds(k: usize, f: usize, z: usize, g: usize) -> bool {
    (g as u128) * (f as u128) <= (k as u128) * (z as u128) + f as u128
}

/// Defining condition tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Equal star count in every column.
    C1,
    /// Every declared integer occurs.
    C2,
    /// Equal integers lie in distinct rows and columns.
    C3a,
    /// Cross entries of equal integers are stars.
    C3b,
    /// Integers form the contiguous range `0..S`.
    Labeling,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::C1 => "C1",
            Condition::C2 => "C2",
            Condition::C3a => "C3a",
            Condition::C3b => "C3b",
            Condition::Labeling => "Labeling",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} rows={:?} cols={:?}: {}",
            self.condition, self.rows, self.cols, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Regularity {
    /// Present iff every integer occurs exactly this many times.
    pub gain: Option<usize>,
}

/// Rows cached by one user.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlacementSet {
    pub user: usize,
    pub rows: Vec<usize>,
}

impl PlacementSet {
    pub fn contains(&self, row: usize) -> bool {
        self.rows.binary_search(&row).is_ok()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

fn flatten(grid: Vec<Vec<Cell>>) -> Result<(usize, usize, Vec<Cell>)> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::Empty);
    }
    let mut cells = Vec::with_capacity(rows * cols);
    for (j, row) in grid.into_iter().enumerate() {
        if row.len() != cols {
            return Err(Error::RaggedGrid {
                row: j,
                expected: cols,
                found: row.len(),
            });
        }
        cells.extend(row);
    }
    Ok((rows, cols, cells))
}

fn dedup_pair(a: usize, b: usize) -> Vec<usize> {
    if a == b {
        vec![a]
    } else {
        vec![a.min(b), a.max(b)]
    }
}

fn has_duplicates(xs: &[usize]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).any(|w| w[0] == w[1])
}

/// Parses a compact grid literal: rows separated by `;` or newlines, cells by
/// whitespace, `*` for a star.
#[cfg(test)]
pub(crate) fn grid(text: &str) -> Vec<Vec<Cell>> {
    text.split([';', '\n'])
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split_whitespace()
                .map(|t| match t {
                    "*" => Cell::Star,
                    n => Cell::Symbol(n.parse().unwrap()),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
pub(crate) const A22: &str = "* 1 * 2 * 0; 0 * * 3 1 *; * 3 0 * 2 *; 2 * 1 * * 3";
