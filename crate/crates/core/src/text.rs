//! Plain-text PDA format.
//!
//! ```text
//! # optional comment lines
//! K F Z S
//! <F lines of K tokens, each `*` or a decimal integer>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::pda::{Cell, Pda};

pub fn write_pda(pda: &Pda) -> String {
    let p = pda.params();
    let mut out = format!("{} {} {} {}\n", p.k, p.f, p.z, p.s);
    for row in pda.rows() {
        let tokens: Vec<String> = row.iter().map(Cell::to_string).collect();
        let _ = writeln!(out, "{}", tokens.join(" "));
    }
    out
}

/// Parses the text format. The header's `Z` and `S` become the declared
/// values checked by validation; `K` and `F` must match the grid.
pub fn parse_pda(text: &str) -> Result<Pda> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('#') && !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing header `K F Z S`".into(),
    })?;
    let fields = tokens(header);
    if fields.len() != 4 {
        return Err(Error::Parse {
            line: header_line,
            column: 1,
            message: format!("header needs 4 integers, found {}", fields.len()),
        });
    }
    let mut nums = [0usize; 4];
    for (slot, (col, tok)) in nums.iter_mut().zip(&fields) {
        *slot = tok.parse().map_err(|_| Error::Parse {
            line: header_line,
            column: *col,
            message: format!("expected a non-negative integer, found `{tok}`"),
        })?;
    }
    let [k, f, z, s] = nums;

    let mut grid = Vec::with_capacity(f);
    for (line_no, line) in lines {
        if grid.len() == f {
            return Err(Error::Parse {
                line: line_no,
                column: 1,
                message: format!("more than F = {f} rows"),
            });
        }
        let toks = tokens(line);
        if toks.len() != k {
            return Err(Error::Parse {
                line: line_no,
                column: toks.get(k).map_or(line.len() + 1, |t| t.0),
                message: format!("expected {k} cells, found {}", toks.len()),
            });
        }
        let row = toks
            .into_iter()
            .map(|(col, tok)| match tok {
                "*" => Ok(Cell::Star),
                n => n.parse().map(Cell::Symbol).map_err(|_| Error::Parse {
                    line: line_no,
                    column: col,
                    message: format!("expected `*` or an integer, found `{n}`"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        grid.push(row);
    }
    if grid.len() != f {
        return Err(Error::Parse {
            line: text.lines().count() + 1,
            column: 1,
            message: format!("expected {f} rows, found {}", grid.len()),
        });
    }
    Pda::with_declared(grid, z, s).map_err(|e| Error::Parse {
        line: header_line,
        column: 1,
        message: e.to_string(),
    })
}

/// Whitespace-separated tokens with their 1-based byte column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pda::{grid, A22};
    use proptest::prelude::*;

    const A22_TEXT: &str = "6 4 2 4\n* 1 * 2 * 0\n0 * * 3 1 *\n* 3 0 * 2 *\n2 * 1 * * 3\n";

    #[test]
    fn writes_a22() {
        let p = Pda::from_rows(grid(A22)).unwrap();
        assert_eq!(write_pda(&p), A22_TEXT);
    }

    #[test]
    fn reads_with_comments() {
        let text = format!("# comment\n\n{A22_TEXT}# trailing\n");
        let p = parse_pda(&text).unwrap();
        assert_eq!(p, Pda::from_rows(grid(A22)).unwrap());
    }

    #[test]
    fn declared_values_are_kept() {
        let p = parse_pda("2 2 2 1\n* *\n* *\n").unwrap();
        assert_eq!(p.symbol_count(), 1);
        assert!(!p.is_valid());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_pda("2 2 1 1\n* 0\n0 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 3,
                message: "expected `*` or an integer, found `x`".into()
            }
        );
        assert!(matches!(
            parse_pda("2 2 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_pda("2 2 1 1\n* 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_pda("2 2 1 1\n* 0 1\n0 *\n"),
            Err(Error::Parse {
                line: 2,
                column: 5,
                ..
            })
        ));
        assert!(matches!(
            parse_pda("2 1 1 1\n* 0\n0 *\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(parse_pda(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_pda("0 0 0 0\n"), Err(Error::Parse { .. })));
    }

    proptest! {
        #[test]
        fn roundtrip(rows in 1usize..6, cols in 1usize..6, seed in proptest::collection::vec(0u32..8, 36)) {
            let g: Vec<Vec<Cell>> = (0..rows)
                .map(|j| (0..cols).map(|k| match seed[j * 6 + k] {
                    0 | 1 => Cell::Star,
                    x => Cell::Symbol(x - 2),
                }).collect())
                .collect();
            let p = Pda::from_rows(g).unwrap().canonical_relabel();
            let text = write_pda(&p);
            let back = parse_pda(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(write_pda(&back), text);
        }
    }
}
