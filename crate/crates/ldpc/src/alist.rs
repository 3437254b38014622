//! MacKay's alist text format for sparse binary matrices.
//!
//! ```text
//! n m
//! max_col_weight max_row_weight
//! <n column weights>
//! <m row weights>
//! <n lines: 1-based row indices of each column, zero-padded>
//! <m lines: 1-based column indices of each row, zero-padded>
//! ```

use std::fmt::Write as _;
use std::path::Path;

use ldpc_core::codebuilder::ParityCheck;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("alist line {line}: {msg}")]
pub struct AlistError {
    /// 1-based; 0 when the error concerns the file as a whole.
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: AlistError },
}

pub fn to_string(h: &ParityCheck) -> String {
    let rows = h.row_lists();
    let cols = h.columns();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    writeln!(out, "{} {}", h.cols(), h.rows()).unwrap();
    writeln!(out, "{max_col} {max_row}").unwrap();
    writeln!(out, "{}", join(&mut cols.iter().map(Vec::len))).unwrap();
    writeln!(out, "{}", join(&mut rows.iter().map(Vec::len))).unwrap();
    for (lists, width) in [(cols, max_col), (&rows[..], max_row)] {
        for l in lists {
            let padded = l.iter().map(|&x| x as usize + 1).chain(std::iter::repeat(0)).take(width);
            writeln!(out, "{}", join(&mut padded.into_iter())).unwrap();
        }
    }
    out
}

pub fn write(h: &ParityCheck, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, to_string(h))
}

pub fn read(path: &Path) -> Result<ParityCheck, ReadError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ReadError::Io { path: shown.clone(), source })?;
    parse(&text).map_err(|source| ReadError::Parse { path: shown, source })
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl Lines<'_> {
    /// Next non-blank line as numbers.
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>), AlistError> {
        self.next_numbers_from(what, true)
    }

    fn next_numbers_from(&mut self, what: &str, skip_blank: bool) -> Result<(usize, Vec<usize>), AlistError> {
        for (i, l) in self.inner.by_ref() {
            self.last = i + 1;
            if skip_blank && l.trim().is_empty() {
                continue;
            }
            let nums = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| AlistError { line: i + 1, msg: format!("`{t}` is not a non-negative integer") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok((i + 1, nums));
        }
        Err(AlistError { line: self.last + 1, msg: format!("unexpected end of file, expected {what}") })
    }

    fn expect(&mut self, what: &str, count: usize) -> Result<(usize, Vec<usize>), AlistError> {
        let (line, v) = self.next_numbers(what)?;
        if v.len() != count {
            return Err(AlistError { line, msg: format!("expected {count} numbers for {what}, found {}", v.len()) });
        }
        Ok((line, v))
    }
}

fn neighbor_lists(
    lines: &mut Lines,
    what: &str,
    count: usize,
    width: usize,
    weights: &[usize],
    bound: usize,
) -> Result<Vec<(usize, Vec<u32>)>, AlistError> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        // lists are empty lines when every weight is zero
        let (line, v) = lines.next_numbers_from(what, width > 0)?;
        if v.len() != width && v.len() != weights[k] {
            return Err(AlistError {
                line,
                msg: format!("{what} {} has {} entries, expected {width} (padded) or {}", k + 1, v.len(), weights[k]),
            });
        }
        let mut list: Vec<u32> = Vec::with_capacity(weights[k]);
        let mut seen_pad = false;
        for &x in &v {
            if x == 0 {
                seen_pad = true;
                continue;
            }
            if seen_pad {
                return Err(AlistError { line, msg: "index after zero padding".into() });
            }
            if x > bound {
                return Err(AlistError { line, msg: format!("index {x} exceeds {bound}") });
            }
            if list.contains(&((x - 1) as u32)) {
                return Err(AlistError { line, msg: format!("index {x} repeated") });
            }
            list.push((x - 1) as u32);
        }
        if list.len() != weights[k] {
            return Err(AlistError {
                line,
                msg: format!("{what} {} lists {} indices but its weight is {}", k + 1, list.len(), weights[k]),
            });
        }
        out.push((line, list));
    }
    Ok(out)
}

pub fn parse(text: &str) -> Result<ParityCheck, AlistError> {
    let mut lines = Lines { inner: text.lines().enumerate(), last: 0 };
    let (_, dims) = lines.expect("the dimensions `n m`", 2)?;
    let (n, m) = (dims[0], dims[1]);
    let (wline, maxw) = lines.expect("the maximum weights", 2)?;
    let (cline, col_w) = lines.expect("column weights", n)?;
    let (rline, row_w) = lines.expect("row weights", m)?;
    if col_w.iter().max().copied().unwrap_or(0) != maxw[0] {
        return Err(AlistError { line: cline, msg: format!("largest column weight differs from {} on line {wline}", maxw[0]) });
    }
    if row_w.iter().max().copied().unwrap_or(0) != maxw[1] {
        return Err(AlistError { line: rline, msg: format!("largest row weight differs from {} on line {wline}", maxw[1]) });
    }
    let cols = neighbor_lists(&mut lines, "column", n, maxw[0], &col_w, m)?;
    let rows = neighbor_lists(&mut lines, "row", m, maxw[1], &row_w, n)?;
    for (r, (line, list)) in rows.iter().enumerate() {
        for &c in list {
            if !cols[c as usize].1.contains(&(r as u32)) {
                return Err(AlistError {
                    line: *line,
                    msg: format!("row {} lists column {} but that column does not list the row", r + 1, c + 1),
                });
            }
        }
    }
    if let Ok((line, _)) = lines.next_numbers("") {
        return Err(AlistError { line, msg: "trailing data after the row lists".into() });
    }
    ParityCheck::from_columns(m, cols.into_iter().map(|(_, l)| l).collect())
        .ok_or(AlistError { line: 0, msg: "inconsistent matrix".into() })
}
