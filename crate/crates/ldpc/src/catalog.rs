//! Text catalog of trapping-set patterns.
//!
//! ```text
//! # patterns a=6 b=0 girth>=6
//! # count 2
//! pattern 1 girth 6 checks 9
//! edge 0 1
//! pendant 3
//! check 0 2 4
//! end
//! ```
//!
//! `edge` lines are degree-2 checks, `pendant` lines mark a degree-1 check
//! on a vertex and `check` lines list any larger check.

use std::fmt::Write as _;

use ldpc_core::graph::{generate_patterns, TrappingSetPattern, COLUMN_WEIGHT};

/// Why no pattern exists, if a counting argument settles it.
pub fn infeasibility_note(a: usize, b: usize) -> Option<String> {
    let stubs = COLUMN_WEIGHT * a;
    if a == 0 {
        return Some("a pattern needs at least one variable".into());
    }
    if b > stubs {
        return Some(format!("{a} variables of degree {COLUMN_WEIGHT} touch at most {stubs} odd-degree checks"));
    }
    if (stubs - b) % 2 == 1 {
        return Some(format!(
            "{stubs} variable edges minus {b} pendant checks leaves an odd count that degree-2 checks cannot pair up"
        ));
    }
    let edges = (stubs - b) / 2;
    if edges > a * (a - 1) / 2 {
        return Some(format!(
            "{edges} degree-2 checks are needed but {a} variables admit at most {} without a four-cycle",
            a * (a - 1) / 2
        ));
    }
    None
}

pub fn render(a: usize, b: usize, girth_min: u32, patterns: &[TrappingSetPattern]) -> String {
    let mut out = String::new();
    writeln!(out, "# patterns a={a} b={b} girth>={girth_min}").unwrap();
    writeln!(out, "# count {}", patterns.len()).unwrap();
    if patterns.is_empty() {
        let note = infeasibility_note(a, b)
            .unwrap_or_else(|| format!("no connected pattern meets girth {girth_min} within the generator limits"));
        writeln!(out, "# note: {note}").unwrap();
    }
    for (k, p) in patterns.iter().enumerate() {
        writeln!(out, "pattern {} girth {} checks {}", k + 1, p.girth(), p.checks().len()).unwrap();
        for c in p.checks() {
            let tag = match c.len() {
                1 => "pendant",
                2 => "edge",
                _ => "check",
            };
            let vs: Vec<String> = c.iter().map(u8::to_string).collect();
            writeln!(out, "{tag} {}", vs.join(" ")).unwrap();
        }
        writeln!(out, "end").unwrap();
    }
    out
}

pub fn generate(a: usize, b: usize, girth_min: u32) -> (Vec<TrappingSetPattern>, String) {
    let pats = generate_patterns(a, b, girth_min);
    let text = render(a, b, girth_min, &pats);
    (pats, text)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("catalog line {line}: {msg}")]
pub struct CatalogError {
    pub line: usize,
    pub msg: String,
}

/// Reads back the patterns of a catalog produced by [`render`].
pub fn parse(text: &str) -> Result<Vec<TrappingSetPattern>, CatalogError> {
    let mut out = Vec::new();
    let mut a = None;
    let mut current: Option<Vec<Vec<u8>>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| CatalogError { line, msg: msg.into() };
        let l = raw.trim();
        if let Some(rest) = l.strip_prefix("# patterns ") {
            let tok = rest.split_whitespace().find_map(|t| t.strip_prefix("a=")).ok_or(err("missing a="))?;
            a = Some(tok.parse::<usize>().map_err(|_| err("bad a="))?);
            continue;
        }
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let mut words = l.split_whitespace();
        match words.next().unwrap() {
            "pattern" if current.is_none() => current = Some(Vec::new()),
            "end" => {
                let checks = current.take().ok_or(err("`end` outside a pattern"))?;
                let a = a.ok_or(err("header with a= missing"))?;
                out.push(TrappingSetPattern::new(a, checks).map_err(|e| err(&e.to_string()))?);
            }
            "edge" | "pendant" | "check" => {
                let checks = current.as_mut().ok_or(err("check outside a pattern"))?;
                let vs = words.map(|w| w.parse::<u8>()).collect::<Result<Vec<_>, _>>().map_err(|_| err("bad vertex"))?;
                checks.push(vs);
            }
            _ => return Err(err("unrecognised line")),
        }
    }
    if current.is_some() {
        return Err(CatalogError { line: text.lines().count(), msg: "unterminated pattern".into() });
    }
    Ok(out)
}
