//! Matrix and edge-list text formats, and the JSON shape of count reports.
//!
//! Matrix format: the dimension `n` followed by `n·n` whitespace-separated
//! integers in row-major order.
//!
//! Edge-list format: a header line `n <count>`, then one edge per line,
//! `u v` (weight 1) or `u v w`. Vertices are 1-based; repeated edges sum
//! their weights; self-loops are allowed.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::CountReport;
use crate::linalg::SquareMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputFormat {
    Matrix,
    Edgelist,
}

impl FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => Ok(InputFormat::Matrix),
            "edgelist" => Ok(InputFormat::Edgelist),
            other => Err(Error::contract(format!("unknown input format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputGraph {
    pub n: usize,
    pub format: InputFormat,
    pub matrix: SquareMatrix,
}

/// Whitespace-separated tokens with 1-based line and column.
fn tokens(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().flat_map(|(ln, line)| {
        line.split_whitespace().map(move |tok| {
            // tokens are subslices of `line`, so the offset is exact
            let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
            (ln + 1, col, tok)
        })
    })
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(0, str::len) + 1;
    (line, col)
}

pub fn parse_matrix(text: &str) -> Result<SquareMatrix> {
    let mut toks = tokens(text);
    let (line, col, first) = toks
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input, expected dimension"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(line, col, format!("invalid dimension {first:?}")))?;
    if n < 1 {
        return Err(Error::parse(line, col, "dimension must be at least 1"));
    }
    let want = n * n;
    let mut entries = Vec::with_capacity(want);
    for (line, col, tok) in toks {
        if entries.len() == want {
            let found = tokens(text).count() - 1;
            return Err(Error::parse(
                line,
                col,
                format!("expected {want} entries, found {found}"),
            ));
        }
        let v: BigInt = tok
            .parse()
            .map_err(|_| Error::parse(line, col, format!("invalid integer {tok:?}")))?;
        entries.push(v);
    }
    if entries.len() != want {
        let (line, col) = end_position(text);
        return Err(Error::parse(
            line,
            col,
            format!("expected {want} entries, found {}", entries.len()),
        ));
    }
    SquareMatrix::new(n, entries)
}

pub fn parse_edgelist(text: &str) -> Result<SquareMatrix> {
    parse_edgelist_with(text, false)
}

/// With `undirected`, every edge `(u,v)` also adds its weight to `(v,u)`
/// (loops are added once).
pub fn parse_edgelist_with(text: &str, undirected: bool) -> Result<SquareMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty input, expected header \"n <count>\""))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let n: usize = match parts.as_slice() {
        ["n", count] => count
            .parse()
            .map_err(|_| Error::parse(hline, 1, format!("invalid vertex count {count:?}")))?,
        _ => {
            return Err(Error::parse(
                hline,
                1,
                format!("expected header \"n <count>\", found {:?}", header.trim()),
            ))
        }
    };
    if n < 1 {
        return Err(Error::parse(hline, 1, "vertex count must be at least 1"));
    }
    let mut a = SquareMatrix::zeros(n);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 && toks.len() != 3 {
            return Err(Error::parse(
                ln,
                1,
                format!("expected \"u v\" or \"u v w\", found {} tokens", toks.len()),
            ));
        }
        let vertex = |tok: &str| -> Result<usize> {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(ln, 1, format!("invalid vertex {tok:?}")))?;
            if v == 0 || v > n {
                return Err(Error::parse(
                    ln,
                    1,
                    format!("vertex {v} out of range 1..={n}"),
                ));
            }
            Ok(v)
        };
        let u = vertex(toks[0])?;
        let v = vertex(toks[1])?;
        let w: BigInt = match toks.get(2) {
            Some(t) => t
                .parse()
                .map_err(|_| Error::parse(ln, 1, format!("invalid weight {t:?}")))?,
            None => BigInt::from(1),
        };
        let cur = a.entry(u, v) + &w;
        a.set_entry(u, v, cur)?;
        if undirected && u != v {
            let cur = a.entry(v, u) + &w;
            a.set_entry(v, u, cur)?;
        }
    }
    Ok(a)
}

/// Detects the format when `format` is `None`: an input whose first token
/// is `n` is an edge list.
pub fn parse_input(text: &str, format: Option<InputFormat>) -> Result<InputGraph> {
    let format = format.unwrap_or_else(|| match text.split_whitespace().next() {
        Some("n") => InputFormat::Edgelist,
        _ => InputFormat::Matrix,
    });
    let matrix = match format {
        InputFormat::Matrix => parse_matrix(text)?,
        InputFormat::Edgelist => parse_edgelist(text)?,
    };
    Ok(InputGraph {
        n: matrix.dim(),
        format,
        matrix,
    })
}

/// Matrix format text: dimension on the first line, one row per line.
pub fn render_matrix(a: &SquareMatrix) -> String {
    let n = a.dim();
    let mut out = format!("{n}\n");
    for row in a.entries().chunks(n.max(1)).take(n) {
        let line: Vec<String> = row.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

/// JSON shape of a [`CountReport`]. The count is a decimal string since
/// counts routinely exceed 64 bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub method: String,
    pub count: String,
    pub terms_evaluated: u64,
    pub elapsed_ms: f64,
}

impl From<&CountReport> for ReportJson {
    fn from(r: &CountReport) -> Self {
        ReportJson {
            n: r.n,
            method: r.method.as_str().to_owned(),
            count: r.count.to_str_radix(10),
            terms_evaluated: r.terms_evaluated,
            elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
        }
    }
}
