//! Plain-text coefficient tables.
//!
//! ```text
//! # N S S' S'' alpha_count
//! alpha<TAB>Qpp<TAB>Q<TAB>Qp<TAB>value
//! ```
//!
//! Values are written in scientific notation with 15 significant digits;
//! zero coefficients are omitted.

use std::io::{BufRead, Write};

use crate::clebsch::CgcTensor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weights::IWeight;

/// Contents of a coefficient table read back from text.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub left: IWeight,
    pub right: IWeight,
    pub target: IWeight,
    pub alpha_count: usize,
    /// `(alpha, Q'', Q, Q', value)`, all indices 1-based.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
}

pub fn write_table<T: Scalar, W: Write>(tensor: &CgcTensor<T>, out: &mut W) -> std::io::Result<()> {
    writeln!(
        out,
        "# {} {} {} {} {}",
        tensor.left().rank(),
        tensor.left(),
        tensor.right(),
        tensor.target(),
        tensor.alpha_count()
    )?;
    for (alpha, qpp, q, qp, v) in tensor.entries() {
        writeln!(out, "{alpha}\t{qpp}\t{q}\t{qp}\t{:.14e}", v)?;
    }
    Ok(())
}

fn field<F: std::str::FromStr>(text: Option<&str>, line: usize, what: &str) -> Result<F> {
    text.and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("line {line}: bad or missing {what}")))
}

pub fn read_table<R: BufRead>(input: R) -> Result<Table> {
    let mut lines = input.lines().enumerate();
    let header = match lines.next() {
        Some((_, Ok(h))) => h,
        _ => return Err(Error::Parse("missing header".into())),
    };
    let mut parts = header
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse("header must start with '#'".into()))?
        .split_whitespace();
    let n: usize = field(parts.next(), 1, "N")?;
    let mut weight = |what: &str| -> Result<IWeight> {
        let text = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("line 1: missing {what}")))?;
        IWeight::parse_with_rank(text, n)
    };
    let (left, right, target) = (weight("S")?, weight("S'")?, weight("S''")?);
    let alpha_count: usize = field(parts.next(), 1, "alpha_count")?;

    let mut entries = Vec::new();
    for (i, line) in lines {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut f = line.split('\t');
        let no = i + 1;
        entries.push((
            field(f.next(), no, "alpha")?,
            field(f.next(), no, "Qpp")?,
            field(f.next(), no, "Q")?,
            field(f.next(), no, "Qp")?,
            field(f.next(), no, "value")?,
        ));
    }
    Ok(Table {
        left,
        right,
        target,
        alpha_count,
        entries,
    })
}
