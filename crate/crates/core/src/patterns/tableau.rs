//! Semistandard Young tableaux and their correspondence with GT-patterns.

use std::fmt;

use super::GtPattern;
use crate::error::{Error, Result};

/// A semistandard Young tableau with entries in `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungTableau {
    rows: Vec<Vec<u32>>,
}

impl YoungTableau {
    /// Checks the diagram shape and the filling rules for rank `n`: entries
    /// in range, rows weakly increasing, columns strictly increasing.
    pub fn new(rows: Vec<Vec<u32>>, n: usize) -> Result<Self> {
        let rows: Vec<Vec<u32>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        if rows.len() > n {
            return Err(Error::InvalidTableau(format!(
                "{} rows exceed rank {n}",
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if i > 0 && row.len() > rows[i - 1].len() {
                return Err(Error::InvalidTableau(format!(
                    "row {} longer than the one above",
                    i + 1
                )));
            }
            if row.iter().any(|&e| e == 0 || e as usize > n) {
                return Err(Error::InvalidTableau(format!(
                    "entry outside 1..={n} in row {}",
                    i + 1
                )));
            }
            if row.windows(2).any(|p| p[0] > p[1]) {
                return Err(Error::InvalidTableau(format!("row {} decreases", i + 1)));
            }
            if i > 0 && row.iter().zip(&rows[i - 1]).any(|(b, a)| b <= a) {
                return Err(Error::InvalidTableau(format!(
                    "column not strictly increasing at row {}",
                    i + 1
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Row `k` of the tableau holds `m_{k,l} - m_{k,l-1}` boxes labeled `l`.
    pub(super) fn from_pattern(m: &GtPattern) -> Result<Self> {
        if !m.is_valid() {
            return Err(Error::InvalidPattern);
        }
        let n = m.rank();
        if m.get(n, n) < 0 {
            return Err(Error::InvalidTableau("pattern has negative entries".into()));
        }
        let mut rows = Vec::new();
        for k in 1..=n {
            let mut row = Vec::with_capacity(m.get(k, n) as usize);
            let mut prev = 0;
            for l in k..=n {
                let cur = m.get(k, l);
                row.extend(std::iter::repeat_n(l as u32, (cur - prev) as usize));
                prev = cur;
            }
            if row.is_empty() {
                break;
            }
            rows.push(row);
        }
        Ok(Self { rows })
    }

    /// `m_{k,l}` is the number of entries `<= l` in tableau row `k`.
    pub(super) fn to_pattern(&self, n: usize) -> Result<GtPattern> {
        if self.rows.len() > n || self.rows.iter().flatten().any(|&e| e as usize > n) {
            return Err(Error::InvalidTableau(format!(
                "tableau does not fit rank {n}"
            )));
        }
        let pattern_rows: Vec<Vec<i64>> = (1..=n)
            .rev()
            .map(|l| {
                (1..=l)
                    .map(|k| {
                        self.rows
                            .get(k - 1)
                            .map_or(0, |r| r.iter().filter(|&&e| e as usize <= l).count() as i64)
                    })
                    .collect()
            })
            .collect();
        GtPattern::from_rows(&pattern_rows)
    }

    /// Number of boxes labeled `l`, for `l = 1..=n`.
    pub fn content(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0; n];
        for &e in self.rows.iter().flatten() {
            c[e as usize - 1] += 1;
        }
        c
    }
}

impl fmt::Display for YoungTableau {
    /// Rows separated by `" / "`; entries run together when all are single
    /// digits, otherwise separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let compact = self.rows.iter().flatten().all(|&e| e < 10);
        let sep = if compact { "" } else { " " };
        let parts: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
            })
            .collect();
        write!(f, "{}", parts.join(" / "))
    }
}
