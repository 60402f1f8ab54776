//! Gelfand-Tsetlin patterns: the basis states of an irrep.
//!
//! A pattern of rank N is a triangle of integers `m_{k,l}` with
//! `1 <= k <= l <= N`. Row `N` is the i-weight of the irrep; lower rows obey
//! the betweenness condition `m_{k,l} >= m_{k,l-1} >= m_{k+1,l}`.
//!
//! Patterns of one irrep are totally ordered by comparing entries row by row
//! from the top, left to right within a row. Storage follows that order, so
//! the derived `Ord` is exactly the pattern order.

mod tableau;

pub use tableau::YoungTableau;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::weights::IWeight;

/// One basis state of an su(N) irrep.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GtPattern {
    n: usize,
    // rows l = N, N-1, ..., 1, each left to right
    data: Vec<i64>,
}

/// Pattern weight `(w_1, ..., w_N)`: differences of consecutive row sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PWeight(pub Vec<i64>);

/// Eigenvalues of the `J_z^(l)` generators, stored doubled so they stay integral.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZWeight(pub Vec<i64>);

#[inline]
fn offset(n: usize, k: usize, l: usize) -> usize {
    debug_assert!(1 <= k && k <= l && l <= n);
    (n * (n + 1) - l * (l + 1)) / 2 + (k - 1)
}

impl GtPattern {
    /// Builds a candidate pattern from rows given top to bottom.
    ///
    /// Only the triangular shape is checked; use [`Self::is_valid`] for the
    /// betweenness condition.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedPattern("no rows".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n - i {
                return Err(Error::MalformedPattern(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n - i
                )));
            }
        }
        Ok(Self {
            n,
            data: rows.concat(),
        })
    }

    /// The single-entry array `M^{k,l}`: one at `(k,l)`, zero elsewhere.
    pub fn single_entry(n: usize, k: usize, l: usize) -> Self {
        let mut data = vec![0; n * (n + 1) / 2];
        data[offset(n, k, l)] = 1;
        Self { n, data }
    }

    /// Highest-weight pattern: every diagonal copies its top entry.
    pub fn highest(s: &IWeight) -> Self {
        let n = s.rank();
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        for l in (1..=n).rev() {
            data.extend_from_slice(&s.entries()[..l]);
        }
        Self { n, data }
    }

    /// Lowest pattern: every entry takes its lower bound `m_{k+1,l+1}`.
    pub fn lowest(s: &IWeight) -> Self {
        let n = s.rank();
        let mut data = Vec::with_capacity(n * (n + 1) / 2);
        let mut above = s.entries().to_vec();
        data.extend_from_slice(&above);
        for _ in (1..n).rev() {
            let row: Vec<i64> = above[1..].to_vec();
            data.extend_from_slice(&row);
            above = row;
        }
        Self { n, data }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Entry `m_{k,l}` (1-based).
    pub fn get(&self, k: usize, l: usize) -> i64 {
        self.data[offset(self.n, k, l)]
    }

    fn set(&mut self, k: usize, l: usize, v: i64) {
        let o = offset(self.n, k, l);
        self.data[o] = v;
    }

    /// Row `l` (1-based), left to right.
    pub fn row(&self, l: usize) -> &[i64] {
        let o = offset(self.n, 1, l);
        &self.data[o..o + l]
    }

    /// Rows top to bottom.
    pub fn rows(&self) -> Vec<Vec<i64>> {
        (1..=self.n).rev().map(|l| self.row(l).to_vec()).collect()
    }

    /// The irrep this pattern belongs to.
    pub fn top(&self) -> IWeight {
        IWeight::new(self.row(self.n).to_vec()).expect("valid pattern has nonincreasing top row")
    }

    /// Betweenness condition on every pair of adjacent rows.
    pub fn is_valid(&self) -> bool {
        let n = self.n;
        if self.row(n).windows(2).any(|w| w[0] < w[1]) {
            return false;
        }
        for l in 2..=n {
            for k in 1..l {
                let mid = self.get(k, l - 1);
                if self.get(k, l) < mid || mid < self.get(k + 1, l) {
                    return false;
                }
            }
        }
        true
    }

    fn require_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidPattern)
        }
    }

    /// `self + delta * M^{k,l}` if that is a valid pattern, for `l < N`.
    ///
    /// Only the inequalities touching `(k,l)` are rechecked, so `self` must
    /// already be valid.
    pub fn shifted(&self, k: usize, l: usize, delta: i64) -> Option<Self> {
        debug_assert!(l < self.n);
        let v = self.get(k, l) + delta;
        if v > self.get(k, l + 1) || v < self.get(k + 1, l + 1) {
            return None;
        }
        if l > 1 {
            if k < l && v < self.get(k, l - 1) {
                return None;
            }
            if k > 1 && v > self.get(k - 1, l - 1) {
                return None;
            }
        }
        let mut out = self.clone();
        out.set(k, l, v);
        Some(out)
    }

    /// Row sums `sigma_1, ..., sigma_N`.
    pub fn row_sums(&self) -> Vec<i64> {
        (1..=self.n).map(|l| self.row(l).iter().sum()).collect()
    }

    pub fn pweight(&self) -> PWeight {
        let sigma = self.row_sums();
        let mut prev = 0;
        PWeight(
            sigma
                .into_iter()
                .map(|s| {
                    let w = s - prev;
                    prev = s;
                    w
                })
                .collect(),
        )
    }

    /// Doubled z-weight `2*lambda_l = 2 sigma_l - sigma_{l+1} - sigma_{l-1}`.
    pub fn zweight(&self) -> ZWeight {
        let sigma = self.row_sums();
        ZWeight(
            (0..self.n - 1)
                .map(|i| {
                    let below = if i == 0 { 0 } else { sigma[i - 1] };
                    2 * sigma[i] - sigma[i + 1] - below
                })
                .collect(),
        )
    }

    /// Next pattern in the order, or `None` for the highest one.
    pub fn successor(&self) -> Option<Self> {
        let n = self.n;
        // Walk positions from the largest index down; the first entry that can
        // still grow below its upper bound m_{k,l+1} is incremented.
        for l in 1..n {
            for k in (1..=l).rev() {
                if self.get(k, l) < self.get(k, l + 1) {
                    let mut next = self.clone();
                    next.set(k, l, self.get(k, l) + 1);
                    next.reset_after(k, l, |p, k2, l2| p.get(k2 + 1, l2 + 1));
                    return Some(next);
                }
            }
        }
        None
    }

    /// Previous pattern in the order, or `None` for the lowest one.
    pub fn predecessor(&self) -> Option<Self> {
        let n = self.n;
        for l in 1..n {
            for k in (1..=l).rev() {
                if self.get(k, l) > self.get(k + 1, l + 1) {
                    let mut prev = self.clone();
                    prev.set(k, l, self.get(k, l) - 1);
                    prev.reset_after(k, l, |p, k2, l2| p.get(k2, l2 + 1));
                    return Some(prev);
                }
            }
        }
        None
    }

    // Assigns every position after (k,l) in pattern order from `value`,
    // which reads the already-updated row above.
    fn reset_after(&mut self, k: usize, l: usize, value: impl Fn(&Self, usize, usize) -> i64) {
        for k2 in (k + 1)..=l {
            let v = value(self, k2, l);
            self.set(k2, l, v);
        }
        for l2 in (1..l).rev() {
            for k2 in 1..=l2 {
                let v = value(self, k2, l2);
                self.set(k2, l2, v);
            }
        }
    }

    /// Position `Q(M)` of this pattern among all patterns of its irrep,
    /// starting from 1 for the lowest pattern.
    pub fn index(&self) -> Result<u64> {
        self.require_valid()?;
        let n = self.n;
        let mut smaller: u64 = 0;
        for l in (1..n).rev() {
            for k in 1..=l {
                let lo = self.get(k + 1, l + 1);
                for v in lo..self.get(k, l) {
                    let c = self.completions(k, l, v)?;
                    smaller = smaller
                        .checked_add(c)
                        .ok_or(Error::Overflow("pattern index"))?;
                }
            }
        }
        Ok(smaller + 1)
    }

    /// Pattern number `q` (1-based) of irrep `s`.
    pub fn from_index(s: &IWeight, q: u64) -> Result<Self> {
        let dim = s.try_dimension()?;
        if q < 1 || q > dim {
            return Err(Error::IndexOutOfRange {
                index: q,
                dimension: dim,
            });
        }
        let n = s.rank();
        let mut m = Self::lowest(s);
        let mut rem = q;
        for l in (1..n).rev() {
            for k in 1..=l {
                let lo = m.get(k + 1, l + 1);
                let hi = m.get(k, l + 1);
                let mut v = lo;
                loop {
                    let c = m.completions(k, l, v)?;
                    if rem <= c || v == hi {
                        break;
                    }
                    rem -= c;
                    v += 1;
                }
                m.set(k, l, v);
            }
        }
        debug_assert_eq!(rem, 1);
        Ok(m)
    }

    // Number of valid patterns that agree with `self` on all positions before
    // (k,l), carry `v` at (k,l), and are arbitrary afterwards.
    fn completions(&self, k: usize, l: usize, v: i64) -> Result<u64> {
        let mut row: Vec<i64> = self.row(l).to_vec();
        row[k - 1] = v;
        let bounds: Vec<(i64, i64)> = (k + 1..=l)
            .map(|j| (self.get(j + 1, l + 1), self.get(j, l + 1)))
            .collect();
        for (j, b) in bounds.iter().enumerate() {
            row[k + j] = b.0;
        }
        let mut total: u64 = 0;
        loop {
            let d = IWeight::new(row.clone())
                .expect("row inside betweenness bounds is nonincreasing")
                .try_dimension()?;
            total = total
                .checked_add(d)
                .ok_or(Error::Overflow("pattern index"))?;
            // odometer over the free entries k+1..l
            let mut j = bounds.len();
            loop {
                if j == 0 {
                    return Ok(total);
                }
                j -= 1;
                if row[k + j] < bounds[j].1 {
                    row[k + j] += 1;
                    break;
                }
                row[k + j] = bounds[j].0;
            }
        }
    }

    pub fn to_tableau(&self) -> Result<YoungTableau> {
        YoungTableau::from_pattern(self)
    }

    pub fn from_tableau(t: &YoungTableau, n: usize) -> Result<Self> {
        t.to_pattern(n)
    }
}

/// All patterns of irrep `s`, in increasing order.
pub fn enumerate(s: &IWeight) -> Vec<GtPattern> {
    let mut out = Vec::with_capacity(s.dimension() as usize);
    let mut cur = Some(GtPattern::lowest(s));
    while let Some(m) = cur {
        cur = m.successor();
        out.push(m);
    }
    out
}

/// The ordered pattern basis of one irrep with reverse lookup.
#[derive(Debug, Clone)]
pub struct Basis {
    weight: IWeight,
    patterns: Vec<GtPattern>,
    lookup: HashMap<GtPattern, usize>,
}

impl Basis {
    pub fn new(weight: &IWeight) -> Self {
        let patterns = enumerate(weight);
        let lookup = patterns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Self {
            weight: weight.clone(),
            patterns,
            lookup,
        }
    }

    pub fn weight(&self) -> &IWeight {
        &self.weight
    }

    pub fn dim(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[GtPattern] {
        &self.patterns
    }

    /// Pattern at 0-based position `i` (that is, `Q = i + 1`).
    pub fn pattern(&self, i: usize) -> &GtPattern {
        &self.patterns[i]
    }

    /// 0-based position of `m`, if it belongs to this irrep.
    pub fn position(&self, m: &GtPattern) -> Option<usize> {
        self.lookup.get(m).copied()
    }
}

impl fmt::Display for GtPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in (1..=self.n).rev() {
            if l != self.n {
                write!(f, "; ")?;
            }
            for (i, m) in self.row(l).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for GtPattern {
    type Err = Error;

    /// Rows top to bottom separated by `;`, entries by whitespace:
    /// `"2 1 0; 2 1; 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|row| {
                row.split_whitespace()
                    .map(|tok| {
                        tok.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad integer {tok:?} in {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&rows)
    }
}

impl PWeight {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise sum.
    pub fn add(&self, other: &PWeight) -> PWeight {
        PWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference.
    pub fn sub(&self, other: &PWeight) -> PWeight {
        PWeight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Height `sum_l (N - l) w_l`; every lowering step decreases it by one.
    pub fn height(&self) -> i64 {
        let n = self.0.len() as i64;
        self.0
            .iter()
            .enumerate()
            .map(|(i, w)| (n - 1 - i as i64) * w)
            .sum()
    }
}

impl fmt::Display for PWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl ZWeight {
    pub fn add(&self, other: &ZWeight) -> ZWeight {
        ZWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}
