//! Irrep labels (i-weights) of su(N).
//!
//! An i-weight is a nonincreasing sequence of N integers. Two i-weights that
//! differ by a constant shift label the same irrep; the normalized
//! representative has a trailing zero.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Irrep label `(m_{1,N}, ..., m_{N,N})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IWeight {
    entries: Vec<i64>,
}

impl IWeight {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroRank);
        }
        if entries.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotNonincreasing(entries));
        }
        Ok(Self { entries })
    }

    /// The trivial irrep `(0, ..., 0)` of su(n).
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "rank must be at least 1");
        Self {
            entries: vec![0; n],
        }
    }

    /// Parses the textual form and checks the rank.
    pub fn parse_with_rank(text: &str, n: usize) -> Result<Self> {
        let w: IWeight = text.parse()?;
        if w.rank() != n {
            return Err(Error::RankMismatch {
                expected: n,
                found: w.rank(),
            });
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entry `m_{k,N}`, 1-based.
    pub fn get(&self, k: usize) -> i64 {
        self.entries[k - 1]
    }

    /// Sum of all entries, i.e. the number of boxes of the Young diagram.
    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    pub fn is_normalized(&self) -> bool {
        *self.entries.last().unwrap() == 0
    }

    /// Subtracts the last entry from every entry.
    pub fn normalize(&self) -> Self {
        let shift = *self.entries.last().unwrap();
        Self {
            entries: self.entries.iter().map(|m| m - shift).collect(),
        }
    }

    /// Adds `c` to every entry; the result labels the same irrep.
    pub fn shifted(&self, c: i64) -> Self {
        Self {
            entries: self.entries.iter().map(|m| m + c).collect(),
        }
    }

    /// Lexicographic comparison of two normalized weights of equal rank.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(self.entries.cmp(&other.entries))
    }

    /// Dimension of the irrep via the product formula.
    ///
    /// Panics if the result does not fit in a `u64`; see [`Self::try_dimension`].
    pub fn dimension(&self) -> u64 {
        self.try_dimension().expect("irrep dimension overflows u64")
    }

    pub fn try_dimension(&self) -> Result<u64> {
        let n = self.rank();
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for k in 0..n {
            for kp in (k + 1)..n {
                let gap = (kp - k) as i128;
                let factor = gap + (self.entries[k] - self.entries[kp]) as i128;
                num = num
                    .checked_mul(factor as u128)
                    .ok_or(Error::Overflow("dimension"))?;
                den = den
                    .checked_mul(gap as u128)
                    .ok_or(Error::Overflow("dimension"))?;
                let g = gcd(num, den);
                num /= g;
                den /= g;
            }
        }
        debug_assert_eq!(den, 1);
        u64::try_from(num).map_err(|_| Error::Overflow("dimension"))
    }

    /// Position `P(S)` of the irrep in the ordered list of all normalized
    /// i-weights of the same rank.
    ///
    /// The weight is normalized first, so any representative of the irrep
    /// yields the same index.
    pub fn index(&self) -> Result<u64> {
        let s = self.normalize();
        let n = s.rank();
        let mut p: u64 = 0;
        for k in 1..n {
            let r = (n - k) as u64;
            let m = s.get(k) as u64;
            if m == 0 {
                break;
            }
            let term = binomial(r + m - 1, r).ok_or(Error::Overflow("weight index"))?;
            p = p.checked_add(term).ok_or(Error::Overflow("weight index"))?;
        }
        Ok(p)
    }

    /// Normalized i-weight of rank `n` whose index is `p`.
    ///
    /// This is the combinatorial number system: for each position the
    /// largest binomial not exceeding the remainder is taken greedily.
    pub fn from_index(n: usize, p: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        let mut entries = vec![0i64; n];
        let mut rem = p;
        for k in 1..n {
            if rem == 0 {
                break;
            }
            let r = (n - k) as u64;
            // binom(c, r) <= rem, with c = r + m - 1 and m >= 1
            let mut m: u64 = 1;
            loop {
                match binomial(r + m, r) {
                    Some(b) if b <= rem => m += 1,
                    _ => break,
                }
            }
            rem -= binomial(r + m - 1, r).ok_or(Error::Overflow("weight index"))?;
            entries[k - 1] = m as i64;
        }
        Ok(Self { entries })
    }
}

impl fmt::Display for IWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for IWeight {
    type Err = Error;

    /// Accepts `"(2,1,0)"` with optional whitespace around tokens.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected parenthesized weight, got {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad integer {:?} in {s:?}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        IWeight::new(entries)
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `binom(n, k)`, `None` on overflow. Zero when `k > n`.
pub(crate) fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}
