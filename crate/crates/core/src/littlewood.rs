//! Tensor product decomposition via the Littlewood-Richardson rule, phrased
//! on GT-patterns.
//!
//! For each pattern `M` of one factor, a trial weight `t` starts as the other
//! factor's i-weight. The pattern is read diagonal by diagonal (left to right,
//! each from top to bottom); entry `m_{k,l}` adds `b_{k,l} = m_{k,l} - m_{k,l-1}`
//! boxes to `t_l`. If `t` ever stops being nonincreasing at the touched
//! position the pattern is discarded; otherwise the final `t` is an irrep of
//! the product.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::patterns::{enumerate, GtPattern};
use crate::weights::IWeight;

/// Irreps of `left ⊗ right` with their outer multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    left: IWeight,
    right: IWeight,
    terms: Vec<(IWeight, u64)>,
}

/// Step-by-step record of one pattern's trial weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrTrace {
    /// Trial weight before any step.
    pub initial: Vec<i64>,
    /// Trial weight after each visited entry; stops at the failing step.
    pub steps: Vec<Vec<i64>>,
    /// Final weight (not normalized) if the pattern survived.
    pub result: Option<Vec<i64>>,
}

/// Runs the trial-weight procedure for one pattern `m` against `start`.
pub fn trace(m: &GtPattern, start: &IWeight) -> LrTrace {
    let n = m.rank();
    let mut t = start.entries().to_vec();
    let initial = t.clone();
    let mut steps = Vec::with_capacity(n * (n + 1) / 2);
    for k in 1..=n {
        for l in (k..=n).rev() {
            let below = if k < l { m.get(k, l - 1) } else { 0 };
            t[l - 1] += m.get(k, l) - below;
            steps.push(t.clone());
            if l > 1 && t[l - 2] < t[l - 1] {
                return LrTrace {
                    initial,
                    steps,
                    result: None,
                };
            }
        }
    }
    LrTrace {
        initial,
        steps,
        result: Some(t),
    }
}

impl Decomposition {
    /// Decomposes `s ⊗ s2`.
    ///
    /// Both factors are normalized first; the patterns of whichever has the
    /// smaller dimension are traversed (the left one on a tie).
    pub fn new(s: &IWeight, s2: &IWeight) -> Result<Self> {
        if s.rank() != s2.rank() {
            return Err(Error::RankMismatch {
                expected: s.rank(),
                found: s2.rank(),
            });
        }
        if s.try_dimension()? <= s2.try_dimension()? {
            Self::walking_left(s, s2)
        } else {
            let mut d = Self::walking_left(s2, s)?;
            std::mem::swap(&mut d.left, &mut d.right);
            Ok(d)
        }
    }

    /// Decomposes `s ⊗ s2` by always traversing the patterns of `s`.
    pub fn walking_left(s: &IWeight, s2: &IWeight) -> Result<Self> {
        if s.rank() != s2.rank() {
            return Err(Error::RankMismatch {
                expected: s.rank(),
                found: s2.rank(),
            });
        }
        let start = s2.normalize();
        let mut acc: BTreeMap<IWeight, u64> = BTreeMap::new();
        for m in enumerate(&s.normalize()) {
            if let Some(t) = trace(&m, &start).result {
                let irrep = IWeight::new(t).expect("surviving trial weight is nonincreasing");
                *acc.entry(irrep.normalize()).or_default() += 1;
            }
        }
        Ok(Self {
            left: s.clone(),
            right: s2.clone(),
            terms: acc.into_iter().collect(),
        })
    }

    pub fn left(&self) -> &IWeight {
        &self.left
    }

    pub fn right(&self) -> &IWeight {
        &self.right
    }

    /// `(normalized irrep, multiplicity)` in increasing weight order.
    pub fn terms(&self) -> &[(IWeight, u64)] {
        &self.terms
    }

    pub fn multiplicity(&self, s2pp: &IWeight) -> u64 {
        let key = s2pp.normalize();
        self.terms
            .binary_search_by(|(w, _)| w.cmp(&key))
            .map_or(0, |i| self.terms[i].1)
    }

    /// `sum_j N_j dim(S''_j)`.
    pub fn total_dimension(&self) -> u64 {
        self.terms
            .iter()
            .map(|(w, mult)| mult * w.dimension())
            .sum()
    }

    /// Representative of `s2pp` whose entries sum to the total box count of
    /// the two factors, so pattern weights add literally.
    pub fn aligned(&self, s2pp: &IWeight) -> IWeight {
        let n = s2pp.rank() as i64;
        let norm = s2pp.normalize();
        let excess = self.left.total() + self.right.total() - norm.total();
        debug_assert_eq!(
            excess % n,
            0,
            "box counts of a product term differ by full columns"
        );
        norm.shifted(excess / n)
    }
}
