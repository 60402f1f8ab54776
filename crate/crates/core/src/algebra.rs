//! Ladder operators `J_±^(l)` and the diagonal `J_z^(l)` in the GT basis.

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::patterns::{Basis, GtPattern, PWeight};
use crate::scalar::Scalar;
use crate::weights::IWeight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Raising,
    Lowering,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Lowering, Direction::Raising, Direction::Diagonal];
}

fn check_indices(m: &GtPattern, k: usize, l: usize) -> Result<()> {
    let n = m.rank();
    if k < 1 || k > l || l < 1 || l >= n {
        return Err(Error::OperatorIndex { k, l, n });
    }
    Ok(())
}

fn mul(acc: i128, factor: i64) -> Result<i128> {
    acc.checked_mul(factor as i128)
        .ok_or(Error::Overflow("ladder matrix element"))
}

// sqrt(-num/den) evaluated from exact integer products.
fn signed_root<T: Scalar>(num: i128, den: i128) -> Result<T> {
    debug_assert!(den != 0);
    if num == 0 {
        return Ok(T::zero());
    }
    if (num < 0) == (den < 0) {
        return Err(Error::NegativeRadicand);
    }
    let ratio = T::from_i128_lossy(num.abs()) / T::from_i128_lossy(den.abs());
    Ok(ratio.sqrt())
}

/// `<M - M^{k,l}| J_-^(l) |M>`; zero when `M - M^{k,l}` is not a valid pattern.
pub fn lowering_element<T: Scalar>(m: &GtPattern, k: usize, l: usize) -> Result<T> {
    check_indices(m, k, l)?;
    if m.shifted(k, l, -1).is_none() {
        return Ok(T::zero());
    }
    let (k_i, mkl) = (k as i64, m.get(k, l));
    let mut num: i128 = 1;
    for kp in 1..=l + 1 {
        num = mul(num, m.get(kp, l + 1) - mkl + k_i - kp as i64 + 1)?;
    }
    for kp in 1..l {
        num = mul(num, m.get(kp, l - 1) - mkl + k_i - kp as i64)?;
    }
    let mut den: i128 = 1;
    for kp in (1..=l).filter(|&kp| kp != k) {
        let d = m.get(kp, l) - mkl + k_i - kp as i64;
        den = mul(mul(den, d + 1)?, d)?;
    }
    signed_root(num, den)
}

/// `<M + M^{k,l}| J_+^(l) |M>`; zero when `M + M^{k,l}` is not a valid pattern.
pub fn raising_element<T: Scalar>(m: &GtPattern, k: usize, l: usize) -> Result<T> {
    check_indices(m, k, l)?;
    if m.shifted(k, l, 1).is_none() {
        return Ok(T::zero());
    }
    let (k_i, mkl) = (k as i64, m.get(k, l));
    let mut num: i128 = 1;
    for kp in 1..=l + 1 {
        num = mul(num, m.get(kp, l + 1) - mkl + k_i - kp as i64)?;
    }
    for kp in 1..l {
        num = mul(num, m.get(kp, l - 1) - mkl + k_i - kp as i64 - 1)?;
    }
    let mut den: i128 = 1;
    for kp in (1..=l).filter(|&kp| kp != k) {
        let d = m.get(kp, l) - mkl + k_i - kp as i64;
        den = mul(mul(den, d)?, d - 1)?;
    }
    signed_root(num, den)
}

/// Nonzero images of `|M>` under `J_±^(l)`: `(target, value)` for each `k`.
pub fn ladder_action<T: Scalar>(
    m: &GtPattern,
    l: usize,
    direction: Direction,
) -> Result<Vec<(GtPattern, T)>> {
    let delta = match direction {
        Direction::Raising => 1,
        Direction::Lowering => -1,
        Direction::Diagonal => {
            let z = T::from_i64(m.zweight().0[l - 1]).unwrap() / T::lit(2.0);
            return Ok(if z == T::zero() {
                vec![]
            } else {
                vec![(m.clone(), z)]
            });
        }
    };
    let mut out = Vec::new();
    for k in 1..=l {
        if let Some(target) = m.shifted(k, l, delta) {
            let v = if delta > 0 {
                raising_element(m, k, l)?
            } else {
                lowering_element(m, k, l)?
            };
            if v != T::zero() {
                out.push((target, v));
            }
        }
    }
    Ok(out)
}

/// Sparse matrix of one generator on the carrier space of an irrep.
///
/// Rows and columns are 0-based pattern positions (`Q - 1`). Entries are
/// sorted by column, then row.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    irrep: IWeight,
    l: usize,
    direction: Direction,
    dim: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Scalar> OperatorMatrix<T> {
    pub fn irrep(&self) -> &IWeight {
        &self.irrep
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(row, col, value)` triples.
    pub fn entries(&self) -> &[(usize, usize, T)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.entries
            .binary_search_by(|&(r, c, _)| (c, r).cmp(&(col, row)))
            .map_or(T::zero(), |i| self.entries[i].2)
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let mut d = DenseMatrix::zeros(self.dim, self.dim);
        for &(r, c, v) in &self.entries {
            d[(r, c)] = v;
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_by_key(|&(r, c, _)| (c, r));
        let direction = match self.direction {
            Direction::Raising => Direction::Lowering,
            Direction::Lowering => Direction::Raising,
            Direction::Diagonal => Direction::Diagonal,
        };
        Self {
            irrep: self.irrep.clone(),
            l: self.l,
            direction,
            dim: self.dim,
            entries,
        }
    }
}

/// Builds the matrix of `J_+^(l)`, `J_-^(l)` or `J_z^(l)` over a pattern basis.
pub fn operator_matrix<T: Scalar>(
    basis: &Basis,
    l: usize,
    direction: Direction,
) -> Result<OperatorMatrix<T>> {
    let n = basis.weight().rank();
    if l < 1 || l >= n {
        return Err(Error::OperatorIndex { k: 1, l, n });
    }
    let mut entries = Vec::new();
    for (col, m) in basis.patterns().iter().enumerate() {
        let mut column: Vec<(usize, usize, T)> = ladder_action(m, l, direction)?
            .into_iter()
            .map(|(target, v)| {
                let row = basis
                    .position(&target)
                    .expect("shifted pattern stays in the irrep");
                (row, col, v)
            })
            .collect();
        column.sort_by_key(|e| e.0);
        entries.extend(column);
    }
    Ok(OperatorMatrix {
        irrep: basis.weight().clone(),
        l,
        direction,
        dim: basis.dim(),
        entries,
    })
}

/// P-weight of the states reached by `J_±^(l)`: `w_l ± 1`, `w_{l+1} ∓ 1`.
///
/// Fails with [`Error::NegativeWeight`] when a component would drop below
/// zero, meaning no state of a normalized irrep has that weight.
pub fn weight_shift(w: &PWeight, l: usize, direction: Direction) -> Result<PWeight> {
    let n = w.0.len();
    if l < 1 || l >= n {
        return Err(Error::OperatorIndex { k: 1, l, n });
    }
    let delta = match direction {
        Direction::Raising => 1,
        Direction::Lowering => -1,
        Direction::Diagonal => 0,
    };
    let mut out = w.0.clone();
    out[l - 1] += delta;
    out[l] -= delta;
    if out.iter().any(|&x| x < 0) {
        return Err(Error::NegativeWeight);
    }
    Ok(PWeight(out))
}
