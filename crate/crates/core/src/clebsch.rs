//! Clebsch-Gordan coefficients of `S ⊗ S' -> S''`.
//!
//! The highest-weight state of every copy of `S''` is found as the null space
//! of the product raising operators, put into normal form by RREF and
//! Gram-Schmidt. All other states follow by lowering, one p-weight level at a
//! time, from a least-squares solve that uses every available parent equation.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::{ladder_action, Direction};
use crate::error::{Error, Result};
use crate::linalg::{least_squares_multi, null_space, orthonormalize_rows, rref, DenseMatrix};
use crate::littlewood::Decomposition;
use crate::patterns::{Basis, GtPattern, PWeight};
use crate::scalar::Scalar;
use crate::weights::IWeight;

type Action<T> = Vec<(usize, T)>;

/// Index pairs together with one coefficient row per copy of the target.
pub type PairBlock<I, T> = (Vec<(I, I)>, DenseMatrix<T>);

/// Product basis of `S ⊗ S'` with the ladder actions of both factors cached.
///
/// A product state `|Q> ⊗ |Q'>` has composite index `(Q-1) dim(S') + (Q'-1)`.
#[derive(Debug, Clone)]
pub struct ProductSpace<T> {
    left: Basis,
    right: Basis,
    left_weights: Vec<PWeight>,
    right_by_weight: HashMap<PWeight, Vec<usize>>,
    // [direction][l - 1][position] -> images
    left_actions: [Vec<Vec<Action<T>>>; 2],
    right_actions: [Vec<Vec<Action<T>>>; 2],
}

const LOWER: usize = 0;
const RAISE: usize = 1;

fn cache_actions<T: Scalar>(basis: &Basis, direction: Direction) -> Result<Vec<Vec<Action<T>>>> {
    let n = basis.weight().rank();
    (1..n)
        .map(|l| {
            basis
                .patterns()
                .iter()
                .map(|m| {
                    Ok(ladder_action::<T>(m, l, direction)?
                        .into_iter()
                        .map(|(t, v)| (basis.position(&t).expect("image stays in the irrep"), v))
                        .collect())
                })
                .collect()
        })
        .collect()
}

impl<T: Scalar> ProductSpace<T> {
    pub fn new(s: &IWeight, s2: &IWeight) -> Result<Self> {
        if s.rank() != s2.rank() {
            return Err(Error::RankMismatch {
                expected: s.rank(),
                found: s2.rank(),
            });
        }
        let (left, right) = (Basis::new(s), Basis::new(s2));
        let left_weights = left.patterns().iter().map(GtPattern::pweight).collect();
        let mut right_by_weight: HashMap<PWeight, Vec<usize>> = HashMap::new();
        for (i, m) in right.patterns().iter().enumerate() {
            right_by_weight.entry(m.pweight()).or_default().push(i);
        }
        let left_actions = [
            cache_actions(&left, Direction::Lowering)?,
            cache_actions(&left, Direction::Raising)?,
        ];
        let right_actions = [
            cache_actions(&right, Direction::Lowering)?,
            cache_actions(&right, Direction::Raising)?,
        ];
        Ok(Self {
            left,
            right,
            left_weights,
            right_by_weight,
            left_actions,
            right_actions,
        })
    }

    pub fn left(&self) -> &Basis {
        &self.left
    }

    pub fn right(&self) -> &Basis {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    pub fn composite(&self, q: usize, qp: usize) -> usize {
        q * self.right.dim() + qp
    }

    /// 0-based pairs `(Q-1, Q'-1)` whose p-weights add up to `w`, Q-major.
    pub fn pairs(&self, w: &PWeight) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        if w.0.len() != self.left.weight().rank() {
            return out;
        }
        for (q, wl) in self.left_weights.iter().enumerate() {
            if let Some(qps) = self.right_by_weight.get(&w.sub(wl)) {
                out.extend(qps.iter().map(|&qp| (q, qp)));
            }
        }
        out
    }

    // Images of product state (q, qp) under J_±^(l) ⊗ 1 + 1 ⊗ J_±^(l).
    fn act(&self, dir: usize, l: usize, q: usize, qp: usize, mut f: impl FnMut(usize, usize, T)) {
        for &(t, v) in &self.left_actions[dir][l - 1][q] {
            f(t, qp, v);
        }
        for &(t, v) in &self.right_actions[dir][l - 1][qp] {
            f(q, t, v);
        }
    }
}

/// 1-based pairs `(Q, Q')` of `S ⊗ S'` whose p-weights add up to `w2pp`.
///
/// `w2pp` must be a p-weight of the target taken with the box count of the
/// product (see [`Decomposition::aligned`]).
pub fn candidate_pairs(s: &IWeight, s2: &IWeight, w2pp: &PWeight) -> Vec<(u64, u64)> {
    match ProductSpace::<f64>::new(s, s2) {
        Ok(p) => p
            .pairs(w2pp)
            .into_iter()
            .map(|(q, qp)| (q as u64 + 1, qp as u64 + 1))
            .collect(),
        Err(_) => Vec::new(),
    }
}

/// Coefficients of all target states sharing one p-weight.
#[derive(Debug, Clone)]
pub struct Level<T> {
    weight: PWeight,
    states: Vec<usize>,
    pairs: Vec<(usize, usize)>,
    alpha_count: usize,
    equations: usize,
    residual: T,
    // row: state, column: (alpha - 1) * pairs.len() + pair
    values: DenseMatrix<T>,
}

impl<T: Scalar> Level<T> {
    pub fn weight(&self) -> &PWeight {
        &self.weight
    }

    /// 0-based positions of the states in the target basis.
    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of parent equations the level was solved from (zero at the top).
    pub fn equations(&self) -> usize {
        self.equations
    }

    pub fn residual(&self) -> T {
        self.residual
    }

    /// Coefficient of pair `p` in state `i` of copy `alpha` (all 0-based).
    pub fn value(&self, alpha: usize, i: usize, p: usize) -> T {
        self.values[(i, alpha * self.pairs.len() + p)]
    }

    /// Coefficient matrix of copy `alpha` (0-based): states by pairs.
    pub fn block(&self, alpha: usize) -> DenseMatrix<T> {
        let np = self.pairs.len();
        let mut out = DenseMatrix::zeros(self.states.len(), np);
        for i in 0..self.states.len() {
            out.row_mut(i)
                .copy_from_slice(&self.values.row(i)[alpha * np..(alpha + 1) * np]);
        }
        out
    }
}

/// Orthonormal highest-weight coefficients of every copy of `s2pp`.
///
/// Rows are the copies `alpha`, columns the pairs of [`candidate_pairs`] for
/// the highest weight of `s2pp`.
pub fn highest_weight_cgc<T: Scalar>(
    s: &IWeight,
    s2: &IWeight,
    s2pp: &IWeight,
) -> Result<PairBlock<u64, T>> {
    let decomposition = Decomposition::new(s, s2)?;
    let product = ProductSpace::<T>::new(s, s2)?;
    let target = target_of(&decomposition, s2pp)?;
    let (pairs, block) = highest_block(
        &product,
        &decomposition.aligned(&target),
        expected(&decomposition, &target),
    )?;
    Ok((
        pairs
            .into_iter()
            .map(|(q, qp)| (q as u64 + 1, qp as u64 + 1))
            .collect(),
        block,
    ))
}

fn target_of(decomposition: &Decomposition, s2pp: &IWeight) -> Result<IWeight> {
    if s2pp.rank() != decomposition.left().rank() {
        return Err(Error::RankMismatch {
            expected: decomposition.left().rank(),
            found: s2pp.rank(),
        });
    }
    if decomposition.multiplicity(s2pp) == 0 {
        return Err(Error::NotInDecomposition {
            irrep: s2pp.normalize().to_string(),
        });
    }
    Ok(s2pp.normalize())
}

fn expected(decomposition: &Decomposition, target: &IWeight) -> usize {
    decomposition.multiplicity(target) as usize
}

fn highest_block<T: Scalar>(
    product: &ProductSpace<T>,
    aligned: &IWeight,
    multiplicity: usize,
) -> Result<PairBlock<usize, T>> {
    let n = aligned.rank();
    let pairs = product.pairs(&PWeight(aligned.entries().to_vec()));
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    let mut triples = Vec::new();
    for l in 1..n {
        for (j, &(q, qp)) in pairs.iter().enumerate() {
            product.act(RAISE, l, q, qp, |a, b, v| {
                let next = rows.len();
                let r = *rows.entry(product.composite(a, b)).or_insert(next);
                triples.push((r, j, v));
            });
        }
    }
    let mut system = DenseMatrix::zeros(rows.len(), pairs.len());
    for (r, j, v) in triples {
        system[(r, j)] += v;
    }
    let kernel = null_space(&system, T::rank_tol());
    if kernel.rows() != multiplicity {
        return Err(Error::MultiplicityMismatch {
            expected: multiplicity,
            found: kernel.rows(),
        });
    }
    let reduced = rref(&kernel, T::pivot_tol());
    Ok((pairs, orthonormalize_rows(&reduced)?))
}

/// Solves one p-weight level from the levels directly above it.
///
/// `known` must hold every level whose weight is `weight` raised by one step
/// of some `J_+^(l)`; missing parents simply contribute no equations.
pub fn descend_level<T: Scalar>(
    product: &ProductSpace<T>,
    target: &Basis,
    known: &HashMap<PWeight, Level<T>>,
    weight: &PWeight,
    states: Vec<usize>,
) -> Result<Level<T>> {
    let n = weight.0.len();
    let pairs = product.pairs(weight);
    let column: HashMap<usize, usize> = pairs
        .iter()
        .enumerate()
        .map(|(j, &(q, qp))| (product.composite(q, qp), j))
        .collect();
    let row_of: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let alpha_count = known.values().next().map_or(1, |lv| lv.alpha_count);
    let width = alpha_count * pairs.len();

    let mut lhs: Vec<Vec<T>> = Vec::new();
    let mut rhs: Vec<Vec<T>> = Vec::new();
    for l in 1..n {
        let mut raised = weight.0.clone();
        raised[l - 1] += 1;
        raised[l] -= 1;
        let Some(parent) = known.get(&PWeight(raised)) else {
            continue;
        };
        for (pi, &p) in parent.states.iter().enumerate() {
            let images = ladder_action::<T>(target.pattern(p), l, Direction::Lowering)?;
            if images.is_empty() {
                continue;
            }
            let mut b = vec![T::zero(); states.len()];
            for (m, v) in images {
                let pos = target.position(&m).expect("image stays in the irrep");
                b[row_of[&pos]] += v;
            }
            let mut y = vec![T::zero(); width];
            let np = parent.pairs.len();
            for alpha in 0..alpha_count {
                for (j, &(q, qp)) in parent.pairs.iter().enumerate() {
                    let c = parent.values[(pi, alpha * np + j)];
                    if c == T::zero() {
                        continue;
                    }
                    product.act(LOWER, l, q, qp, |a, bb, v| {
                        let col = column[&product.composite(a, bb)];
                        y[alpha * pairs.len() + col] += c * v;
                    });
                }
            }
            lhs.push(b);
            rhs.push(y);
        }
    }
    if lhs.is_empty() {
        return Err(Error::InconsistentDescent {
            weight: weight.to_string(),
            residual: f64::NAN,
        });
    }
    let a = DenseMatrix::from_rows(&lhs)?;
    let y = DenseMatrix::from_vec(rhs.len(), width, rhs.concat())?;
    let (values, residual) = least_squares_multi(&a, &y)?;
    if residual.is_nan() || residual > T::residual_tol() {
        return Err(Error::InconsistentDescent {
            weight: weight.to_string(),
            residual: residual.to_f64_lossy(),
        });
    }
    Ok(Level {
        weight: weight.clone(),
        states,
        pairs,
        alpha_count,
        equations: lhs.len(),
        residual,
        values,
    })
}

/// Every level of the target, highest first.
pub fn solve_levels<T: Scalar>(
    product: &ProductSpace<T>,
    decomposition: &Decomposition,
    s2pp: &IWeight,
) -> Result<Vec<Level<T>>> {
    let target = target_of(decomposition, s2pp)?;
    let multiplicity = expected(decomposition, &target);
    let aligned = decomposition.aligned(&target);
    let basis = Basis::new(&aligned);

    let mut by_weight: BTreeMap<PWeight, Vec<usize>> = BTreeMap::new();
    for (i, m) in basis.patterns().iter().enumerate() {
        by_weight.entry(m.pweight()).or_default().push(i);
    }
    let mut order: Vec<(PWeight, Vec<usize>)> = by_weight.into_iter().collect();
    order.sort_by(|a, b| b.0.height().cmp(&a.0.height()).then_with(|| b.0.cmp(&a.0)));

    let mut known: HashMap<PWeight, Level<T>> = HashMap::new();
    let mut sequence = Vec::with_capacity(order.len());
    let mut iter = order.into_iter();
    let (top_weight, top_states) = iter.next().expect("an irrep has at least one state");
    debug_assert_eq!(top_weight.0, aligned.entries());
    let (pairs, block) = highest_block(product, &aligned, multiplicity)?;
    let np = pairs.len();
    let mut values = DenseMatrix::zeros(1, multiplicity * np);
    for alpha in 0..multiplicity {
        values.row_mut(0)[alpha * np..(alpha + 1) * np].copy_from_slice(block.row(alpha));
    }
    let top = Level {
        weight: top_weight.clone(),
        states: top_states,
        pairs,
        alpha_count: multiplicity,
        equations: 0,
        residual: T::zero(),
        values,
    };
    sequence.push(top_weight.clone());
    known.insert(top_weight, top);

    for (weight, states) in iter {
        let level = descend_level(product, &basis, &known, &weight, states)?;
        sequence.push(weight.clone());
        known.insert(weight, level);
    }
    Ok(sequence
        .into_iter()
        .map(|w| known.remove(&w).expect("level was solved"))
        .collect())
}

/// Coefficients `C^{M'',alpha}_{M,M'}` of one target irrep.
///
/// Stored sparsely: one sorted row of `(composite index, value)` per
/// `(alpha, Q'')`. Values below [`Scalar::chop_tol`] are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct CgcTensor<T> {
    left: IWeight,
    right: IWeight,
    target: IWeight,
    aligned: IWeight,
    alpha_count: usize,
    dims: [usize; 3],
    rows: Vec<Vec<(usize, T)>>,
}

/// Sets values with `|c| < tol` to an exact zero.
pub fn chop<T: Scalar>(c: T, tol: T) -> T {
    if c.abs() < tol {
        T::zero()
    } else {
        c
    }
}

impl<T: Scalar> CgcTensor<T> {
    fn from_levels(
        product: &ProductSpace<T>,
        decomposition: &Decomposition,
        target: IWeight,
        levels: &[Level<T>],
    ) -> Self {
        let aligned = decomposition.aligned(&target);
        let alpha_count = levels[0].alpha_count;
        let dim_t: usize = levels.iter().map(|lv| lv.states.len()).sum();
        let mut rows = vec![Vec::new(); alpha_count * dim_t];
        for lv in levels {
            for alpha in 0..alpha_count {
                for (i, &state) in lv.states.iter().enumerate() {
                    let row = &mut rows[alpha * dim_t + state];
                    for (j, &(q, qp)) in lv.pairs.iter().enumerate() {
                        let c = chop(lv.value(alpha, i, j), T::chop_tol());
                        if c != T::zero() {
                            row.push((product.composite(q, qp), c));
                        }
                    }
                }
            }
        }
        Self {
            left: decomposition.left().clone(),
            right: decomposition.right().clone(),
            target,
            aligned,
            alpha_count,
            dims: [product.left().dim(), product.right().dim(), dim_t],
            rows,
        }
    }

    pub fn left(&self) -> &IWeight {
        &self.left
    }

    pub fn right(&self) -> &IWeight {
        &self.right
    }

    /// Normalized label of the target irrep.
    pub fn target(&self) -> &IWeight {
        &self.target
    }

    /// Target label with the box count of the product.
    pub fn aligned(&self) -> &IWeight {
        &self.aligned
    }

    pub fn alpha_count(&self) -> usize {
        self.alpha_count
    }

    pub fn dim_left(&self) -> usize {
        self.dims[0]
    }

    pub fn dim_right(&self) -> usize {
        self.dims[1]
    }

    pub fn dim_target(&self) -> usize {
        self.dims[2]
    }

    fn slot(&self, alpha: usize, qpp: usize, q: usize, qp: usize) -> (usize, usize) {
        assert!(
            (1..=self.alpha_count).contains(&alpha),
            "alpha {alpha} out of range"
        );
        assert!((1..=self.dims[2]).contains(&qpp), "Q'' {qpp} out of range");
        assert!((1..=self.dims[0]).contains(&q), "Q {q} out of range");
        assert!((1..=self.dims[1]).contains(&qp), "Q' {qp} out of range");
        (
            (alpha - 1) * self.dims[2] + qpp - 1,
            (q - 1) * self.dims[1] + qp - 1,
        )
    }

    /// `C^{M'',alpha}_{M,M'}` with all indices 1-based. Panics out of range.
    pub fn get(&self, alpha: usize, qpp: usize, q: usize, qp: usize) -> T {
        let (r, c) = self.slot(alpha, qpp, q, qp);
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0)
            .map_or(T::zero(), |i| row[i].1)
    }

    /// Overwrites one coefficient; a zero removes the entry.
    pub fn set(&mut self, alpha: usize, qpp: usize, q: usize, qp: usize, value: T) {
        let (r, c) = self.slot(alpha, qpp, q, qp);
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(i) if value == T::zero() => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = value,
            Err(_) if value == T::zero() => {}
            Err(i) => row.insert(i, (c, value)),
        }
    }

    /// Nonzero entries of row `(alpha, Q'')` as `(composite, value)`, 0-based composite.
    pub fn row(&self, alpha: usize, qpp: usize) -> &[(usize, T)] {
        &self.rows[(alpha - 1) * self.dims[2] + qpp - 1]
    }

    /// Nonzero entries as `(alpha, Q'', Q, Q', value)`, all 1-based.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, usize, T)> + '_ {
        let (dt, dr) = (self.dims[2], self.dims[1]);
        self.rows.iter().enumerate().flat_map(move |(r, row)| {
            row.iter()
                .map(move |&(c, v)| (r / dt + 1, r % dt + 1, c / dr + 1, c % dr + 1, v))
        })
    }

    pub fn nonzero_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Coefficients for one target irrep of `s ⊗ s2`.
pub fn compute_tensor<T: Scalar>(
    s: &IWeight,
    s2: &IWeight,
    s2pp: &IWeight,
) -> Result<CgcTensor<T>> {
    let decomposition = Decomposition::new(s, s2)?;
    let product = ProductSpace::new(s, s2)?;
    tensor_in(&product, &decomposition, s2pp)
}

fn tensor_in<T: Scalar>(
    product: &ProductSpace<T>,
    decomposition: &Decomposition,
    s2pp: &IWeight,
) -> Result<CgcTensor<T>> {
    let levels = solve_levels(product, decomposition, s2pp)?;
    Ok(CgcTensor::from_levels(
        product,
        decomposition,
        s2pp.normalize(),
        &levels,
    ))
}

/// Coefficients for every term of the decomposition, in term order.
///
/// Distinct targets are computed on separate threads.
pub fn compute_all<T: Scalar>(
    s: &IWeight,
    s2: &IWeight,
) -> Result<(Decomposition, Vec<CgcTensor<T>>)> {
    let decomposition = Decomposition::new(s, s2)?;
    let product = ProductSpace::new(s, s2)?;
    let tensors = std::thread::scope(|scope| {
        let handles: Vec<_> = decomposition
            .terms()
            .iter()
            .map(|(w, _)| {
                let (product, decomposition) = (&product, &decomposition);
                scope.spawn(move || tensor_in(product, decomposition, w))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("coefficient worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok((decomposition, tensors))
}
