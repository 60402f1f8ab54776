//! Consistency checks over a complete set of coefficient tensors.

use std::fmt;

use crate::algebra::{operator_matrix, Direction};
use crate::clebsch::{compute_all, CgcTensor};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::littlewood::Decomposition;
use crate::patterns::Basis;
use crate::scalar::Scalar;
use crate::weights::IWeight;

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Largest deviation found (a violation count for exact checks).
    pub deviation: f64,
    pub tol: f64,
    /// Where the largest deviation occurred.
    pub location: Option<String>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: deviation={:.3e} tol={:.1e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.deviation,
            self.tol
        )?;
        if let Some(loc) = &self.location {
            write!(f, " at {loc}")?;
        }
        Ok(())
    }
}

impl CheckReport {
    fn tolerance(name: String, deviation: f64, tol: f64, location: Option<String>) -> Self {
        Self {
            name,
            passed: deviation < tol,
            deviation,
            tol,
            location,
        }
    }
}

/// Stacks all tensors into the square matrix `C`.
///
/// Rows follow the tensors in the given order, `alpha` ascending, then `Q''`;
/// columns are composite product indices.
pub fn assemble<T: Scalar>(tensors: &[CgcTensor<T>]) -> Result<DenseMatrix<T>> {
    let Some(first) = tensors.first() else {
        return Err(Error::Incomplete {
            covered: 0,
            expected: 0,
        });
    };
    let dim = first.dim_left() * first.dim_right();
    let covered: usize = tensors
        .iter()
        .map(|t| t.alpha_count() * t.dim_target())
        .sum();
    if covered != dim
        || tensors
            .iter()
            .any(|t| t.left() != first.left() || t.right() != first.right())
    {
        return Err(Error::Incomplete {
            covered,
            expected: dim,
        });
    }
    let mut c = DenseMatrix::zeros(dim, dim);
    let mut r = 0;
    for t in tensors {
        for alpha in 1..=t.alpha_count() {
            for qpp in 1..=t.dim_target() {
                for &(col, v) in t.row(alpha, qpp) {
                    c[(r, col)] = v;
                }
                r += 1;
            }
        }
    }
    Ok(c)
}

fn identity_deviation<T: Scalar>(g: &DenseMatrix<T>) -> (f64, usize, usize) {
    let (v, i, j) = g
        .max_abs_diff(&DenseMatrix::identity(g.rows()))
        .unwrap_or((T::zero(), 0, 0));
    (v.to_f64_lossy(), i, j)
}

/// Max deviation of `C C^T` and `C^T C` from the identity.
pub fn check_orthonormality<T: Scalar>(tensors: &[CgcTensor<T>], tol: T) -> Result<CheckReport> {
    let c = assemble(tensors)?;
    let ct = c.transpose();
    let (a, ai, aj) = identity_deviation(&c.matmul(&ct)?);
    let (b, bi, bj) = identity_deviation(&ct.matmul(&c)?);
    let (dev, loc) = if a >= b {
        (a, format!("C C^T ({ai},{aj})"))
    } else {
        (b, format!("C^T C ({bi},{bj})"))
    };
    Ok(CheckReport::tolerance(
        "orthonormality".into(),
        dev,
        tol.to_f64_lossy(),
        Some(loc),
    ))
}

/// Counts nonzero entries whose doubled z-weights do not add up exactly.
pub fn check_selection_rule<T: Scalar>(tensor: &CgcTensor<T>) -> CheckReport {
    let (left, right, target) = (
        Basis::new(tensor.left()),
        Basis::new(tensor.right()),
        Basis::new(tensor.target()),
    );
    let mut violations = 0usize;
    let mut first = None;
    for (alpha, qpp, q, qp, _) in tensor.entries() {
        let sum = left
            .pattern(q - 1)
            .zweight()
            .add(&right.pattern(qp - 1).zweight());
        if sum != target.pattern(qpp - 1).zweight() {
            violations += 1;
            first.get_or_insert_with(|| format!("(alpha={alpha},Q''={qpp},Q={q},Q'={qp})"));
        }
    }
    CheckReport {
        name: format!("selection rule {}", tensor.target()),
        passed: violations == 0,
        deviation: violations as f64,
        tol: 0.0,
        location: first,
    }
}

fn kron_sum<T: Scalar>(a: &DenseMatrix<T>, b: &DenseMatrix<T>) -> DenseMatrix<T> {
    let (da, db) = (a.rows(), b.rows());
    let mut out = DenseMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..da {
            let v = a[(i, j)];
            if v != T::zero() {
                for k in 0..db {
                    out[(i * db + k, j * db + k)] += v;
                }
            }
        }
        for k in 0..db {
            for m in 0..db {
                out[(i * db + k, i * db + m)] += b[(k, m)];
            }
        }
    }
    out
}

/// Checks `C (A ⊗ 1 + 1 ⊗ A) C^T` against the direct sum of the target
/// operators, for every `l` and every generator type.
///
/// Blocks are laid out in the order of `tensors` with `alpha` ascending.
pub fn check_block_diagonalization<T: Scalar>(
    tensors: &[CgcTensor<T>],
    tol: T,
) -> Result<CheckReport> {
    let c = assemble(tensors)?;
    let ct = c.transpose();
    let first = &tensors[0];
    let n = first.left().rank();
    let (left, right) = (Basis::new(first.left()), Basis::new(first.right()));
    let targets: Vec<Basis> = tensors.iter().map(|t| Basis::new(t.target())).collect();
    let mut worst = (0.0f64, String::from("-"));
    for l in 1..n {
        for dir in Direction::ALL {
            let a = operator_matrix::<T>(&left, l, dir)?.to_dense();
            let b = operator_matrix::<T>(&right, l, dir)?.to_dense();
            let rotated = c.matmul(&kron_sum(&a, &b))?.matmul(&ct)?;
            let mut expected = DenseMatrix::zeros(c.rows(), c.rows());
            let mut offset = 0;
            for (t, basis) in tensors.iter().zip(&targets) {
                let op = operator_matrix::<T>(basis, l, dir)?;
                for _ in 0..t.alpha_count() {
                    for &(i, j, v) in op.entries() {
                        expected[(offset + i, offset + j)] = v;
                    }
                    offset += basis.dim();
                }
            }
            if let Some((d, i, j)) = rotated.max_abs_diff(&expected) {
                let d = d.to_f64_lossy();
                if d > worst.0 || worst.1 == "-" {
                    worst = (d, format!("l={l} {dir:?} ({i},{j})"));
                }
            }
        }
    }
    Ok(CheckReport::tolerance(
        "block diagonalization".into(),
        worst.0,
        tol.to_f64_lossy(),
        Some(worst.1),
    ))
}

/// Exact identity `dim S * dim S' = sum_j N_j dim S''_j`.
pub fn check_dimension_sum(decomposition: &Decomposition) -> CheckReport {
    let lhs = decomposition.left().dimension() * decomposition.right().dimension();
    let rhs = decomposition.total_dimension();
    CheckReport {
        name: format!("dimension sum {lhs} = {rhs}"),
        passed: lhs == rhs,
        deviation: lhs.abs_diff(rhs) as f64,
        tol: 0.0,
        location: None,
    }
}

/// Full pipeline for `s ⊗ s2` followed by every check.
pub fn verify_product<T: Scalar>(s: &IWeight, s2: &IWeight, tol: T) -> Result<Vec<CheckReport>> {
    let (decomposition, tensors) = compute_all::<T>(s, s2)?;
    let mut reports = vec![check_dimension_sum(&decomposition)];
    reports.push(check_orthonormality(&tensors, tol)?);
    reports.extend(tensors.iter().map(check_selection_rule));
    reports.push(check_block_diagonalization(&tensors, tol)?);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clebsch::compute_all;

    fn w(e: &[i64]) -> IWeight {
        IWeight::new(e.to_vec()).unwrap()
    }

    #[test]
    fn doublets_are_unitary() {
        let d = w(&[1, 0]);
        let (_, ts) = compute_all::<f64>(&d, &d).unwrap();
        let r = check_orthonormality(&ts, 1e-12).unwrap();
        assert!(r.passed, "{r}");
        let r = check_block_diagonalization(&ts, 1e-12).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn zeroed_coefficient_fails() {
        let d = w(&[1, 0]);
        let (_, mut ts) = compute_all::<f64>(&d, &d).unwrap();
        let (alpha, qpp, q, qp, _) = ts[1].entries().nth(1).unwrap();
        ts[1].set(alpha, qpp, q, qp, 0.0);
        assert!(!check_orthonormality(&ts, 1e-8).unwrap().passed);
    }

    #[test]
    fn moved_entry_breaks_selection_rule() {
        let d = w(&[1, 0]);
        let (_, mut ts) = compute_all::<f64>(&d, &d).unwrap();
        assert!(check_selection_rule(&ts[0]).passed);
        let (alpha, qpp, q, qp, v) = ts[0].entries().next().unwrap();
        ts[0].set(alpha, qpp, q, qp, 0.0);
        ts[0].set(alpha, qpp, q, q, v);
        let r = check_selection_rule(&ts[0]);
        assert!(!r.passed);
        assert!(r.location.is_some());
    }

    #[test]
    fn missing_tensor_is_incomplete() {
        let d = w(&[1, 0]);
        let (_, ts) = compute_all::<f64>(&d, &d).unwrap();
        let err = check_orthonormality(&ts[..1], 1e-8).unwrap_err();
        assert_eq!(
            err,
            Error::Incomplete {
                covered: 1,
                expected: 4
            }
        );
    }

    #[test]
    fn dimension_sums() {
        let a = w(&[2, 1, 0]);
        let r = check_dimension_sum(&Decomposition::new(&a, &a).unwrap());
        assert!(r.passed && r.name.contains("64 = 64"));
        let r = check_dimension_sum(&Decomposition::new(&a, &IWeight::trivial(3)).unwrap());
        assert!(r.passed && r.name.contains("8 = 8"));
        let f = w(&[1, 0, 0, 0]);
        let r = check_dimension_sum(&Decomposition::new(&f, &f).unwrap());
        assert!(r.passed && r.name.contains("16 = 16"));
    }

    #[test]
    fn report_line() {
        let r = CheckReport::tolerance("x".into(), 1e-3, 1e-8, Some("(1,2)".into()));
        assert_eq!(
            r.to_string(),
            "FAIL x: deviation=1.000e-3 tol=1.0e-8 at (1,2)"
        );
    }
}
