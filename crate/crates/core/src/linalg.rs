//! Small dense kernels used by the coefficient solver: null space, reduced
//! row echelon form, Gram-Schmidt and least squares.
//!
//! Problem sizes are the weight blocks of a product representation, so plain
//! row-major storage and textbook algorithms are enough.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} values for {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [T] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                let src = other.row(k);
                for (o, &b) in out.row_mut(i).iter_mut().zip(src) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|v| v.abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Largest entrywise difference `|self - other|`.
    pub fn max_abs_diff(&self, other: &Self) -> Option<(T, usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        let mut best = (T::zero(), 0, 0);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self[(i, j)] - other[(i, j)]).abs();
                if d > best.0 || d.is_nan() {
                    best = (d, i, j);
                }
            }
        }
        Some(best)
    }
}

impl<T> Index<(usize, usize)> for DenseMatrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for DenseMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for DenseMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|v| format!("{v:>12.6}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Orthonormal basis (as rows) of `{x : A x = 0}`.
///
/// Uses a one-sided Jacobi SVD of `A`; right singular vectors whose singular
/// value is at most `tol` times the largest one span the null space.
pub fn null_space<T: Scalar>(a: &DenseMatrix<T>, tol: T) -> DenseMatrix<T> {
    let (m, n) = (a.rows(), a.cols());
    if n == 0 {
        return DenseMatrix::zeros(0, 0);
    }
    // Work on columns: u holds A's columns, v accumulates the rotations.
    let mut u: Vec<Vec<T>> = (0..n)
        .map(|j| (0..m).map(|i| a[(i, j)]).collect())
        .collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let eps = T::epsilon();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&u[p], &u[p]);
                let beta = dot(&u[q], &u[q]);
                let gamma = dot(&u[p], &u[q]);
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                rotate(&mut u, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let sigma: Vec<T> = u.iter().map(|col| norm(col)).collect();
    let sigma_max = sigma.iter().fold(T::zero(), |acc, &s| acc.max(s));
    let cutoff = tol * sigma_max;
    let basis: Vec<Vec<T>> = (0..n)
        .filter(|&j| sigma[j] <= cutoff)
        .map(|j| v[j].clone())
        .collect();
    let mut out = DenseMatrix::zeros(basis.len(), n);
    for (i, b) in basis.iter().enumerate() {
        out.row_mut(i).copy_from_slice(b);
    }
    out
}

fn rotate<T: Scalar>(cols: &mut [Vec<T>], p: usize, q: usize, c: T, s: T) {
    let (lo, hi) = cols.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let xp = *x;
        *x = c * xp - s * *y;
        *y = s * xp + c * *y;
    }
}

/// Reduced row echelon form.
///
/// Rows are first scaled to unit length; a column becomes a pivot column when
/// its largest remaining entry exceeds `tol` in absolute value. Pivots are
/// scaled to one and zero rows end up at the bottom.
pub fn rref<T: Scalar>(a: &DenseMatrix<T>, tol: T) -> DenseMatrix<T> {
    let mut r = a.clone();
    for i in 0..r.rows() {
        let nrm = norm(r.row(i));
        if nrm > T::zero() {
            r.row_mut(i).iter_mut().for_each(|x| *x /= nrm);
        }
    }
    let mut lead = 0;
    for col in 0..r.cols() {
        if lead == r.rows() {
            break;
        }
        let (best, best_val) =
            (lead..r.rows())
                .map(|i| (i, r[(i, col)].abs()))
                .fold(
                    (lead, T::zero()),
                    |acc, x| if x.1 > acc.1 { x } else { acc },
                );
        if best_val <= tol {
            for i in lead..r.rows() {
                r[(i, col)] = T::zero();
            }
            continue;
        }
        swap_rows(&mut r, lead, best);
        let pivot = r[(lead, col)];
        r.row_mut(lead).iter_mut().for_each(|x| *x /= pivot);
        r[(lead, col)] = T::one();
        let pivot_row = r.row(lead).to_vec();
        for i in 0..r.rows() {
            if i == lead {
                continue;
            }
            let f = r[(i, col)];
            if f != T::zero() {
                for (x, &p) in r.row_mut(i).iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                r[(i, col)] = T::zero();
            }
        }
        lead += 1;
    }
    for i in lead..r.rows() {
        r.row_mut(i).iter_mut().for_each(|x| *x = T::zero());
    }
    r
}

fn swap_rows<T: Scalar>(m: &mut DenseMatrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols() {
        m.data.swap(i * m.cols + c, j * m.cols + c);
    }
}

/// Modified Gram-Schmidt over the rows, top to bottom.
///
/// Row `i` of the result lies in the span of input rows `0..=i`. Each row is
/// projected twice for accuracy.
pub fn orthonormalize_rows<T: Scalar>(a: &DenseMatrix<T>) -> Result<DenseMatrix<T>> {
    let mut q = a.clone();
    let tol = T::pivot_tol();
    for i in 0..q.rows() {
        let original = norm(q.row(i));
        let mut v = q.row(i).to_vec();
        for _pass in 0..2 {
            for j in 0..i {
                let qj = q.row(j);
                let c = dot(qj, &v);
                for (x, &y) in v.iter_mut().zip(qj) {
                    *x -= c * y;
                }
            }
        }
        let nrm = norm(&v);
        if original == T::zero() || nrm <= tol * original {
            return Err(Error::DependentRows);
        }
        for (x, y) in q.row_mut(i).iter_mut().zip(&v) {
            *x = *y / nrm;
        }
    }
    Ok(q)
}

/// Householder QR factorization of a tall matrix, kept for repeated solves.
struct Qr<T> {
    // Householder vectors in the lower part, R on and above the diagonal
    qr: DenseMatrix<T>,
    rdiag: Vec<T>,
}

impl<T: Scalar> Qr<T> {
    fn new(a: &DenseMatrix<T>) -> Result<Self> {
        let (m, n) = (a.rows(), a.cols());
        if m < n {
            return Err(Error::Shape(format!(
                "least squares needs rows >= cols, got {m}x{n}"
            )));
        }
        let mut qr = a.clone();
        let mut rdiag = vec![T::zero(); n];
        for k in 0..n {
            let mut nrm = T::zero();
            for i in k..m {
                nrm = nrm.hypot(qr[(i, k)]);
            }
            if nrm != T::zero() {
                if qr[(k, k)] < T::zero() {
                    nrm = -nrm;
                }
                for i in k..m {
                    qr[(i, k)] /= nrm;
                }
                qr[(k, k)] += T::one();
                for j in (k + 1)..n {
                    let mut s = T::zero();
                    for i in k..m {
                        s += qr[(i, k)] * qr[(i, j)];
                    }
                    s = -s / qr[(k, k)];
                    for i in k..m {
                        let h = qr[(i, k)];
                        qr[(i, j)] += s * h;
                    }
                }
            }
            rdiag[k] = -nrm;
        }
        let scale = rdiag.iter().fold(T::zero(), |acc, r| acc.max(r.abs()));
        if n > 0 && rdiag.iter().any(|r| r.abs() <= T::rank_tol() * scale) {
            return Err(Error::RankDeficient);
        }
        Ok(Self { qr, rdiag })
    }

    #[allow(clippy::needless_range_loop)]
    fn solve(&self, b: &[T]) -> Vec<T> {
        let (m, n) = (self.qr.rows(), self.qr.cols());
        let mut y = b.to_vec();
        for k in 0..n {
            let mut s = T::zero();
            for i in k..m {
                s += self.qr[(i, k)] * y[i];
            }
            s = -s / self.qr[(k, k)];
            for i in k..m {
                y[i] += s * self.qr[(i, k)];
            }
        }
        let mut x = vec![T::zero(); n];
        for k in (0..n).rev() {
            let mut s = y[k];
            for j in (k + 1)..n {
                s -= self.qr[(k, j)] * x[j];
            }
            x[k] = s / self.rdiag[k];
        }
        x
    }
}

/// Minimizes `|A x - b|_2` for a full-column-rank `A`; returns `x` and the
/// residual norm.
pub fn least_squares<T: Scalar>(a: &DenseMatrix<T>, b: &[T]) -> Result<(Vec<T>, T)> {
    if b.len() != a.rows() {
        return Err(Error::Shape(format!(
            "rhs of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let qr = Qr::new(a)?;
    let x = qr.solve(b);
    let r = a.mul_vec(&x);
    let res = r
        .iter()
        .zip(b)
        .map(|(&p, &q)| (p - q) * (p - q))
        .sum::<T>()
        .sqrt();
    Ok((x, res))
}

/// Column-by-column least squares for a matrix right-hand side.
///
/// Returns the solution matrix and the largest column residual.
pub fn least_squares_multi<T: Scalar>(
    a: &DenseMatrix<T>,
    b: &DenseMatrix<T>,
) -> Result<(DenseMatrix<T>, T)> {
    if b.rows() != a.rows() {
        return Err(Error::Shape(format!(
            "rhs with {} rows for {} rows",
            b.rows(),
            a.rows()
        )));
    }
    let qr = Qr::new(a)?;
    let mut x = DenseMatrix::zeros(a.cols(), b.cols());
    let mut worst = T::zero();
    let mut col = vec![T::zero(); b.rows()];
    for j in 0..b.cols() {
        for i in 0..b.rows() {
            col[i] = b[(i, j)];
        }
        let sol = qr.solve(&col);
        let fit = a.mul_vec(&sol);
        let res = fit
            .iter()
            .zip(&col)
            .map(|(&p, &q)| (p - q) * (p - q))
            .sum::<T>()
            .sqrt();
        worst = worst.max(res);
        for (i, v) in sol.into_iter().enumerate() {
            x[(i, j)] = v;
        }
    }
    Ok((x, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn m(rows: &[&[f64]]) -> DenseMatrix<f64> {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn random(rng: &mut StdRng, r: usize, c: usize) -> DenseMatrix<f64> {
        let data = (0..r * c).map(|_| rng.gen_range(-1.0..1.0)).collect();
        DenseMatrix::from_vec(r, c, data).unwrap()
    }

    fn gram(q: &DenseMatrix<f64>) -> DenseMatrix<f64> {
        q.matmul(&q.transpose()).unwrap()
    }

    #[test]
    fn null_space_examples() {
        assert_eq!(
            null_space(&DenseMatrix::<f64>::identity(2), 1e-12).rows(),
            0
        );

        let ns = null_space(&m(&[&[1.0, -1.0]]), 1e-12);
        assert_eq!(ns.rows(), 1);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((ns[(0, 0)].abs() - s).abs() < 1e-14);
        assert!((ns[(0, 0)] - ns[(0, 1)]).abs() < 1e-14);

        let empty = DenseMatrix::<f64>::zeros(0, 3);
        assert_eq!(null_space(&empty, 1e-12), DenseMatrix::identity(3));
    }

    #[test]
    fn null_space_random_wide() {
        let mut rng = StdRng::seed_from_u64(7);
        let a = random(&mut rng, 10, 14);
        let ns = null_space(&a, 1e-12);
        assert_eq!(ns.rows(), 4);
        let res = a.matmul(&ns.transpose()).unwrap();
        assert!(res.max_abs() < 1e-10);
        let g = gram(&ns);
        assert!(g.max_abs_diff(&DenseMatrix::identity(4)).unwrap().0 < 1e-12);
    }

    #[test]
    fn null_space_rank_deficient_tall() {
        // 12x8 of rank 5
        let mut rng = StdRng::seed_from_u64(11);
        let a = random(&mut rng, 12, 5)
            .matmul(&random(&mut rng, 5, 8))
            .unwrap();
        let tol = 1e-12;
        let ns = null_space(&a, tol);
        assert_eq!(ns.rows(), 3);
        let res = a.matmul(&ns.transpose()).unwrap();
        assert!(res.max_abs() < 10.0 * tol * a.norm_inf());
    }

    #[test]
    fn rref_examples() {
        let id = DenseMatrix::<f64>::identity(3);
        assert_eq!(rref(&id, 1e-10), id);
        let r = rref(&m(&[&[0.0, 2.0, 4.0], &[0.0, 1.0, 2.0]]), 1e-10);
        assert!(
            r.max_abs_diff(&m(&[&[0.0, 1.0, 2.0], &[0.0, 0.0, 0.0]]))
                .unwrap()
                .0
                < 1e-15
        );
    }

    #[test]
    fn rref_is_a_normal_form() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random(&mut rng, 3, 7);
            let mix = random(&mut rng, 3, 3);
            let b = mix.matmul(&a).unwrap();
            let ra = rref(&a, 1e-10);
            let rb = rref(&b, 1e-10);
            assert!(ra.max_abs_diff(&rb).unwrap().0 < 1e-9);
            let rra = rref(&ra, 1e-10);
            assert!(rra.max_abs_diff(&ra).unwrap().0 < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_examples() {
        let q = orthonormalize_rows(&m(&[&[3.0, 4.0]])).unwrap();
        assert!(q.max_abs_diff(&m(&[&[0.6, 0.8]])).unwrap().0 < 1e-15);

        let id = DenseMatrix::<f64>::identity(3);
        assert!(
            orthonormalize_rows(&id)
                .unwrap()
                .max_abs_diff(&id)
                .unwrap()
                .0
                < 1e-12
        );

        let mut rng = StdRng::seed_from_u64(5);
        let a = random(&mut rng, 3, 7);
        let q = orthonormalize_rows(&a).unwrap();
        assert!(gram(&q).max_abs_diff(&DenseMatrix::identity(3)).unwrap().0 < 1e-12);

        assert_eq!(
            orthonormalize_rows(&m(&[&[1.0, 2.0], &[2.0, 4.0]])),
            Err(Error::DependentRows)
        );
    }

    #[test]
    fn least_squares_examples() {
        let a = m(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let (x, res) = least_squares(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
        assert!(res < 1e-12);

        let stacked = m(&[&[2.0, 1.0], &[1.0, 3.0], &[2.0, 1.0], &[1.0, 3.0]]);
        let (x2, res2) = least_squares(&stacked, &[3.0, 5.0, 3.0, 5.0]).unwrap();
        assert!((x2[0] - x[0]).abs() < 1e-14 && (x2[1] - x[1]).abs() < 1e-14);
        assert!(res2 < 1e-10);

        let (x3, res3) = least_squares(&m(&[&[1.0], &[1.0]]), &[0.0, 2.0]).unwrap();
        assert!((x3[0] - 1.0).abs() < 1e-15);
        assert!((res3 - 2f64.sqrt()).abs() < 1e-15);

        assert_eq!(
            least_squares(&m(&[&[1.0, 2.0], &[2.0, 4.0]]), &[1.0, 1.0]).unwrap_err(),
            Error::RankDeficient
        );
    }

    #[test]
    fn multi_rhs_matches_single() {
        let mut rng = StdRng::seed_from_u64(9);
        let a = random(&mut rng, 6, 3);
        let b = random(&mut rng, 6, 2);
        let (x, worst) = least_squares_multi(&a, &b).unwrap();
        for j in 0..2 {
            let col: Vec<f64> = (0..6).map(|i| b[(i, j)]).collect();
            let (xj, rj) = least_squares(&a, &col).unwrap();
            for i in 0..3 {
                assert!((x[(i, j)] - xj[i]).abs() < 1e-13);
            }
            assert!(rj <= worst + 1e-15);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let a =
            DenseMatrix::<f32>::from_rows(&[vec![1.0, -1.0, 0.0], vec![0.0, 1.0, -1.0]]).unwrap();
        let ns = null_space(&a, 1e-4);
        assert_eq!(ns.rows(), 1);
        let v = ns.row(0);
        assert!((v[0] - v[1]).abs() < 1e-5 && (v[1] - v[2]).abs() < 1e-5);
    }
}
