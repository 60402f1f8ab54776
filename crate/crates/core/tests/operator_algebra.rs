//! Commutation relations of the generator matrices.

mod common;

use gtcg::{operator_matrix, Basis, DenseMatrix, Direction, IWeight};

fn comm(a: &DenseMatrix<f64>, b: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    let (ab, ba) = (a.matmul(b).unwrap(), b.matmul(a).unwrap());
    let mut out = ab.clone();
    for i in 0..out.rows() {
        for j in 0..out.cols() {
            out[(i, j)] = ab[(i, j)] - ba[(i, j)];
        }
    }
    out
}

fn scaled(a: &DenseMatrix<f64>, f: f64) -> DenseMatrix<f64> {
    let mut out = a.clone();
    for i in 0..out.rows() {
        out.row_mut(i).iter_mut().for_each(|x| *x *= f);
    }
    out
}

fn dev(a: &DenseMatrix<f64>, b: &DenseMatrix<f64>) -> f64 {
    a.max_abs_diff(b).map_or(0.0, |d| d.0)
}

fn generators(basis: &Basis, l: usize) -> [DenseMatrix<f64>; 3] {
    [Direction::Raising, Direction::Lowering, Direction::Diagonal]
        .map(|d| operator_matrix::<f64>(basis, l, d).unwrap().to_dense())
}

#[test]
fn same_index_relations() {
    let mut irreps = common::irreps(3, 3);
    irreps.extend(common::irreps(4, 2));
    irreps.extend((0..=4).map(|a| IWeight::new(vec![a, 0]).unwrap()));
    for s in &irreps {
        let basis = Basis::new(s);
        for l in 1..s.rank() {
            let [jp, jm, jz] = generators(&basis, l);
            assert!(dev(&comm(&jp, &jm), &scaled(&jz, 2.0)) < 1e-10, "{s} l={l}");
            assert!(dev(&comm(&jz, &jp), &jp) < 1e-10, "{s} l={l}");
            assert!(
                dev(&comm(&jz, &jm), &scaled(&jm, -1.0)) < 1e-10,
                "{s} l={l}"
            );
        }
    }
}

#[test]
fn distinct_indices() {
    for s in common::irreps(4, 2) {
        let basis = Basis::new(&s);
        let g: Vec<[DenseMatrix<f64>; 3]> = (1..4).map(|l| generators(&basis, l)).collect();
        for l in 0..3 {
            for lp in 0..3 {
                if l == lp {
                    continue;
                }
                // J_+^(l) and J_-^(l') commute for l != l'
                let zero = DenseMatrix::zeros(basis.dim(), basis.dim());
                assert!(
                    dev(&comm(&g[l][0], &g[lp][1]), &zero) < 1e-10,
                    "{s} {l} {lp}"
                );
                // the diagonal generators commute among themselves
                assert!(dev(&comm(&g[l][2], &g[lp][2]), &zero) < 1e-12);
                // [J_z^(l), J_+^(l')] = -1/2 J_+^(l') for adjacent indices, 0 otherwise
                let c = if l.abs_diff(lp) == 1 { -0.5 } else { 0.0 };
                assert!(dev(&comm(&g[l][2], &g[lp][0]), &scaled(&g[lp][0], c)) < 1e-10);
            }
        }
    }
}

#[test]
fn raising_is_exact_transpose() {
    for s in common::irreps(3, 4).into_iter().chain(common::irreps(4, 3)) {
        let basis = Basis::new(&s);
        for l in 1..s.rank() {
            let up = operator_matrix::<f64>(&basis, l, Direction::Raising).unwrap();
            let down = operator_matrix::<f64>(&basis, l, Direction::Lowering).unwrap();
            assert_eq!(up.to_dense(), down.to_dense().transpose());
        }
    }
}
