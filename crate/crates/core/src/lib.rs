//! Clebsch-Gordan coefficients of su(N) in the Gelfand-Tsetlin basis.
//!
//! Irreps are labelled by i-weights ([`IWeight`]), basis states by GT patterns
//! ([`GtPattern`]). [`Decomposition`] reduces a tensor product with the
//! Littlewood-Richardson rule and [`compute_tensor`] produces the coefficients
//! of one target irrep, resolving outer multiplicities.
//!
//! ```
//! use gtcg::{compute_tensor, IWeight};
//!
//! let d: IWeight = "(1,0)".parse().unwrap();
//! let singlet = compute_tensor::<f64>(&d, &d, &"(0,0)".parse().unwrap()).unwrap();
//! assert!((singlet.get(1, 1, 1, 2).abs() - 0.5f64.sqrt()).abs() < 1e-15);
//! ```

pub mod algebra;
pub mod clebsch;
pub mod error;
pub mod linalg;
pub mod littlewood;
pub mod patterns;
pub mod scalar;
pub mod table;
pub mod verify;
pub mod weights;

pub use algebra::{
    ladder_action, lowering_element, operator_matrix, raising_element, weight_shift, Direction,
    OperatorMatrix,
};
pub use clebsch::{
    candidate_pairs, compute_all, compute_tensor, highest_weight_cgc, CgcTensor, ProductSpace,
};
pub use error::{Error, Result};
pub use linalg::DenseMatrix;
pub use littlewood::Decomposition;
pub use patterns::{enumerate, Basis, GtPattern, PWeight, YoungTableau, ZWeight};
pub use scalar::Scalar;
pub use weights::IWeight;

pub type Matrix = DenseMatrix<f64>;
pub type Tensor = CgcTensor<f64>;
pub type Operator = OperatorMatrix<f64>;
pub type Matrix32 = DenseMatrix<f32>;
pub type Tensor32 = CgcTensor<f32>;
