pub mod census;
pub mod cli;
pub mod doc;
pub mod error;
pub mod field;
pub mod kmatrix;
pub mod matrix;
pub mod mf;
pub mod normal_form;
pub mod oracle;
pub mod poly;
pub mod random;
pub mod root;
pub mod stable;

pub use error::{Error, LinalgError, Result};
pub use field::{FieldSpec, Scalar};
pub use kmatrix::Matrix;
pub use matrix::PolyMatrix;
pub use normal_form::{
    coker_kdim, hermite_normal_form, kernel_basis, smith_normal_form, solve_right, DegreeGuard, KDim,
};
pub use poly::Poly;
