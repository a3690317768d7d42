//! Compatible associative products, M- and PM-structures, and the affine Dynkin
//! diagrams attached to them.

pub mod algebra;
pub mod dynkin;
pub mod error;
pub mod json;
pub mod linalg;
pub mod matrix_ops;
pub mod mstructure;
pub mod pencil;
pub mod pmstructure;
pub mod poisson;
pub mod random;
pub mod residual;
pub mod scalar;

pub use algebra::{Pencil, StructureConstants};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use residual::{Report, Residual, Witness};
pub use scalar::{ComplexFloat, Cyclotomic, Field, FieldSpec};
