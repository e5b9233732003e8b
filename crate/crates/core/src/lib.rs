pub mod error;
pub mod exponent_field;
pub mod linalg;
pub mod numeric;
pub mod predimension;
pub mod subspace;
pub mod toric;

pub use error::{PowError, Result};
pub use exponent_field::ExponentScalar;
pub use linalg::{KMatrix, QMatrix};
