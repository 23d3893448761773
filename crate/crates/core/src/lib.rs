pub mod algebra;
pub mod constructions;
pub mod covers;
pub mod error;
pub mod grid;
pub mod hyperplane;
pub mod matrix;
pub mod poly;
pub mod verify;
pub mod weightset;

pub use error::{Error, Result};
pub use grid::{Grid, GridPoint, PointSet};
pub use poly::{Monomial, Poly};
pub use weightset::{AdmittingCertificate, WeightSet};
