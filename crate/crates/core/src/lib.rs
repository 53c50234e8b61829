//! Exact algebra for contraction algebras, NCCR quiver algebras and the
//! classification of spherical objects via mutation functors.

pub mod derived;
pub mod fdrep;
pub mod linalg;
pub mod nccr;
pub mod quiver;

pub use linalg::{Field, LinalgError, Matrix, Scalar};
pub use quiver::{Elem, GradedAlgebra, Grading, Path, Presentation, Quiver, QuiverError, Relation};
pub use fdrep::{FDAlgebra, FdError, Family, Rep};
pub use nccr::{LambdaN, NccrError};
pub use derived::{CObject, Category, DerivedError, GroupoidWord, Letter};
