pub mod biseries;
pub mod error;
pub mod geometry;
pub mod logconcavity;
pub mod m0n;
pub mod partitions;
pub mod scalar;
pub mod stanley;
pub mod symfunc;
pub mod trees;
pub mod unipoly;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};

pub type UPoly = unipoly::UniPoly<Rational>;
pub type SymF = symfunc::SymFunc<Rational>;
pub type Poly = biseries::BivarPoly<Rational>;
pub type Series = biseries::QSeries<Rational>;
