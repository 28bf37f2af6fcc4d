//! Exact information algebra of coherent sets of desirable gambles on
//! finite possibility spaces.
//!
//! Everything is generic over an exact ordered field ([`scalar::Scalar`]);
//! the aliases below fix it to arbitrary-precision rationals.

pub mod algebra;
pub mod atoms;
pub mod axioms;
pub mod cone;
mod dd;
pub mod error;
pub mod labeled;
mod lp;
pub mod multivariate;
pub mod partition;
pub mod phi;
pub mod random;
pub mod scalar;

pub use error::{Error, Result};
pub use multivariate::VariableSystem;
pub use partition::{Partition, PossibilitySpace};

pub type Rational = num_rational::BigRational;
pub type Gamble = cone::Gamble<Rational>;
pub type ConeV = cone::ConeV<Rational>;
pub type ConeH = cone::ConeH<Rational>;
pub type PhiElement = phi::PhiElement<Rational>;
pub type MaximalSet = atoms::MaximalSet<Rational>;
pub type LabeledPiece = labeled::LabeledPiece<Rational>;
pub type TildePiece = labeled::TildePiece<Rational>;
pub type Desirability = algebra::Desirability<Rational>;
