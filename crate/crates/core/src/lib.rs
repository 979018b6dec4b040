pub mod abvar;
pub mod biext;
pub mod error;
pub mod exactlin;
pub mod galmod;
pub mod liestruct;
pub mod onemotive;
pub mod radical;

pub use abvar::{AbelianVarietyModel, EndAlgebraRep, PointVector, SubvarietyData, VarietyParams, VarietyRegistry};
pub use biext::{Slot, TorusPairingClass};
pub use error::{Error, Result};
pub use exactlin::{RatMatrix, Rational, Subspace};
pub use galmod::{ActionGroup, GaloisLattice};
pub use liestruct::GradedEndData;
pub use onemotive::{AbelianPair, GradedPieces, OneMotive};
pub use radical::{MultSpace, RadicalReport};
