//! Cyclic representations of the quantum affine algebra at a root of unity, the chiral Potts
//! intertwiners built from them, and the transfer and Q-operators they generate.
//!
//! Every operator is a dense complex matrix ([`tensorcore::CMat`]); identities between them are
//! checked numerically through Frobenius-norm residuals.

pub mod curve;
pub mod error;
pub mod intertwiners;
pub mod lops;
pub mod reps;
pub mod tensorcore;
pub mod transfer;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use tensorcore::{CMat, Tolerance, C64};
