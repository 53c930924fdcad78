//! Exclusion statistics toolkit.
//!
//! Generating functions of the Haldane-Wu and Gentile statistics, their
//! Taylor series, entropy densities, effective central charges, and a suite
//! of numerical checks for the identities and inequalities that tie them
//! together.

pub mod charge;
pub mod error;
pub mod genfun;
pub mod identities;
pub mod numerics;
pub mod thermo;

pub use error::{Error, Result};
pub use genfun::Statistics;
pub use numerics::Tolerances;
