//! Exact Milnor numbers, local standard bases and pullbacks of hypersurface
//! germs through finite map germs.

pub mod catalog;
pub mod error;
pub mod extnat;
pub mod germmap;
pub mod localsb;
pub mod milnor;
pub mod parse;
pub mod polyring;
pub mod suite;

pub use error::{Error, Result};
pub use extnat::ExtNat;
pub use germmap::{MapGerm, Multiplicity, ReducedPreimage, SkipReason, VerificationReport, Verdict};
pub use milnor::MilnorResult;
pub use polyring::{Monomial, Polynomial, Rational, Ring};
