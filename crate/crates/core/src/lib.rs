//! Exact graded homological algebra over quotients of polynomial rings by homogeneous
//! ideals: Gröbner bases, finitely presented modules, free resolutions, Ext and Tor,
//! Matlis and canonical duality, and certified quasi-projective and quasi-injective
//! resolutions with their dimensions.

pub mod algebra;
pub mod cli;
pub mod complexes;
pub mod duality;
pub mod invariants;
pub mod modules;
pub mod error;
pub mod quasires;
pub mod report;

pub use error::{Error, Result};
