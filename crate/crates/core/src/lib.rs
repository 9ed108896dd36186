//! Exact certificates for mapping classes given as Dehn twist words.
//!
//! * [`symplectic`]: action on first homology, Torelli and level-`m` tests.
//! * [`ledger`]: bookkeeping of geometric intersection numbers of named
//!   curves and their twist images.
//! * [`penner`]: filling checks, stretch factors and Teichmüller
//!   translation lengths of Penner words.
//! * [`cover`]: cyclic covers of the genus 2 surface, lifted multitwists
//!   and non-Torelli certificates.
//! * [`verdict`]: normal generation decisions from a mapping-class profile.

pub mod cli;
pub mod cover;
pub mod decimal;
pub mod error;
pub mod fatgraph;
pub mod ledger;
pub mod matrix;
pub mod penner;
pub mod snf;
pub mod symplectic;
pub mod table;
pub mod verdict;

pub use decimal::Decimal15;
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use symplectic::{H1Vector, SymplecticSpace, Transvection, TwistWord};

/// Version string embedded in every emitted document.
pub const TOOL_VERSION: &str = concat!("twistcert ", env!("CARGO_PKG_VERSION"));
