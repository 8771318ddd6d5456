//! Exact computations around small coweights of simple groups: root data,
//! weight multiplicities, nilpotent orbits, Reeder pieces and matrix models.

pub mod error;
pub mod matrixmodel;
pub mod multiplicity;
pub mod orbits;
pub mod paperdata;
pub mod reeder;
pub mod rootsystem;
pub mod verify;

pub use error::{Error, Result};
