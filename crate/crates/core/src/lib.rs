//! Certified computations around gap principles for rational and p-adic
//! approximations to algebraic numbers.

pub mod algnum;
pub mod autgroup;
pub mod error;
pub mod exact;
pub mod gap;
pub mod minpair;
pub mod thue;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
