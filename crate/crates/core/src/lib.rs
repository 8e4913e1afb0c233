//! Exact Poincaré polynomials of Ext groups between Frobenius-twisted strict
//! polynomial functors, with the partition combinatorics, symmetric group
//! characters and Kan-extension rewriting they rest on.

pub mod cli;
pub mod exec;
pub mod extcalc;
pub mod graded;
pub mod kan;
pub mod oracle;
pub mod partition;
pub mod symchar;

pub use exec::Execution;
