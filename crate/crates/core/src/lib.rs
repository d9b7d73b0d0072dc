//! Exact computations with split semisimple Lie algebras over commutative
//! ℚ-algebras.

pub mod demo;
pub mod diagnostics;
pub mod error;
pub mod instances;
pub mod chevalley;
pub mod conjugacy;
pub mod rings;
pub mod rootdata;

pub use error::{Error, Result};
