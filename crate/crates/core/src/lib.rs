//! Finite simplicial sets and complexes, subdivision, Ex, homotopy colimits of
//! hom-diagrams, and bounded checks for weak equivalences and
//! pro-equivalences of finite diagrams.

pub mod budget;
pub mod category;
pub mod complexes;
pub mod diagrams;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod kan_ex;
pub mod levelwise;
pub mod nerve;
pub mod realization;
pub mod simplex;
pub mod subdivision;

pub use error::{Error, Result};
