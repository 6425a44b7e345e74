//! Finite models of ample groupoids, quantitative dynamic asymptotic
//! dimension witnesses, coarse decompositions, and the constructions that
//! transfer witnesses between groupoids.

pub mod build;
pub mod coarse;
pub mod cover;
pub mod dad;
pub mod error;
#[doc(hidden)]
pub mod fuzzing;
pub mod groupoid;
pub mod io;
pub mod pipeline;
pub mod search;
pub mod sets;
pub mod spec;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use groupoid::{Functor, Groupoid, RawGroupoid};
pub use search::SearchMode;
pub use sets::{ArrowSet, UnitSet};
