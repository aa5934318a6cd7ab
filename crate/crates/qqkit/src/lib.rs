//! Exact qq-characters of decorated quivers.
//!
//! Characters are generated by iterated iWeyl reflections with S-function
//! coefficients, specialized to Kirillov-Reshetikhin parameters, reduced to
//! classical q-characters, and for cyclic quivers evaluated as sums over
//! partition tuples.

pub mod affine;
pub mod algebra;
pub mod character;
pub mod error;
pub mod higgs;
pub mod io;
pub mod job;
pub mod quiver;
pub mod verify;

pub use error::{QqError, Result};
