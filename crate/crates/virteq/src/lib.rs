//! A calculator for the calculus of modules over finite categories.
//!
//! Finite categories, functors, and natural transformations form the base
//! layer. On top of it: profunctors ("modules") in both their entry/action
//! and two-sided-discrete-fibration presentations, multicells with source
//! lists, coend composites and end right extensions, the virtual-equipment
//! structure (restriction cells, unit cells, companions and conjoints,
//! transposition bijections), exact squares, final/initial and fully
//! faithful functors, adjoint search, pointwise Kan extensions verified by
//! two independent routes, Beck-Chevalley mates, and derivator axiom smoke
//! checks. Every universal property is backed by a brute-force oracle that
//! enumerates the competing data at desk scale.
//!
//! Start with the runnable examples (`cargo run --example kan_extension`)
//! or the [`testkit::Catalog`] of small categories.

pub mod budget;
pub mod cat;
pub mod cell;
pub mod cli;
pub mod comma;
pub mod derivator;
pub mod equipment;
pub mod error;
pub mod functor;
pub mod io;
pub mod kan;
pub mod limits;
pub mod module;
pub mod span;
pub mod tensor;
pub mod testkit;

pub use error::{Error, Result};
