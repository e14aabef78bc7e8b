//! Slim rectangular lattices: construction by fork insertion, decomposition
//! back to a grid, rectangular intervals, and natural diagrams with exact
//! rational coordinates.
//!
//! Lattices are finite, graded and planar, stored as levels with an explicit
//! left-to-right order ([`LeveledLattice`]). Everything here is pure and
//! allocation-only; file formats, rendering and the command-line tool live in
//! the `slimrect` crate.
#![no_std]

extern crate alloc;

pub mod diagram;
mod embed;
pub mod enumerate;
pub mod fork;
pub mod lattice;
pub mod rect;
pub mod report;
pub mod sublattice;

pub use diagram::{Diagram, Point, SlopeClass, Q};
pub use enumerate::{canonical_code, enumerate_sr, CanonicalCode, Limits, Universe};
pub use fork::{Cell4, CellRef, ForkError, ForkScript, ForkTrace};
pub use lattice::{validate, ElementId, LatticeDefect, LatticeError, LeveledLattice, RawLattice};
pub use rect::{grid, RectFrame, RectInterval};
pub use report::{Check, VerificationReport};
pub use sublattice::{Pattern, S7Kind, S7Occurrence};
