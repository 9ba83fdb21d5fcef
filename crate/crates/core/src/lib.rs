//! Exact-arithmetic stability calculus for coherent systems on algebraic
//! surfaces.
//!
//! Everything is computed over the rationals with arbitrary precision: no
//! floating point, no approximation. A surface enters only through its
//! numerical shadow (an intersection lattice together with a canonical
//! class, a polarization and chi of the structure sheaf), a sheaf through
//! its rank and Chern numbers, and a coherent system through its type
//! `(n; c1, c2, k)`. On top of that the crate provides:
//!
//! * [`qpoly`] — rational polynomials in a formal variable `m` with the
//!   eventual (`m >> 0`) total order,
//! * [`lattice`] — intersection lattices and builtin surfaces,
//! * [`invariants`] — Euler characteristics, slopes and normalized Hilbert
//!   polynomials,
//! * [`stability`] — the alpha-stability inequality, bound and threshold
//!   polynomials and the strictness case analysis,
//! * [`walls`] — enumeration of candidate critical values over a finite
//!   search window,
//! * [`moduli`] — dimension formulas and hypothesis checks for the large
//!   alpha moduli space.
//!
//! The crate is `no_std` (it allocates, so `alloc` is required); IO, file
//! formats and the command line live in the companion `cohsys-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod invariants;
pub mod lattice;
pub mod moduli;
pub mod qpoly;
pub mod stability;
pub mod walls;

pub use error::Error;
pub use invariants::{SheafNumerics, SystemType};
pub use lattice::{DivisorClass, SurfaceData};
pub use qpoly::{Rat, RationalPoly};
pub use stability::{AlphaPoly, SubsystemCandidate};
pub use walls::{Wall, WallReport, WallSearchWindow};
