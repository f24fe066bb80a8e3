//! Exact-arithmetic toolkit for contact surgery diagrams on Legendrian
//! links in the standard contact 3-sphere.
//!
//! The crate represents multi-component Legendrian fronts combinatorially
//! as Morse-event words, turns rational contact surgery coefficients into
//! contact (+1)/(-1) presentations through negative continued fractions,
//! stabilizations and push-offs, and computes the homotopy invariants of
//! the surgered contact 3-manifolds: the first homology of the boundary,
//! the first Chern class with its divisibility and square, and the d3
//! invariant. A realization pipeline builds a contact presentation of any
//! integrally framed link hitting a prescribed Chern-class twist and d3
//! value, verified through linking-matrix Kirby moves.
//!
//! All arithmetic is exact: arbitrary-precision integers and rationals
//! throughout, no floating point.

// Index loops read better than iterator chains in the matrix kernels.
#![allow(clippy::needless_range_loop)]

pub mod dsl;
pub mod exactalg;
pub mod front;
pub mod homology;
pub mod invariants;
pub mod realize;
pub mod surgery;

pub use exactalg::{Int, IntMatrix, Rational};
pub use front::{AbstractLinkData, FrontDiagram, LinkData, MorseEvent, Zigzag};
pub use homology::{build_presentation, first_homology, HandlebodyPresentation, HomologyGroup};
pub use invariants::{catalog, d3, CatalogEntry, D3Result};
pub use realize::{realize, FramedLink, LegendrianHint, RealizationTarget};
pub use surgery::{ContactSurgeryDiagram, SurgeryCoefficient, ZigzagPolicy};
