//! Combinatorial Legendrian front projections.
//!
//! A front is encoded as a word of Morse events read left to right: left
//! cusps create two adjacent strands, right cusps join two adjacent strands,
//! and crossings exchange them. Slots count strand positions from the top,
//! starting at 1. Orientations are seeded per component by the direction of
//! the upper strand born at the component's first left cusp.
//!
//! The classical front invariants are computed from the word:
//! `tb = writhe - #cusps/2` and `rot = (#down-cusps - #up-cusps)/2`.

mod abstract_link;
mod diagram;
mod ops;

pub use abstract_link::{AbstractLinkData, LinkData};
pub use diagram::{parse_word, Components, FrontDiagram, FrontError, MorseEvent};
pub use ops::Zigzag;
