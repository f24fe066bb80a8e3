//! Text format for contact surgery diagrams (`.csd`), plus JSON export and
//! a schematic SVG renderer for fronts.
//!
//! The grammar is line-oriented with `#` comments:
//!
//! ```text
//! diagram ::= stmt*
//! stmt    ::= "front" "{" event* "}"
//!           | "abstract" abs-decl*
//!           | "label" INT NAME
//!           | "orient" INT ("+" | "-")
//!           | "surgery" (INT | NAME) "=" coeff
//! event   ::= ("L" | "R" | "X") INT ";"
//! abs-decl ::= "knot" NAME "tb" "=" INT "rot" "=" INT ";"
//!            | "lk" NAME NAME "=" INT ";"
//! coeff   ::= INT | INT "/" INT | "+1" | "-1" | "inf"
//! ```
//!
//! A document is either front-mode or abstract-mode, never both. Components
//! are numbered by first left cusp (front mode) or declaration order
//! (abstract mode), starting at 1; labels are aliases. Components without a
//! `surgery` statement default to the `inf` marker (no surgery), which the
//! expansion and homology layers reject with a targeted message.

mod json;
mod parse;
mod print;
mod svg;

pub use json::{
    chern_to_json, d3_to_json, diagram_to_json, homology_to_json, to_json_string,
};
pub use parse::{parse, parse_framed_link, ParseError, ParseErrorKind, ParsedDocument, ParsedFramedLink};
pub use print::print;
pub use svg::{render_front_svg, render_svg};
