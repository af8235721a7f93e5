//! Concrete syntax.
//!
//! ```text
//! term    := "0" | "Om" | "S" | "L" | numeral | term "+" term
//!          | "phi(" term "," term ")" | "reg(" term ")"
//!          | "psi(" term ";" term [";" fnmap] ")"
//!          | "th(" term "," term ")" ["*" term]
//! fnmap   := "{" entry ("," entry)* "}"
//! entry   := term ":" term
//! ```
//!
//! Positions are typed: finite-function values and `th` arguments are read in
//! the Λ-base view, everything else in the main view.

mod parse;
mod print;
mod structured;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use parse::{parse, parse_fnmap, parse_lnf};
pub use print::{print, print_fnmap};
pub use structured::{from_structured, to_structured};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub offset: usize,
    pub length: usize,
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.offset, self.offset + self.length)
    }
}
