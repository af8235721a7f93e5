//! A computable ordinal notation system built around one stable ordinal `S`
//! and its successor admissible `Λ = S⁺`.
//!
//! * [`term`]: terms in the main view and in the Λ-base view, finite functions,
//!   normal-form constructors.
//! * [`order`]: the comparator, `f <^c ξ`, `<_lx`, irreducibility and the
//!   measures `a(ξ)`, `o(f)`, `o_μ(f)`.
//! * [`hull`]: hull membership, `C^α(X)`, validation, attributes and collapsing.
//! * [`textio`]: parser, printer and the structured document form.
//! * [`harness`]: enumeration, independent fragment oracles, descent stress and
//!   the property suite.

pub mod error;
pub mod harness;
pub mod hull;
pub mod order;
pub mod term;
pub mod textio;

pub use error::{OrdError, Result};
pub use order::{compare, ComparisonOutcome, Ctx, Mutation};
pub use term::{FiniteFn, Lnf, Term};
