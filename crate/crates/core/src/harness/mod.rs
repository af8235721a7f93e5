//! Enumeration, oracles, stress and property drivers.

pub mod descent;
pub mod enumerate;
pub mod gen;
pub mod oracle;
pub mod props;
pub mod shrink;

pub use descent::{descent_stress, DescentConfig, DescentReport};
pub use enumerate::{enumerate, EnumSpec, Enumeration, Generator};
pub use oracle::{in_cnf_fragment, in_veblen_fragment, oracle_cnf_compare, oracle_veblen_compare};
pub use props::{descent_start, property_suite, Status, SuiteConfig, SuiteReport, Tally};
