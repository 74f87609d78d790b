//! Command-line front end for the `paramword` library: verification suites,
//! report formatting and word-table rendering.

pub mod render;
pub mod report;
pub mod suites;

pub use render::{render_sections, render_word_table};
pub use report::{Check, Outcome, Status, SuiteReport};
pub use suites::{run_suite, Suite, UnknownSuite};
