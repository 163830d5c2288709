//! Scenario language and driver for the `endsum` command.
//!
//! A scenario declares named spaces and lists directives:
//!
//! ```text
//! space Y = ladder(L(3), S(3)) cap E(3) cap D(4)
//! space Z = stringer(L(3)) cap E(3)
//! space M1 = csi(Y@L(3), Z@*)
//! space M2 = csi(Y@S(3), Z@*)
//! distinguish M1 M2 primes 3
//! ```

pub mod ast;
pub mod diagnostic;
pub mod elaborate;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod report;

pub use diagnostic::{Diagnostic, Span};
pub use report::{Format, Options, Record, Status};

/// Parses, elaborates and runs a scenario. Nothing runs unless the whole
/// document elaborates.
pub fn run_source(src: &str, opts: &Options) -> Result<Vec<Record>, Diagnostic> {
    let doc = parser::parse(src)?;
    let scenario = elaborate::elaborate(&doc)?;
    Ok(report::run(&scenario, opts))
}

/// Parses and elaborates without running anything.
pub fn check_source(src: &str) -> Result<elaborate::Scenario, Diagnostic> {
    elaborate::elaborate(&parser::parse(src)?)
}
