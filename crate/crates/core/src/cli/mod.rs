//! Documents, built-in generators and the command surface.

pub mod commands;
pub mod document;
pub mod generate;

pub use commands::{run_command, Command, CommandOutcome, Options, ReportDocument, Verdict};
pub use document::{parse_polytope, ParsedInput, PolytopeDocument};
