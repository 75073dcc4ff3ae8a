//! Command-line workbench over `conlat-core`: the algebra file format, the
//! builtin corpus, DOT export of congruence lattices, brute-force oracles,
//! and the verification-suite runner.

pub mod commands;
pub mod dot;
pub mod format;
pub mod verify;

pub use commands::{run_command, EXIT_PASS, EXIT_USAGE, EXIT_WITNESS};
pub use format::{parse_algebra, print_algebra};
