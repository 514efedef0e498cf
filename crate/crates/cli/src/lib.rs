//! Command-line workbench for finite effect algebras.
//!
//! The binary reads matrix files — plain text, one row of space-separated
//! nonnegative integers per line, `#` comments and blank lines ignored —
//! and exposes validation, inspection, sum-table rendering, state
//! computation, isomorphism testing, composition, enumeration and real
//! models as subcommands. All output is deterministic; rationals print as
//! `p/q` (or `p` for integers).
//!
//! Exit codes: 0 for success or a true verdict, 1 for a domain "no"
//! (invalid matrix, not isomorphic, not compatible, rejected value set),
//! 2 for usage, parse or internal errors.

pub mod commands;
pub mod format;
pub mod render;

pub use commands::run;
