//! Command line front end for the bound-quiver toolkit: a line-oriented file
//! format, subcommands orchestrating the library, and human- or
//! machine-readable reports.

pub mod commands;
pub mod format;
pub mod report;
