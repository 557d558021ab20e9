//! IO, file formats and theorem drivers for the 2-category unit verifier.
//!
//! * [`modelfile`] — the JSON model schema and content hashing;
//! * [`certificate`] — machine-checkable claim certificates;
//! * [`commands`] — the drivers behind the `twocat` subcommands.

pub mod certificate;
pub mod commands;
pub mod modelfile;
