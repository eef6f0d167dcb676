//! Scenario files, planning runs, benchmark campaigns and SVG plots around
//! [`colregs_core`].
//!
//! The binary `colregs` exposes three subcommands; see [`cli`]. File formats
//! are described in `docs/FORMATS.md`.

pub mod bench;
pub mod cli;
pub mod output;
pub mod scenario;
pub mod stats;
pub mod svg;
