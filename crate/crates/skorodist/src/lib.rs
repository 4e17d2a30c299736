//! File formats, batch computation and the command line on top of
//! `skorodist-core`.
//!
//! - [`io`]: JSON paths, ordered point sets and settings.
//! - [`mode`]: run-time choice of betweenness (J1, M1, order,
//!   interpolation) and the supported value types.
//! - [`matrix`]: pairwise distance matrices on the rayon pool.
//! - [`cli`]: the `skorodist` commands.

pub mod cli;
pub mod error;
pub mod format;
pub mod io;
pub mod matrix;
pub mod mode;
pub mod registry;

pub use error::{CliError, CliResult};
