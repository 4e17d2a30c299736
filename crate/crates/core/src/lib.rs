//! Skorohod-type distances between cadlag paths.
//!
//! The crate is built in layers:
//!
//! - [`metric`]: metric spaces, the squeezed space-time and its metric.
//! - [`split_time`]: the split real line, where each time `t` is doubled
//!   into `t-` and `t+`.
//! - [`betweenness`]: segment operations that decide how jumps are filled in
//!   (trivial for J1, linear for M1, order or interpolation based).
//! - [`ordered`]: finite partially and totally ordered point sets with the
//!   ordered Hausdorff metrics `d_part`, `d_tot` and the chain metrics
//!   `d^<m>`.
//! - [`path`]: paths on closed time domains, their closed and filled-in
//!   graphs, path distances, moduli of continuity and interpolation.
//! - [`diagnostics`]: family-level compactness diagnostics.
//!
//! Everything here is pure computation on owned values. The crate is
//! `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod betweenness;
pub mod diagnostics;
mod error;
pub mod metric;
pub mod ordered;
pub mod path;
pub mod split_time;

pub use error::{Error, Result};
