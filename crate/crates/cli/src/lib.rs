//! Command line and HTTP front ends for `kaleido-core`.

pub mod api;
pub mod cli;
pub mod payload;
pub mod svg;
