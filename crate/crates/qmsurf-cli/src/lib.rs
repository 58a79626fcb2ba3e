//! Command-line front end over `qmsurf-core`: curve file ingestion, the
//! per-prime scan pipeline (fanned out over a worker pool with
//! order-restoring aggregation), CSV emission and plain-text reports.

pub mod commands;
pub mod curvefile;
pub mod error;
pub mod fixtures;
pub mod satotate;
pub mod scan;

pub use error::CliError;

pub type Result<T> = std::result::Result<T, CliError>;
