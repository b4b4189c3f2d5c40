//! Command-line front end and file formats for `ecs-core`.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod parse;
pub mod scan;
pub mod schema;

pub use error::{CliError, Result};
