//! Library half of the `fibsnow` command-line tool: argument parsing, report
//! assembly and SVG rendering.

pub mod app;
pub mod report;
pub mod svg;

pub use app::{run, Cli};
