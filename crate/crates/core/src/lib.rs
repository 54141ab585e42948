//! Fibonacci snowflake polygons on the square lattice and three ways of
//! measuring how much they meander: box-counting dimension, the mean number
//! of crossings with a random line, and the entropy of that crossing count.
//!
//! The pipeline is
//!
//! ```text
//! words::snowflake_word ─▶ turtle::trace ─▶ hull / crofton / fractal
//! ```
//!
//! ```
//! use fibsnow_core::{turtle, words};
//!
//! let path = turtle::snowflake_path(2).unwrap();
//! assert_eq!(path.segment_count() as u64, 4 * words::fib_length(7));
//! assert!(turtle::classify(&path).is_simple_closed());
//! ```

pub mod crofton;
mod error;
pub mod fractal;
pub mod hull;
pub mod turtle;
pub mod words;

pub use error::{Error, Result};
