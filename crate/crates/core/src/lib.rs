//! Topological analysis of rod-stirring devices.
//!
//! A device is a set of rods moving on planetary gears. [`compile`] turns
//! its motion into a braid word, [`loops`] measures how fast that braid
//! stretches material lines, [`burau`] gives an exact algebraic certificate
//! for devices that lift to a torus map, and [`report`] assembles the
//! results into a table. [`torus`] works with the torus maps directly.
//!
//! ```
//! use taffy::report::{analyze, AnalysisOptions};
//!
//! let a = analyze("nitz", AnalysisOptions::default()).unwrap();
//! assert_eq!(a.char_poly.as_deref(), Some("x^2-3x+1"));
//! assert!((a.efficiency - 2.8873).abs() < 1e-4);
//! ```

pub mod braid;
pub mod burau;
pub mod compile;
pub mod error;
pub mod loops;
pub mod matrix;
pub mod motion;
pub mod poly;
pub mod report;
pub mod torus;
