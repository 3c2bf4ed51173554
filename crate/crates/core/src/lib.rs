//! Coarse geometry of finite metric spaces and graphs.
//!
//! The crate builds the two hyperbolic approximations of a finite metric
//! space (ball-cover and Rips-graph flavors), analyses their level
//! structure, discretizes graphs into ball graphs with explicit
//! quasi-isometry bounds, and collapses a graph with a well-behaved real
//! function into a quotient tree through a coned 2-complex and its tracks.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod gamma;
pub mod graph;
pub mod io;
pub mod metric;
pub mod rips;
pub mod sampling;
pub mod scale;
pub mod treeify;

pub use error::{Error, MetricViolation, Result};
pub use graph::{EdgeKind, Graph};
pub use metric::FiniteMetricSpace;
