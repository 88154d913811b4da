//! Lines in finite metric spaces and graphs, with exhaustive verification
//! over small instances.

pub mod enumerate;
pub mod error;
pub mod graph;
pub mod io;
pub mod lines;
pub mod metric;
pub mod pointset;
pub mod verify;

pub use error::{Error, Result};
pub use graph::Graph;
pub use metric::{DistanceMatrix, Line, LineCensus};
pub use pointset::PointSet;
