pub mod clustering;
pub mod communities;
pub mod cost;
pub mod error;
pub mod export;
pub mod graph;
pub mod maxflow;
pub mod parse;
pub mod queries;
pub mod tree;

pub use cost::Cost;
pub use error::{Error, Result};
pub use graph::{ContractionMap, Edge, Graph, GraphBuilder, VertexSet};
