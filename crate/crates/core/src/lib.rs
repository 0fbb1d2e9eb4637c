//! Recursive neighborhood pooling (RNP) as a deterministic, injective graph
//! encoder, plus the machinery to check what it can count: covering
//! sequences, exact subgraph-count oracles, a 1-WL baseline and seeded graph
//! generators.
//!
//! Batch loops run on rayon when the `parallel` feature (default) is enabled
//! and sequentially otherwise; see [`par::Strategy`].

pub mod covering;
pub mod encoding;
pub mod error;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod par;
pub mod rnp;
pub mod wl;

pub use covering::{CoveringSequence, VertexCoveringSequence};
pub use encoding::{Encoding, MarkedFeature};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use oracle::CountMode;
pub use par::Strategy;
pub use rnp::UpdateCounter;
