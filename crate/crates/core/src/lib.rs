//! Edge clique cover numbers, ReLU RNNs that learn them, and the
//! sample-complexity bounds that say how much data that takes.
//!
//! - [`graph`]: bitset graphs on at most 64 vertices, Erdős–Rényi sampling,
//!   the flattened adjacency encoding and the text record codec.
//! - [`eccn`]: maximal cliques, an exact ECCN solver and the Kellerman
//!   heuristic.
//! - [`rnn`]: constrained and unconstrained ReLU RNNs, a feed-forward
//!   comparison net, backpropagation and checkpoints.
//! - [`bounds`]: parameter/operation counts, VC and pseudo-dimension bounds,
//!   sample complexity and break-even ratios.
//! - [`learn`]: datasets, splits, Adam, early-stopped training, baselines.
//! - [`harness`]: the pipelines behind the `eccn` binary.

pub mod bounds;
pub mod eccn;
pub mod error;
pub mod graph;
pub mod harness;
pub mod learn;
pub mod rnn;

pub use error::{Error, Result};
pub use graph::{er_generate, flatten, graph_space_size, FlatEncoding, Graph};
