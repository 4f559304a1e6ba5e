//! ReLU recurrent networks and the feed-forward comparison network.

mod checkpoint;
mod forward;
mod init;
mod layer;
mod model;
mod params;
mod projection;

pub use checkpoint::{decode_checkpoint, encode_checkpoint, load_checkpoint, save_checkpoint};
pub use forward::{
    backward_ffn, backward_multi, backward_single, forward_ffn, forward_multi, forward_single,
};
pub use init::{init_ffn, init_multi, init_single, Mode};
pub use layer::RnnLayer;
pub use model::{Model, Network};
pub use params::{Dense, FeedForwardParams, MultiLayerRnnParams, ParamBlocks, SingleLayerRnnParams};
pub use projection::{project_l1_ball, project_nonneg_l1, Constrained};
