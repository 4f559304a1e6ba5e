//! Edge clique cover solvers and cover verification.

mod cliques;
mod cover;
mod exact;
mod kellerman;

pub use cliques::maximal_cliques;
pub use cover::{verify_cover, Clique, CoverCheck, EdgeCliqueCover};
pub use exact::{exact_eccn, ExactOutcome};
pub use kellerman::kellerman_cover;
