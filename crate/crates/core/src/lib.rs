//! Multi-part cross-intersecting families: layers of multi-part sets,
//! direct products of Kneser graphs, exact independent-set search, extremal
//! cross-intersecting systems and the bipartite disjointness graph between
//! two layers.

pub mod arith;
pub mod bipartite;
pub mod cross;
mod error;
pub mod family;
pub mod kneser;
pub mod layer;
pub mod rank;
pub mod spec;
pub mod vertex;

pub use arith::Ratio;
pub use cross::CrossSystem;
pub use error::{Error, Result};
pub use family::Family;
pub use kneser::{ProductKneserGraph, SolverLimits};
pub use layer::{Disjointness, Layer};
pub use spec::{GroundSpec, Part};
pub use vertex::Vertex;
