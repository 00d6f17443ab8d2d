//! Minimum spanning trees, 3-sausage Steiner trees and the Steiner ratio
//! function for evenly spaced points on a right circular helix.
//!
//! The crate is organised bottom-up:
//!
//! - [`helix`]: point generation, skip-k subsequences and `A_k`.
//! - [`spanning`]: closed-form spanning lengths and an exact MST oracle.
//! - [`steiner`]: the sausage Steiner tree, its helical embedding and a
//!   fixed-topology relaxation.
//! - [`srf`]: ratio functionals, FST feasibility and chirality.
//! - [`optimize`]: grid scans, simplex refinement and level curves.
//! - [`verify`]: the self-contained acceptance checks.

pub mod error;
pub mod helix;
pub mod optimize;
pub mod point;
pub mod spanning;
pub mod srf;
pub mod steiner;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use helix::{
    a_k, helix_points, sausage_alpha, sausage_omega, subsequence, union_sequence, HelixParams,
    SkipSequence, UnionSequence,
};
pub use point::Point3;
pub use tree::{TreeEmbedding, VertexId};
