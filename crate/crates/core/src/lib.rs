//! Exact arithmetic for Mumford-Tate groups of products of CM abelian
//! varieties, computed from Galois-group combinatorics.
//!
//! Groups are finite multiplication tables; fields and embeddings are right
//! cosets `Hg` of subgroups `H ≤ G`. Character lattices are integer matrices
//! handled in exact big-integer arithmetic.

pub mod classify;
pub mod cmtype;
pub mod error;
pub mod groups;
pub mod json;
pub mod mtgroup;
pub mod zlattice;

pub use cmtype::{CMFactor, CMType, CosetSpace};
pub use error::{Error, Result};
pub use groups::{CentralInvolution, ElemSet, FiniteGroup, GroupSpec, Subgroup};
pub use mtgroup::{PairAnalysis, PairInput, ProjectionStatus};
pub use zlattice::{IntMatrix, SpanStatus};
