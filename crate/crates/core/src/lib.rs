//! Coverings of complete geometric graphs by monotone paths, noncrossing
//! paths and plane matchings.
//!
//! Every construction here emits pieces that are re-checked by the exact
//! verifiers in [`covers`]; floating point is only used to pick directions
//! and sample areas, never to decide a predicate.

pub mod bounds;
pub mod clique;
pub mod covers;
pub mod edges;
pub mod error;
pub mod experiment;
pub mod geom;
pub mod oracle;
pub mod pointgen;
pub mod render;
pub mod sweep;
pub mod zigzag;

pub use covers::{
    check_coverage, Cover, MatchingPiece, PathPiece, Piece, PieceKind, Shape, VerificationReport,
};
pub use edges::{Edge, EdgeSet};
pub use error::{Error, Result};
pub use geom::{AngularInterval, Direction, Point};
pub use pointgen::{Group, GroupLabels, PointSet, Provenance};
