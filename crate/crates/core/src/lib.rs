//! Forman–Ricci and effective-resistance curvature of polytope skeletons.
//!
//! The input object is a [`TwoSkeleton`]: a graph plus its 2-faces. From it
//! the crate computes exact Forman edge curvatures, Laplacian-based
//! resistance curvatures at vertices, the bounds and screens built on both,
//! closed forms for the pointed-tube family, and scans of plantri corpora.

pub mod dot;
pub mod families;
pub mod forman;
pub mod iso;
pub mod planar_code;
pub mod report;
pub mod resistance;
pub mod scan;
pub mod skeleton;
pub mod tube_spectral;

pub use families::FamilySpec;
pub use forman::{forman_profile, FormanProfile};
pub use resistance::{resistance_profile, LaplacianSystem, ResistanceProfile};

pub use skeleton::{Face, FlagCounts, Graph, RotationSystem, SkeletonDoc, TwoSkeleton};
