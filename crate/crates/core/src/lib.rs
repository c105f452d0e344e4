//! Topological classification of real principal bundles over real curves,
//! built from the shifted non-abelian cohomology of `ℤ/2ℤ` acting on complex
//! reductive groups.

pub mod census;
pub mod cli;
pub mod cohomology;
pub mod curve;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod sequence;
pub mod stabilizer;
pub mod tables;
pub mod types;
pub mod verify;

pub use cohomology::{
    canonical_matrix, enumerate_classes, normalize, sample_orbit, validate_cocycle, verify_discreteness, ClassLabel,
    Cocycle, CohomologyClass, DiscretenessReport, Normalized,
};
pub use error::{Error, Result};
pub use group::{
    center_real_classes, classify_central, make_group, CentralClass, CentralLabel, Family, GroupSpec, Structure,
};
