//! Exact computations with two-weight codes and two-character multisets in
//! the projective geometry PG(k−1, q).
//!
//! All arithmetic is integral or rational; nothing is approximated.
//!
//! ```
//! use std::sync::Arc;
//! use twoweight::{canonical_from_pointset, DualPointSet, Geometry};
//!
//! let geo = Arc::new(Geometry::new(2, 3).unwrap());
//! let d = DualPointSet::from_points(geo, &[0]).unwrap();
//! let (_, summary) = canonical_from_pointset(&d).unwrap();
//! // one hyperplane: the canonical multiset is that line itself
//! assert_eq!((summary.n_prime, summary.s0, summary.t0), (3, 3, 1));
//! ```

pub mod classify;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod gf;
pub mod io;
pub mod multiset;
pub mod par;
pub mod params;
pub mod twochar;

pub use classify::{classify_parameters, enumerate_orbits, orbit_records, ClassifyOptions, Orbit, OrbitRecord};
pub use constructions::{ConstructionKind, ConstructionRecipe};
pub use error::{Error, Result};
pub use geometry::Geometry;
pub use multiset::{HyperplaneSpectrum, PointMultiset};
pub use par::Exec;
pub use params::{enumerate_candidates, ExclusionLedger, ParamRow};
pub use twochar::{canonical_from_pointset, geometric_dual, CanonicalSummary, DualPointSet};

/// Versions of the machine-readable output schemas.
pub const TABLE_SCHEMA_VERSION: u32 = 1;
pub const SUMMARY_SCHEMA_VERSION: u32 = 1;
