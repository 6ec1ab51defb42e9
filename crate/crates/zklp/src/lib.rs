//! Location-to-hexagonal-cell circuits and their plain-arithmetic
//! references: the trig-free map from a private (latitude, longitude) to a
//! public hexagonal grid cell, the ground-truth pipeline it is tested
//! against, great-circle proximity helpers, and the generators for the
//! differential test corpora.

pub mod circuit;
pub mod corpus;
pub mod faces;
pub mod geo;
pub mod ijk;
pub mod native;
pub mod pipeline;
pub mod reference;
pub mod suite;
pub mod vectors;

pub use circuit::{build_circuit, count_constraints, prove_cell, ZklpRun};
pub use geo::{haversine, GeoPoint, EARTH_RADIUS_KM};
pub use ijk::{CoordIjk, FaceIjk};
pub use native::NativeFloat;
pub use pipeline::{prepare_witness, run_plain, PlainCell, ZklpWitness};
