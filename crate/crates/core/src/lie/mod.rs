//! Exact root-system and alcove data.

mod data;
mod face;
mod lattice;
mod types;
mod weyl;

pub use data::{LieData, LieDataDocument, Root, WEYL_ENUMERATION_LIMIT};
pub use face::{FaceData, FaceIndex};
pub use lattice::{CartanPoint, RatWeight, Weight};
pub use types::{LieType, Series, MAX_RANK};
pub use weyl::{WeylElement, WeylGroup};

/// Convenience constructor for tests and examples: panics on a bad name.
pub fn lie(name: &str) -> LieData {
    LieData::new(name.parse().expect("valid Lie type"))
}
