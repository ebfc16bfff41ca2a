//! Test support shared by the nilspec crates: seeded generators whose
//! outputs have properties known by construction, and oracles that do not
//! call into the code under test.

pub mod complexes;
pub mod lie;
pub mod matrices;
pub mod roots;

pub use matrices::rng;
