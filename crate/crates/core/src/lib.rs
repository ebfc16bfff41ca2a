//! Exact computations around expanding maps on nilmanifolds: spectral
//! expansion tests, Chevalley-Eilenberg cohomology of nilpotent Lie algebras
//! with induced automorphisms, and Betti-number obstructions for attractor
//! pairs.

pub mod catalogue;
pub mod complex;
pub mod format;
pub mod lie;
pub mod linalg;
pub mod multilinear;
pub mod obstruction;
pub mod spectra;
