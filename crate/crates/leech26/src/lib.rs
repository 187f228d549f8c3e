//! Exact computations in the Lorentzian Eisenstein Leech lattice `L = Λ⊕H ≅ 3E₈⊕H`:
//! its 26-node reflection diagram, height reduction certificates, the minimal-height scan
//! and the spider, deflation and Coxeter-order relations.

pub mod codes;
pub mod data;
pub mod diagram;
pub mod error;
pub mod isomorphism;
pub mod lattices;
pub mod reduction;
pub mod reflections;
pub mod relations;
pub mod rings;

pub use error::{Error, Result};
