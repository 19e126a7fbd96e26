//! Elliptic normal curves, the discriminant of their hyperplane sections,
//! Heisenberg symmetry, divisor-class classification of curves in `E^n`,
//! and exact Jordan-constant bounds.

pub mod classifier;
pub mod cli;
pub mod config;
pub mod discriminant;
pub mod error;
pub mod heisenberg;
pub mod jordan;
pub mod linalg;
pub mod projective;
pub mod report;
pub mod rootfind;
pub mod sextic;
pub mod theta;
pub mod torus;

pub use error::{Error, Result};
pub use projective::{Hyperplane, ProjPoint};
pub use theta::ThetaBasis;
pub use torus::{DivisorClass, TorusParam, TorusPoint};
