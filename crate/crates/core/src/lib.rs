//! Distances, line elements and geodesics on the qubit Bloch ball.

pub mod analysis;
pub mod cli;
pub mod distances;
pub mod error;
pub mod export;
pub mod geodesics;
pub mod linalg;
pub mod metrics;
pub mod rotations;
pub mod states;
pub mod verify;

pub use error::{GeometryError, Result};
