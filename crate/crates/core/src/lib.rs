//! Spacelike spin measurements on an entangled pair, with pluggable
//! state-vector reduction hypersurfaces.

pub mod collapse;
pub mod diagram;
pub mod error;
pub mod kinematics;
pub mod minkowski;
pub mod ordering;
pub mod quantum;
pub mod rng;
pub mod scenario;

pub use error::{Error, Result};
