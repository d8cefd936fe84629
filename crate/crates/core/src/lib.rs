//! Quasi-static fracture of 2D solids with micropolar peridynamics on
//! non-unified horizons.

pub mod bond;
pub mod correction;
pub mod damage;
pub mod error;
pub mod horizon;
pub mod io;
pub mod material;
pub mod mesh;
pub mod model;
pub mod solver;
pub mod spatial;

pub use error::{Error, ErrorCategory, Result};
pub use horizon::{Bond, Segment};
pub use material::{Material, PlaneMode};
pub use mesh::{MaterialPoint, Mesh};
pub use model::{Model, ModelConfig};
