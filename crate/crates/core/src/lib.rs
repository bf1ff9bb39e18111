pub mod complex;
pub mod error;
pub mod face;
pub mod generators;
pub mod homology;
pub mod io;
pub mod iso;
pub mod linalg;
pub mod macaulay;
pub mod retriangulate;
pub mod rigidity;
pub mod vectors;
pub mod verify;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use face::{Face, Vertex};
pub use homology::Field;
