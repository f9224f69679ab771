pub mod complex;
pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod io;
pub mod lattice;
pub mod polytope;
pub mod roots;
pub mod semigroup;
pub mod splitting;
pub mod verify;

pub use error::{Error, Result};
