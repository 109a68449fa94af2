pub mod alexander;
pub mod certify;
pub mod enumeration;
pub mod error;
pub mod knots;
pub mod presentations;
pub mod surgery;
pub mod symplectic;

pub use alexander::*;
pub use certify::*;
pub use enumeration::*;
pub use error::{Error, Result};
pub use knots::*;
pub use presentations::*;
pub use surgery::*;
pub use symplectic::*;
