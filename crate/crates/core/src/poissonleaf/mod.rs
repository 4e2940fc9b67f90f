//! Semiclassical Poisson structures on `M(n, ℂ)`: brackets from the
//! root-of-unity limit, minor ideals, leaf dimensions and associated varieties.

mod leaves;
mod minors;
mod mult;
mod oracle;
mod poly;
mod variety;

pub use leaves::*;
pub use minors::*;
pub use mult::*;
pub use oracle::*;
pub use poly::PoissonPoly;
pub use variety::*;
