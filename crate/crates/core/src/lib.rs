//! Exact computations in quadratic quantized matrix algebras `M_q^℘(n)`.

pub mod detcenter;
pub mod error;
pub mod families;
pub mod linalg;
pub mod ncengine;
pub mod poissonleaf;
pub mod qcoeff;
pub mod report;
pub mod rootdata;
pub mod semidirect;
pub mod skewform;
pub mod suite;
pub mod verma;

pub use error::{QmaError, Result};
