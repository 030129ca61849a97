pub mod algebra;
pub mod arithmetic;
pub mod curves;
pub mod error;
pub mod localres;
pub mod scenario;
pub mod suite;
pub mod surface;
pub mod vectorfields;

pub use error::{Error, Result};
