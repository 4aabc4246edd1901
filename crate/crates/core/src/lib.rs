pub mod circle_theta;
pub mod cli;
pub mod cover_quant;
pub mod error;
pub mod intertwine;
pub mod linalg;
pub mod parastat_equiv;
pub mod permgroup;
pub mod tensor_rep;

pub use error::{Error, Result};
