pub mod algebra;
pub mod characters;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod euler;
pub mod lfun;
pub mod moments;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
