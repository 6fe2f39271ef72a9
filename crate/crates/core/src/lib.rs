pub mod charpoly;
pub mod cli;
pub mod error;
pub mod exact;
pub mod gloracle;
pub mod hooks;
pub mod n2ring;
pub mod partitions;
pub mod plethys;

pub use error::{Error, Result};
