pub mod analysis;
pub mod cli;
pub mod error;
pub mod groebner;
pub mod ideal;
pub mod immersion;
pub mod lie;
pub mod minors;
pub mod module;
pub mod poly;
pub mod report;
pub mod sampling;
pub mod sysfile;

pub use error::{Error, Result};
