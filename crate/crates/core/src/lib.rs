pub mod asc;
pub mod catalog;
pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fvect;
pub mod hierarchy;
pub mod measure;
pub mod pipeline;
pub mod scalar;
pub mod sheaf;
pub mod typesys;
pub mod vectorize;

pub use error::{Error, Result};
