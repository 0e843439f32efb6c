pub mod error;
pub mod fp;
pub mod green;
pub mod numerics;
pub mod sap;
pub mod store;

pub use error::{Error, Result};
