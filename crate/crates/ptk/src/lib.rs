pub mod cli;
pub mod error;
pub mod families;
pub mod json;
pub mod norms;
pub mod plegma;
pub mod ramsey;
pub mod setcore;
pub mod spreading;

pub use error::{PtkError, Result};
