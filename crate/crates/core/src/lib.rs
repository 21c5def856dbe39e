pub mod bernoulli;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod finite_field;
pub mod gauss;
pub mod qadic;
pub mod residue;
pub mod scan;
pub mod stickelberger;

pub use error::{Error, Result};
