pub mod actegory;
pub mod basechange;
pub mod carrier;
pub mod commalg;
pub mod error;
pub mod fincore;
pub mod gluing;
pub mod report;
pub mod scalars;
pub mod search;
pub mod suite;
pub mod topology;

pub use error::{Error, Result};
