pub mod cli;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod linearization;
pub mod oracle;
pub mod solver;
pub mod structure;

pub use error::{PencilError, Result};
