//! Gate-level circuits for quantum Hartley, cosine and sine transforms,
//! with a dense simulator and classical reference matrices to check them.

pub mod cli;
pub mod error;
pub mod gadgets;
pub mod hartley;
pub mod oracle;
pub mod qft;
pub mod simcore;
pub mod trig;

pub use error::{QrtError, Result};
