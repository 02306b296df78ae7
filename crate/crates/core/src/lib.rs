//! Exact Schur-multiplier cocycles attached to regular matrices over finite fields.

pub mod error;
pub mod cohom;
pub mod ffield;
pub mod grouporacle;
pub mod matalg;
pub mod schurmult;
pub mod util;
pub mod weilrep;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
