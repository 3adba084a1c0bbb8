//! Text formats and seeded generators.

mod format;
mod generators;

pub use format::*;
pub use generators::*;
