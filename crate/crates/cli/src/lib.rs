//! JSON interchange and the command pipeline behind the `moddata` binary.

pub mod bundle;
pub mod commands;
pub mod error;
pub mod json;
pub mod source;

pub use bundle::{AnalysisBundle, Section, Verdict};
pub use commands::Limits;
pub use error::{CliError, Result};
pub use json::{parse_datum, serialize_datum};
