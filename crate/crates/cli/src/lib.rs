//! Command-line front end for `sepmm-core`: model-definition files,
//! measurement and statistics reports, and the randomized verification
//! suites.

pub mod error;
pub mod file;
pub mod replay;
pub mod report;
pub mod resolve;

pub use error::{CliError, EXIT_INPUT_ERROR, EXIT_OK, EXIT_VERIFICATION_FAILED};
pub use file::ModelFile;
pub use report::Report;
pub use resolve::{load_model_file, resolve, Workspace};
