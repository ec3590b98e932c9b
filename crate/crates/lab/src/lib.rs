//! Data files, suite runner and command-line plumbing around `bidegree-core`.

pub mod checks;
pub mod polyfile;
pub mod suite;

pub use polyfile::{PolyFile, PolyFileError};
pub use suite::{run_suite, Report, RunOptions, SuiteConfig};
