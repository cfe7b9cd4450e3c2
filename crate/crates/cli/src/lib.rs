//! Text formats, reports and commands on top of `brauer-core`.

pub mod error;
pub mod input;
pub mod report;
pub mod run;
pub mod spec;

pub use error::CliError;
pub use input::{parse_input, InputDocument};
pub use report::{ReportDocument, Status};
pub use run::{run_brauer, run_cohomology, Outcome, RunOptions};
