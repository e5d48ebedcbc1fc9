//! Text formats, reports, the random instance generator and the property suite.

pub mod format;
pub mod generate;
pub mod report;
pub mod selfcheck;

pub use format::{
    instance_digest, instance_text, parse_category, parse_functor, serialize_category,
    serialize_functor, CategoryDoc, FormatError,
};
pub use generate::{generate_random, relabel_endofunctor, GenerateError};
pub use report::{invariants_report, InvariantsReport, ReportDoc};
pub use selfcheck::{selfcheck, SelfcheckConfig, SelfcheckSummary};
