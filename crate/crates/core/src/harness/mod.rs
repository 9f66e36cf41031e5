//! Corpus ingestion, per-entry removal reports, random corpus generation and
//! the invariant suites.

pub mod corpus;
pub mod generate;
pub mod report;
pub mod verify;

use thiserror::Error;

pub use corpus::{emit_corpus, load_corpus, parse_corpus, CorpusEntry};
pub use generate::generate_corpus;
pub use report::{emit_report, run_corpus, run_entry, EntryOutcome, Format, RemovalReport};
pub use verify::{verify_suites, SuiteResult, VerifyConfig, VerifySummary};

/// Environment variable that overrides the default order cap.
pub const CAP_ENV: &str = "ADDBASIS_CAP";
pub const DEFAULT_WINDOW: u64 = 512;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },

    #[error("entry {entry:?}, field {field}: {message}")]
    Validation {
        entry: String,
        field: &'static str,
        message: String,
    },

    #[error("unknown format {0:?} (expected csv, md or json)")]
    UnknownFormat(String),
}
