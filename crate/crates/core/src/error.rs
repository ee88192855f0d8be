use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the toolkit reports. [`Error::code`] gives a stable name
/// for each variant, used in CLI reports and JSON error output.
#[derive(Debug, Error)]
pub enum Error {
    #[error("table has no rows")]
    EmptyTable,
    #[error("row {row} has no cells")]
    EmptyRow { row: usize },
    #[error("highlight ({row}, {col}) does not index a cell")]
    HighlightOutOfBounds { row: usize, col: usize },

    #[error("malformed triple at index {index}: {reason}")]
    MalformedTriple { index: usize, reason: String },
    #[error("triple set is empty")]
    EmptyTripleSet,

    #[error("meaning representation syntax error at byte {offset}: {message}")]
    MrSyntax { offset: usize, message: String },

    #[error("table has no highlighted cells")]
    NoHighlights,
    #[error("table is not rectangular: row {row} has {found} cells, expected {expected}")]
    NotRectangular {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("column {col} has inconsistent column headers at row {row}")]
    InconsistentColumnHeaders { row: usize, col: usize },
    #[error("cell ({row}, {col}) has no column header")]
    MissingHeader { row: usize, col: usize },
    #[error("cell ({row}, {col}) has more than one column header")]
    MultipleHeaders { row: usize, col: usize },

    #[error("unbalanced tag {tag} at token {offset}")]
    UnbalancedTag { offset: usize, tag: String },
    #[error("unexpected token {token:?} at token {offset}")]
    UnexpectedToken { offset: usize, token: String },
    #[error("document is empty")]
    EmptyDocument,

    #[error("scheme {scheme} with orientation {orientation} cannot be applied to {form} records")]
    IncompatibleScheme {
        scheme: String,
        orientation: String,
        form: String,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: invalid JSON: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: schema error in {field}: {message}")]
    Schema {
        line: usize,
        field: String,
        message: String,
    },
    #[error("line {line}: duplicate record id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error("round trip failed: {detail}")]
    RoundTrip { detail: String },

    #[error("record {id}: {source}")]
    Record {
        id: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptyTable | Error::EmptyRow { .. } => "EmptyTable",
            Error::HighlightOutOfBounds { .. } => "HighlightOutOfBounds",
            Error::MalformedTriple { .. } => "MalformedTriple",
            Error::EmptyTripleSet => "EmptyTripleSet",
            Error::MrSyntax { .. } => "MrSyntaxError",
            Error::NoHighlights => "NoHighlights",
            Error::NotRectangular { .. } => "NotRectangular",
            Error::InconsistentColumnHeaders { .. } => "InconsistentColumnHeaders",
            Error::MissingHeader { .. } => "MissingHeader",
            Error::MultipleHeaders { .. } => "MultipleHeaders",
            Error::UnbalancedTag { .. } => "UnbalancedTag",
            Error::UnexpectedToken { .. } => "UnexpectedToken",
            Error::EmptyDocument => "EmptyDocument",
            Error::IncompatibleScheme { .. } => "IncompatibleScheme",
            Error::Io(_) => "IoError",
            Error::Json { .. } => "JsonError",
            Error::Schema { .. } => "SchemaError",
            Error::DuplicateId { .. } => "DuplicateId",
            Error::RoundTrip { .. } => "RoundTripError",
            Error::Record { source, .. } => source.code(),
        }
    }

    /// Wraps an adapter or serializer error with the id of the record that
    /// produced it.
    pub fn in_record(self, id: impl Into<String>) -> Error {
        Error::Record {
            id: id.into(),
            source: Box::new(self),
        }
    }

    /// Strips any record wrapper.
    pub fn root(&self) -> &Error {
        match self {
            Error::Record { source, .. } => source.root(),
            other => other,
        }
    }
}
