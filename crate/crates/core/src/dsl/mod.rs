//! The `.ocwf` text format and DOT export.
//!
//! ```text
//! # a comment
//! ocnet chain {
//!   type d;
//!   place in : d init = 1;
//!   place out : d;
//!   trans a label "a";
//!   arc in -> a : 1;
//!   arc a -> out : 1;
//! }
//! ```
//!
//! Identifiers match `[A-Za-z_][A-Za-z0-9_']*`. Arc weights are positive
//! integers or `var`. The empty type `ε` only appears in generated files,
//! which start with the line `#!generated`.

use std::fmt;

use serde::Serialize;

mod dot;
mod parse;
mod write;

pub use dot::to_dot;
pub use parse::{parse, parse_file, parse_with_spans, Spans};
pub use write::serialize;

/// First line of files that may declare the empty type.
pub const GENERATED_PRAGMA: &str = "#!generated";

/// A region of the input; lines and columns are 1-based, columns count
/// characters, `end` is exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub file: Option<String>,
    pub start: Pos,
    pub end: Pos,
}

impl SourceSpan {
    pub fn contains(&self, other: &SourceSpan) -> bool {
        self.start.offset <= other.start.offset && other.end.offset <= self.end.offset
    }

    /// The input text covered by the span.
    pub fn slice<'a>(&self, text: &'a str) -> &'a str {
        &text[self.start.offset..self.end.offset]
    }

    pub(crate) fn join(&self, other: &SourceSpan) -> SourceSpan {
        SourceSpan {
            file: self.file.clone(),
            start: self.start,
            end: other.end,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.file.as_deref().unwrap_or("<input>"),
            self.start.line,
            self.start.column
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Syntax,
    UnknownType,
    UnknownNode,
    DuplicateId,
    ZeroWeight,
    ReservedType,
    InvalidArc,
    InvalidNet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub kind: ErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.span, self.message)
    }
}

impl std::error::Error for ParseError {}
