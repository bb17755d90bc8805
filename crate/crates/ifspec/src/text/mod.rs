//! Textual form of interface models.
//!
//! The `.ifm` language is a table-shaped DSL: every (state, stimulus) cell
//! is written out explicitly, including `illegal` ones, so completeness is
//! visible in the source. Grammar:
//!
//! ```text
//! model     := "interface" IDENT "{" "initial" IDENT ";" alphabet state+ "}"
//! alphabet  := ("in" IDENT params? ";" | "out" IDENT ";" | "reply" IDENT ";")+
//! params    := "(" IDENT ":" ("int"|"string") ("," IDENT ":" ("int"|"string"))* ")"
//! state     := "state" IDENT "{" rule+ "}"
//! rule      := "on" IDENT ("illegal" | "->" IDENT ("notify" IDENT ("," IDENT)*)? "reply" IDENT) ";"
//! ```
//!
//! `#` starts a comment running to end of line; identifiers match
//! `[A-Za-z_][A-Za-z0-9_]*`; keywords are reserved. [`parse`] never panics
//! on arbitrary input, [`serialize`] round-trips every model expressible in
//! the grammar, and [`render_dot`] draws the state diagram.

mod dot;
mod lexer;
mod parser;
mod printer;

pub use dot::render_dot;
pub use parser::parse;
pub use printer::serialize;

use std::fmt;

/// Position of a token in `.ifm` source, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl SourceSpan {
    pub(crate) fn new(line: u32, column: u32, length: u32) -> Self {
        SourceSpan {
            line,
            column,
            length: length.max(1),
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Classification of a parse failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorCode {
    Syntax,
    DuplicateDeclaration,
    UnknownSort,
}

impl fmt::Display for ParseErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorCode::Syntax => "syntax",
            ParseErrorCode::DuplicateDeclaration => "duplicate-declaration",
            ParseErrorCode::UnknownSort => "unknown-sort",
        };
        f.write_str(s)
    }
}

/// One parse diagnostic with its source location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub code: ParseErrorCode,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error {} {}: {}", self.code, self.span, self.message)
    }
}

impl std::error::Error for ParseError {}
