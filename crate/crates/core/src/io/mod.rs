//! JSON documents, DOT export, bundles of related structures, and the surreal
//! expression language.

mod bundle;
mod document;
mod dot;
mod expr;

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::de::DeserializeOwned;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::hierarchy::HierarchyError;
use crate::sigma::SigmaError;

pub use bundle::{chain_bundle, pushout_bundle, Bundle, BundleMember};
pub use document::{
    from_document, parse_document, render_document, stage_document, to_document, BoundEntry,
    ExtremalDocument, Loaded, StructureDocument, TEntry, FORMAT,
};
pub use dot::to_dot;
pub use expr::{
    eval_expr, parse_expr, render_expr, BinOp, CmpOp, EvalError, Expr, ParseError, Value,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("invariant violated ({invariant}): {witness}")]
    InvariantViolation { invariant: String, witness: String },
    #[error("{path}: {message}")]
    File { path: String, message: String },
    #[error(transparent)]
    Sigma(#[from] SigmaError),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
}

/// Path segments of a deserialization error, as a JSON pointer.
fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    path.iter()
        .filter_map(|seg| match seg {
            Segment::Seq { index } => Some(format!("/{index}")),
            Segment::Map { key } => Some(format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => Some(format!("/{variant}")),
            Segment::Unknown => None,
        })
        .collect()
}

pub(crate) fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| IoError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    serde_path_to_error::deserialize(value).map_err(|e| IoError::Schema {
        pointer: pointer_of(e.path()),
        message: e.into_inner().to_string(),
    })
}

/// Lowercase hex SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

/// Writes `text` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), IoError> {
    let file_err = |e: std::io::Error| IoError::File {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(file_err)?;
    tmp.write_all(text.as_bytes()).map_err(file_err)?;
    tmp.persist(path).map_err(|e| file_err(e.error))?;
    Ok(())
}

pub fn load_document(path: &Path) -> Result<StructureDocument, IoError> {
    parse_document(&read_text(path)?)
}

pub fn save_document(path: &Path, doc: &StructureDocument) -> Result<(), IoError> {
    write_atomic(path, &render_document(doc))
}

#[cfg(test)]
mod tests;
