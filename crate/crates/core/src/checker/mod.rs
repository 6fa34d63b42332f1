//! Bidirectional elaboration of surface syntax into core terms, and the
//! definitional-equality engine.
//!
//! The mode theory handed to a [`Checker`] must already validate; table
//! lookups on well-typed input are then total.

mod conv;
mod elab;
mod program;

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::mode_theory::{ModeId, ModeTheory, MorId};
use crate::syntax::surface::Span;
use crate::syntax::{ContextError, Term};

pub use conv::Mismatch;
pub use program::{check_decl, check_program, expected_verdicts, DeclOutcome, ProgramReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ErrorCode {
    NotSharp,
    NotSinister,
    NotTransparent,
    NotTangible,
    KeyTypeMismatch,
    ModeMismatch,
    UnknownConstant,
    UnknownModality,
    ExpectedPi,
    ExpectedF,
    ExpectedU,
    ExpectedType,
    ArityMismatch,
    ConversionFailure,
    CannotInfer,
    DuplicateName,
}

impl ErrorCode {
    pub const ALL: [ErrorCode; 16] = [
        ErrorCode::NotSharp,
        ErrorCode::NotSinister,
        ErrorCode::NotTransparent,
        ErrorCode::NotTangible,
        ErrorCode::KeyTypeMismatch,
        ErrorCode::ModeMismatch,
        ErrorCode::UnknownConstant,
        ErrorCode::UnknownModality,
        ErrorCode::ExpectedPi,
        ErrorCode::ExpectedF,
        ErrorCode::ExpectedU,
        ErrorCode::ExpectedType,
        ErrorCode::ArityMismatch,
        ErrorCode::ConversionFailure,
        ErrorCode::CannotInfer,
        ErrorCode::DuplicateName,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorCode::NotSharp => "NotSharp",
            ErrorCode::NotSinister => "NotSinister",
            ErrorCode::NotTransparent => "NotTransparent",
            ErrorCode::NotTangible => "NotTangible",
            ErrorCode::KeyTypeMismatch => "KeyTypeMismatch",
            ErrorCode::ModeMismatch => "ModeMismatch",
            ErrorCode::UnknownConstant => "UnknownConstant",
            ErrorCode::UnknownModality => "UnknownModality",
            ErrorCode::ExpectedPi => "ExpectedPi",
            ErrorCode::ExpectedF => "ExpectedF",
            ErrorCode::ExpectedU => "ExpectedU",
            ErrorCode::ExpectedType => "ExpectedType",
            ErrorCode::ArityMismatch => "ArityMismatch",
            ErrorCode::ConversionFailure => "ConversionFailure",
            ErrorCode::CannotInfer => "CannotInfer",
            ErrorCode::DuplicateName => "DuplicateName",
        }
    }

    pub fn from_name(s: &str) -> Option<ErrorCode> {
        ErrorCode::ALL.into_iter().find(|c| c.name() == s)
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{code} @ {span}: {message}")]
pub struct CheckError {
    pub code: ErrorCode,
    pub span: Span,
    pub message: String,
    /// Path to the failing comparison, outermost first (conversion failures only).
    pub trace: Vec<String>,
}

impl CheckError {
    pub fn new(code: ErrorCode, span: Span, message: impl Into<String>) -> CheckError {
        CheckError {
            code,
            span,
            message: message.into(),
            trace: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlobalKind {
    /// Parameters `(name, annotation, type)`; each type lives in the earlier
    /// parameters locked by its annotation.
    TypeFormer { params: Vec<(String, MorId, Term)> },
    Postulate { ty: Term },
    Def { ty: Term, body: Term },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Global {
    pub mode: ModeId,
    pub kind: GlobalKind,
}

#[derive(Debug, Clone, Default)]
pub struct Signature {
    globals: HashMap<String, Global>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn get(&self, name: &str) -> Option<&Global> {
        self.globals.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, g: Global) {
        self.globals.insert(name.into(), g);
    }

    pub fn contains(&self, name: &str) -> bool {
        self.globals.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.globals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.globals.is_empty()
    }
}

pub struct Checker<'a> {
    pub mt: &'a ModeTheory,
    pub sig: &'a Signature,
}

impl<'a> Checker<'a> {
    pub fn new(mt: &'a ModeTheory, sig: &'a Signature) -> Checker<'a> {
        Checker { mt, sig }
    }
}

fn context_error(e: ContextError, span: Span) -> CheckError {
    match e {
        ContextError::ModeMismatch { .. } => CheckError::new(ErrorCode::ModeMismatch, span, e.to_string()),
        ContextError::NotTangible(_) => CheckError::new(ErrorCode::NotTangible, span, e.to_string()),
    }
}
