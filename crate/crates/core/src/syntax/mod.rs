//! Core syntax: terms, types, contexts with locks, and the admissible
//! operations on them (weakening, key transport, substitution).
//!
//! Variables are de Bruijn *levels* counting variable entries only. Every
//! variable occurrence carries its key explicitly. Substitution is a
//! meta-operation; there is no explicit substitution syntax.

mod ops;
mod parse;
mod print;
pub mod surface;

#[cfg(test)]
mod tests;

use thiserror::Error;

use crate::mode_theory::{CellId, ModeId, ModeTheory, MorId};

pub use ops::{apply_key, instantiate, lock_suffixes, locks_of, shift};
pub use parse::{parse_cell_key, parse_expr, parse_file, ParseError};
pub use print::show;

/// Terms and types share one syntax tree. The judgement decides which
/// constructors are admissible: `Pi`, `FMod`, `UMod` and `TConst` are types,
/// the rest are terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var {
        level: usize,
        key: CellId,
    },
    Const(String),
    Lam {
        name: String,
        body: Box<Term>,
    },
    /// The argument lives behind `lock`, the annotation of the function's domain.
    App {
        fun: Box<Term>,
        lock: MorId,
        arg: Box<Term>,
    },
    ModIntro {
        mu: MorId,
        body: Box<Term>,
    },
    /// `let[frame, mu] mod x = scrutinee in body motive y. motive`
    LetMod {
        frame: MorId,
        mu: MorId,
        x: String,
        scrutinee: Box<Term>,
        body: Box<Term>,
        y: String,
        motive: Box<Term>,
    },
    Shut {
        mu: MorId,
        body: Box<Term>,
    },
    Open {
        mu: MorId,
        body: Box<Term>,
    },
    Pi {
        name: String,
        mu: MorId,
        dom: Box<Term>,
        cod: Box<Term>,
    },
    FMod {
        mu: MorId,
        ty: Box<Term>,
    },
    UMod {
        mu: MorId,
        ty: Box<Term>,
    },
    /// Applied type former; each argument lives behind its parameter's lock.
    TConst {
        name: String,
        args: Vec<(MorId, Term)>,
    },
}

pub type TypeExpr = Term;

impl Term {
    pub fn var(level: usize, key: CellId) -> Term {
        Term::Var { level, key }
    }

    pub fn app(fun: Term, lock: MorId, arg: Term) -> Term {
        Term::App {
            fun: Box::new(fun),
            lock,
            arg: Box::new(arg),
        }
    }

    pub fn lam(name: impl Into<String>, body: Term) -> Term {
        Term::Lam {
            name: name.into(),
            body: Box::new(body),
        }
    }

    pub fn mod_intro(mu: MorId, body: Term) -> Term {
        Term::ModIntro {
            mu,
            body: Box::new(body),
        }
    }

    pub fn shut(mu: MorId, body: Term) -> Term {
        Term::Shut {
            mu,
            body: Box::new(body),
        }
    }

    pub fn open(mu: MorId, body: Term) -> Term {
        Term::Open {
            mu,
            body: Box::new(body),
        }
    }

    pub fn pi(name: impl Into<String>, mu: MorId, dom: Term, cod: Term) -> Term {
        Term::Pi {
            name: name.into(),
            mu,
            dom: Box::new(dom),
            cod: Box::new(cod),
        }
    }

    pub fn fmod(mu: MorId, ty: Term) -> Term {
        Term::FMod {
            mu,
            ty: Box::new(ty),
        }
    }

    pub fn umod(mu: MorId, ty: Term) -> Term {
        Term::UMod {
            mu,
            ty: Box::new(ty),
        }
    }

    pub fn tconst(name: impl Into<String>) -> Term {
        Term::TConst {
            name: name.into(),
            args: Vec::new(),
        }
    }

    pub fn is_type_former(&self) -> bool {
        matches!(
            self,
            Term::Pi { .. } | Term::FMod { .. } | Term::UMod { .. } | Term::TConst { .. }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Lock(MorId),
    /// `name :^ann ty`, where `ty` lives in the preceding entries locked by `ann`.
    Var { name: String, ann: MorId, ty: Term },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("lock `{lock}` ends at mode `{lock_target}` but the context is at mode `{mode}`")]
    ModeMismatch {
        lock: String,
        lock_target: String,
        mode: String,
    },
    #[error("annotation `{0}` is not tangible")]
    NotTangible(String),
}

/// A context kept in lock-normal form: no identity locks and no two
/// adjacent locks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    base: ModeId,
    mode: ModeId,
    entries: Vec<Entry>,
    var_positions: Vec<usize>,
}

/// Undo information for [`Context::push_lock`].
#[derive(Debug, Clone, Copy)]
pub struct LockMark {
    mode: ModeId,
    undo: LockUndo,
}

#[derive(Debug, Clone, Copy)]
enum LockUndo {
    Nothing,
    Pushed,
    Merged(MorId),
    Removed(MorId),
}

impl Context {
    pub fn empty(mode: ModeId) -> Context {
        Context {
            base: mode,
            mode,
            entries: Vec::new(),
            var_positions: Vec::new(),
        }
    }

    pub fn mode(&self) -> ModeId {
        self.mode
    }

    pub fn base(&self) -> ModeId {
        self.base
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn var_count(&self) -> usize {
        self.var_positions.len()
    }

    /// Lock the context with `mu : p -> mode`, normalizing eagerly.
    pub fn push_lock(&mut self, mt: &ModeTheory, mu: MorId) -> Result<LockMark, ContextError> {
        if mt.target(mu) != self.mode {
            return Err(ContextError::ModeMismatch {
                lock: mt.mor_name(mu).to_owned(),
                lock_target: mt.mode_name(mt.target(mu)).to_owned(),
                mode: mt.mode_name(self.mode).to_owned(),
            });
        }
        let mode = self.mode;
        self.mode = mt.source(mu);
        let undo = if mt.is_identity(mu) {
            LockUndo::Nothing
        } else if let Some(Entry::Lock(prev)) = self.entries.last().cloned() {
            let merged = mt
                .compose(prev, mu)
                .expect("composition table of a validated mode theory is total");
            if mt.is_identity(merged) {
                self.entries.pop();
                LockUndo::Removed(prev)
            } else {
                *self.entries.last_mut().unwrap() = Entry::Lock(merged);
                LockUndo::Merged(prev)
            }
        } else {
            self.entries.push(Entry::Lock(mu));
            LockUndo::Pushed
        };
        Ok(LockMark { mode, undo })
    }

    pub fn pop_lock(&mut self, mark: LockMark) {
        self.mode = mark.mode;
        match mark.undo {
            LockUndo::Nothing => {}
            LockUndo::Pushed => {
                self.entries.pop();
            }
            LockUndo::Merged(prev) => *self.entries.last_mut().unwrap() = Entry::Lock(prev),
            LockUndo::Removed(prev) => self.entries.push(Entry::Lock(prev)),
        }
    }

    /// Non-destructive lock, as a fresh context.
    pub fn locked(&self, mt: &ModeTheory, mu: MorId) -> Result<Context, ContextError> {
        let mut c = self.clone();
        c.push_lock(mt, mu)?;
        Ok(c)
    }

    pub fn with_lock<R, E: From<ContextError>>(
        &mut self,
        mt: &ModeTheory,
        mu: MorId,
        f: impl FnOnce(&mut Context) -> Result<R, E>,
    ) -> Result<R, E> {
        let mark = self.push_lock(mt, mu)?;
        let r = f(self);
        self.pop_lock(mark);
        r
    }

    /// Extend with `name :^ann ty`; `ty` must live in this context locked by `ann`.
    pub fn push_var(
        &mut self,
        mt: &ModeTheory,
        name: impl Into<String>,
        ann: MorId,
        ty: Term,
    ) -> Result<(), ContextError> {
        if mt.target(ann) != self.mode {
            return Err(ContextError::ModeMismatch {
                lock: mt.mor_name(ann).to_owned(),
                lock_target: mt.mode_name(mt.target(ann)).to_owned(),
                mode: mt.mode_name(self.mode).to_owned(),
            });
        }
        if !mt.is_tangible(ann) {
            return Err(ContextError::NotTangible(mt.mor_name(ann).to_owned()));
        }
        self.var_positions.push(self.entries.len());
        self.entries.push(Entry::Var {
            name: name.into(),
            ann,
            ty,
        });
        Ok(())
    }

    pub fn pop_var(&mut self) {
        let pos = self.var_positions.pop().expect("no variable to pop");
        debug_assert_eq!(pos + 1, self.entries.len());
        self.entries.truncate(pos);
    }

    pub fn with_var<R, E: From<ContextError>>(
        &mut self,
        mt: &ModeTheory,
        name: impl Into<String>,
        ann: MorId,
        ty: Term,
        f: impl FnOnce(&mut Context) -> Result<R, E>,
    ) -> Result<R, E> {
        self.push_var(mt, name, ann, ty)?;
        let r = f(self);
        self.pop_var();
        r
    }

    /// `(name, annotation, type)` of the variable at `level`.
    pub fn var(&self, level: usize) -> (&str, MorId, &Term) {
        match &self.entries[self.var_positions[level]] {
            Entry::Var { name, ann, ty } => (name, *ann, ty),
            Entry::Lock(_) => unreachable!("variable positions index variable entries"),
        }
    }

    /// Innermost variable with the given name.
    pub fn lookup(&self, name: &str) -> Option<usize> {
        (0..self.var_count()).rev().find(|&l| self.var(l).0 == name)
    }

    /// Entries strictly before the variable at `level`.
    pub fn prefix(&self, level: usize) -> &[Entry] {
        &self.entries[..self.var_positions[level]]
    }

    /// Composite of the locks after the variable at `level`.
    pub fn locks_after(&self, mt: &ModeTheory, level: usize) -> MorId {
        locks_of(mt, &self.entries[self.var_positions[level] + 1..], self.mode)
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.var_count())
            .map(|l| self.var(l).0.to_owned())
            .collect()
    }
}
