//! Checking whole source files.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::mode_theory::{ModeId, ModeTheory};
use crate::syntax::surface::{Decl, DeclKind, Span};
use crate::syntax::{Context, Term};

use super::{context_error, CheckError, Checker, ErrorCode, Global, GlobalKind, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclOutcome {
    pub name: String,
    pub span: Span,
    pub result: Result<(), CheckError>,
}

#[derive(Debug, Clone, Default)]
pub struct ProgramReport {
    /// One outcome per named declaration, in source order.
    pub outcomes: Vec<DeclOutcome>,
    pub signature: Signature,
}

impl ProgramReport {
    pub fn is_ok(&self) -> bool {
        self.outcomes.iter().all(|o| o.result.is_ok())
    }

    pub fn errors(&self) -> impl Iterator<Item = &CheckError> {
        self.outcomes.iter().filter_map(|o| o.result.as_ref().err())
    }

    /// Verdict per declaration name: `None` for success, else the error code.
    pub fn verdicts(&self) -> BTreeMap<String, Option<ErrorCode>> {
        self.outcomes
            .iter()
            .map(|o| (o.name.clone(), o.result.as_ref().err().map(|e| e.code)))
            .collect()
    }
}

fn mode_of(mt: &ModeTheory, name: &str, span: Span) -> Result<ModeId, CheckError> {
    mt.mode(name)
        .map_err(|e| CheckError::new(ErrorCode::UnknownModality, span, e.to_string()))
}

/// Check one declaration against a signature, producing its signature entry.
pub fn check_decl(mt: &ModeTheory, sig: &Signature, decl: &Decl) -> Result<Global, CheckError> {
    let ck = Checker::new(mt, sig);
    let span = decl.span;
    match &decl.kind {
        DeclKind::ModeTheory(_) => unreachable!("mode-theory directives are not checked"),
        DeclKind::TypeFormer { params, mode, .. } => {
            let mode = mode_of(mt, mode, span)?;
            let mut ctx = Context::empty(mode);
            let mut out: Vec<(String, _, Term)> = Vec::new();
            for p in params {
                let mu = match &p.mu {
                    Some(m) => ck.resolve(m, p.ty.span)?,
                    None => mt.identity(ctx.mode()),
                };
                let mark = ctx
                    .push_lock(mt, mu)
                    .map_err(|e| context_error(e, p.ty.span))?;
                let ty = ck.check_type(&mut ctx, &p.ty);
                ctx.pop_lock(mark);
                let ty = ty?;
                ctx.push_var(mt, &p.name, mu, ty.clone())
                    .map_err(|e| context_error(e, p.ty.span))?;
                out.push((p.name.clone(), mu, ty));
            }
            Ok(Global {
                mode,
                kind: GlobalKind::TypeFormer { params: out },
            })
        }
        DeclKind::Postulate { ty, mode, .. } => {
            let mode = mode_of(mt, mode, span)?;
            let ty = ck.check_type(&mut Context::empty(mode), ty)?;
            Ok(Global {
                mode,
                kind: GlobalKind::Postulate { ty },
            })
        }
        DeclKind::Def { ty, body, mode, .. } => {
            let mode = mode_of(mt, mode, span)?;
            let mut ctx = Context::empty(mode);
            let ty = ck.check_type(&mut ctx, ty)?;
            let body = ck.check(&mut ctx, body, &ty)?;
            Ok(Global {
                mode,
                kind: GlobalKind::Def { ty, body },
            })
        }
    }
}

/// Check every declaration. Declarations are processed in dependency order
/// (ties broken by name), so the verdicts do not depend on the order in
/// which declarations appear. A failed declaration is left out of the
/// signature. The mode theory must validate.
pub fn check_program(mt: &ModeTheory, decls: &[Decl]) -> ProgramReport {
    let named: Vec<(usize, &Decl)> = decls
        .iter()
        .enumerate()
        .filter(|(_, d)| d.name().is_some())
        .collect();

    let mut results: HashMap<usize, Result<(), CheckError>> = HashMap::new();
    let mut first: BTreeMap<&str, usize> = BTreeMap::new();
    for &(i, d) in &named {
        let name = d.name().unwrap();
        match first.get(name) {
            Some(_) => {
                results.insert(
                    i,
                    Err(CheckError::new(
                        ErrorCode::DuplicateName,
                        d.span,
                        format!("`{name}` is declared more than once"),
                    )),
                );
            }
            None => {
                first.insert(name, i);
            }
        }
    }

    // Dependencies among the distinct declared names.
    let deps: BTreeMap<&str, BTreeSet<String>> = first
        .iter()
        .map(|(name, &i)| {
            let mut fv: BTreeSet<String> = decls[i].free_names().into_iter().collect();
            fv.retain(|n| first.contains_key(n.as_str()) && n != name);
            (*name, fv)
        })
        .collect();

    let mut sig = Signature::new();
    let mut done: BTreeSet<&str> = BTreeSet::new();
    while done.len() < first.len() {
        let ready = first
            .keys()
            .find(|n| !done.contains(*n) && deps[*n].iter().all(|d| done.contains(d.as_str())))
            .or_else(|| first.keys().find(|n| !done.contains(*n)))
            .copied()
            .unwrap();
        let i = first[ready];
        let result = check_decl(mt, &sig, &decls[i]).map(|g| sig.insert(ready, g));
        results.insert(i, result);
        done.insert(ready);
    }

    let outcomes = named
        .iter()
        .map(|&(i, d)| DeclOutcome {
            name: d.name().unwrap().to_owned(),
            span: d.span,
            result: results.remove(&i).unwrap(),
        })
        .collect();
    ProgramReport {
        outcomes,
        signature: sig,
    }
}

/// Expected verdicts written in a source file. A line `-- expect: <Code>`
/// marks the next declaration as failing with that code; unmarked
/// declarations are expected to check.
pub fn expected_verdicts(
    src: &str,
    decls: &[Decl],
) -> Result<BTreeMap<String, Option<ErrorCode>>, String> {
    let lines: Vec<&str> = src.lines().collect();
    let mut out = BTreeMap::new();
    let mut prev_line = 0;
    for d in decls {
        let line = d.span.line as usize;
        let mut code = None;
        for text in lines.iter().take(line.saturating_sub(1)).skip(prev_line) {
            if let Some(rest) = text.trim().strip_prefix("-- expect:") {
                let rest = rest.trim();
                code = Some(
                    ErrorCode::from_name(rest).ok_or_else(|| format!("unknown error code `{rest}`"))?,
                );
            }
        }
        prev_line = line;
        if let Some(name) = d.name() {
            if out.contains_key(name) && code.is_none() {
                continue;
            }
            out.insert(name.to_owned(), code);
        }
    }
    Ok(out)
}
