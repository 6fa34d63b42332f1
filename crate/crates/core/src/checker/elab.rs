//! Elaboration: checking surface expressions and producing core terms.

use crate::mode_theory::{CellExpr, ModeError, MorId};
use crate::syntax::surface::{Expr, ExprKind, Span};
use crate::syntax::{shift, Context, Term};

use super::{context_error, CheckError, Checker, ErrorCode, GlobalKind};

type EResult<T> = Result<T, CheckError>;

fn err<T>(code: ErrorCode, span: Span, msg: impl Into<String>) -> EResult<T> {
    Err(CheckError::new(code, span, msg))
}

impl Checker<'_> {
    pub(super) fn resolve(&self, name: &str, span: Span) -> EResult<MorId> {
        self.mt
            .mor(name)
            .map_err(|e| CheckError::new(ErrorCode::UnknownModality, span, e.to_string()))
    }

    fn with_lock<R>(
        &self,
        ctx: &mut Context,
        mu: MorId,
        span: Span,
        f: impl FnOnce(&mut Context) -> EResult<R>,
    ) -> EResult<R> {
        let mark = ctx
            .push_lock(self.mt, mu)
            .map_err(|e| context_error(e, span))?;
        let r = f(ctx);
        ctx.pop_lock(mark);
        r
    }

    pub(super) fn with_var<R>(
        &self,
        ctx: &mut Context,
        name: &str,
        ann: MorId,
        ty: Term,
        span: Span,
        f: impl FnOnce(&mut Context) -> EResult<R>,
    ) -> EResult<R> {
        ctx.push_var(self.mt, name, ann, ty)
            .map_err(|e| context_error(e, span))?;
        let r = f(ctx);
        ctx.pop_var();
        r
    }

    fn require_sharp(&self, mu: MorId, span: Span) -> EResult<()> {
        if self.mt.is_sharp(mu) {
            Ok(())
        } else {
            err(
                ErrorCode::NotSharp,
                span,
                format!("`{}` is not sharp", self.mt.mor_name(mu)),
            )
        }
    }

    fn require_sinister(&self, mu: MorId, span: Span) -> EResult<()> {
        if self.mt.is_sinister(mu) && self.mt.adjoint(mu).is_some() {
            Ok(())
        } else {
            err(
                ErrorCode::NotSinister,
                span,
                format!("`{}` is not sinister", self.mt.mor_name(mu)),
            )
        }
    }

    fn require_target(&self, ctx: &Context, mu: MorId, span: Span) -> EResult<()> {
        let mt = self.mt;
        if mt.target(mu) == ctx.mode() {
            Ok(())
        } else {
            err(
                ErrorCode::ModeMismatch,
                span,
                format!(
                    "`{}` ends at mode `{}` but the context is at mode `{}`",
                    mt.mor_name(mu),
                    mt.mode_name(mt.target(mu)),
                    mt.mode_name(ctx.mode())
                ),
            )
        }
    }

    fn conversion_error(&self, ctx: &Context, span: Span, found: &Term, expected: &Term) -> CheckError {
        CheckError::new(
            ErrorCode::ConversionFailure,
            span,
            format!(
                "expected type `{}` but found `{}`",
                self.show(ctx, expected),
                self.show(ctx, found)
            ),
        )
    }

    /// `Γ ⊢ A type`, returning the elaborated type.
    pub fn check_type(&self, ctx: &mut Context, e: &Expr) -> EResult<Term> {
        let mt = self.mt;
        match &e.kind {
            ExprKind::Pi { name, mu, dom, cod } => {
                let mu = match mu {
                    Some(m) => self.resolve(m, e.span)?,
                    None => mt.identity(ctx.mode()),
                };
                self.require_target(ctx, mu, e.span)?;
                self.require_sharp(mu, e.span)?;
                let a = self.with_lock(ctx, mu, e.span, |ctx| self.check_type(ctx, dom))?;
                let name = name.clone().unwrap_or_else(|| "_".into());
                let b = self.with_var(ctx, &name, mu, a.clone(), e.span, |ctx| {
                    self.check_type(ctx, cod)
                })?;
                Ok(Term::pi(name, mu, a, b))
            }
            ExprKind::F { mu, ty } => {
                let mu = self.resolve(mu, e.span)?;
                self.require_sharp(mu, e.span)?;
                self.require_target(ctx, mu, e.span)?;
                let a = self.with_lock(ctx, mu, e.span, |ctx| self.check_type(ctx, ty))?;
                Ok(Term::fmod(mu, a))
            }
            ExprKind::U { mu, ty } => {
                let mu = self.resolve(mu, e.span)?;
                self.require_sinister(mu, e.span)?;
                if mt.source(mu) != ctx.mode() {
                    return err(
                        ErrorCode::ModeMismatch,
                        e.span,
                        format!(
                            "U[{}] forms types at mode `{}`, not `{}`",
                            mt.mor_name(mu),
                            mt.mode_name(mt.source(mu)),
                            mt.mode_name(ctx.mode())
                        ),
                    );
                }
                let dag = self.dagger(mu);
                let a = self.with_lock(ctx, dag, e.span, |ctx| self.check_type(ctx, ty))?;
                Ok(Term::umod(mu, a))
            }
            ExprKind::Name { .. } | ExprKind::App { .. } => {
                let (head, args) = e.spine();
                let ExprKind::Name { name, key } = &head.kind else {
                    return err(ErrorCode::ExpectedType, e.span, "not a type");
                };
                if ctx.lookup(name).is_some() {
                    return err(
                        ErrorCode::ExpectedType,
                        head.span,
                        format!("variable `{name}` is not a type"),
                    );
                }
                let Some(g) = self.sig.get(name) else {
                    return err(
                        ErrorCode::UnknownConstant,
                        head.span,
                        format!("unknown constant `{name}`"),
                    );
                };
                let GlobalKind::TypeFormer { params } = &g.kind else {
                    return err(
                        ErrorCode::ExpectedType,
                        head.span,
                        format!("`{name}` is a term, not a type"),
                    );
                };
                if key.is_some() {
                    return err(
                        ErrorCode::KeyTypeMismatch,
                        head.span,
                        format!("type former `{name}` takes no key"),
                    );
                }
                if g.mode != ctx.mode() {
                    return err(
                        ErrorCode::ModeMismatch,
                        head.span,
                        format!(
                            "`{name}` lives at mode `{}` but is used at mode `{}`",
                            mt.mode_name(g.mode),
                            mt.mode_name(ctx.mode())
                        ),
                    );
                }
                if args.len() != params.len() {
                    return err(
                        ErrorCode::ArityMismatch,
                        e.span,
                        format!(
                            "`{name}` takes {} arguments but is given {}",
                            params.len(),
                            args.len()
                        ),
                    );
                }
                let mut done: Vec<(MorId, Term)> = Vec::new();
                for (i, arg) in args.iter().enumerate() {
                    let mu = params[i].1;
                    let pty = self.param_type(ctx, params, i, &done);
                    let a = self.with_lock(ctx, mu, arg.span, |ctx| self.check(ctx, arg, &pty))?;
                    done.push((mu, a));
                }
                Ok(Term::TConst {
                    name: name.clone(),
                    args: done,
                })
            }
            ExprKind::Universe => err(
                ErrorCode::ExpectedType,
                e.span,
                "`Type` may only end the telescope of a type former",
            ),
            _ => err(ErrorCode::ExpectedType, e.span, "a term is not a type"),
        }
    }

    fn eval_key(&self, k: &CellExpr, span: Span) -> EResult<crate::mode_theory::CellId> {
        self.mt.eval(k).map_err(|e| match e {
            ModeError::UnknownCell(_) | ModeError::UnknownMorphism(_) => {
                CheckError::new(ErrorCode::UnknownModality, span, e.to_string())
            }
            other => CheckError::new(ErrorCode::KeyTypeMismatch, span, other.to_string()),
        })
    }

    /// `Γ ⊢ t ⇒ A`.
    pub fn infer(&self, ctx: &mut Context, e: &Expr) -> EResult<(Term, Term)> {
        let mt = self.mt;
        match &e.kind {
            ExprKind::Name { name, key } => {
                if let Some(level) = ctx.lookup(name) {
                    let (_, ann, _) = ctx.var(level);
                    let locks = ctx.locks_after(mt, level);
                    let key = match key {
                        Some(k) => self.eval_key(k, e.span)?,
                        None => mt.identity_cell(ann),
                    };
                    if mt.cell_source(key) != ann || mt.cell_target(key) != locks {
                        return err(
                            ErrorCode::KeyTypeMismatch,
                            e.span,
                            format!(
                                "`{name}` is annotated `{}` behind locks `{}`, but its key `{}` relates `{}` to `{}`",
                                mt.mor_name(ann),
                                mt.mor_name(locks),
                                mt.cell_name(key),
                                mt.mor_name(mt.cell_source(key)),
                                mt.mor_name(mt.cell_target(key)),
                            ),
                        );
                    }
                    return Ok((Term::var(level, key), self.var_type(ctx, level, key)));
                }
                let Some(g) = self.sig.get(name) else {
                    return err(
                        ErrorCode::UnknownConstant,
                        e.span,
                        format!("unknown name `{name}`"),
                    );
                };
                if key.is_some() {
                    return err(
                        ErrorCode::KeyTypeMismatch,
                        e.span,
                        format!("constant `{name}` takes no key"),
                    );
                }
                let ty = match &g.kind {
                    GlobalKind::Postulate { ty } | GlobalKind::Def { ty, .. } => ty,
                    GlobalKind::TypeFormer { .. } => {
                        return err(
                            ErrorCode::CannotInfer,
                            e.span,
                            format!("`{name}` is a type, not a term"),
                        )
                    }
                };
                if g.mode != ctx.mode() {
                    return err(
                        ErrorCode::ModeMismatch,
                        e.span,
                        format!(
                            "`{name}` lives at mode `{}` but is used at mode `{}`",
                            mt.mode_name(g.mode),
                            mt.mode_name(ctx.mode())
                        ),
                    );
                }
                Ok((
                    Term::Const(name.clone()),
                    shift(mt, ty, g.mode, 0, ctx.var_count()),
                ))
            }
            ExprKind::App { fun, arg } => {
                let (f, fty) = self.infer(ctx, fun)?;
                let Term::Pi { mu, dom, cod, .. } = fty else {
                    return err(
                        ErrorCode::ExpectedPi,
                        fun.span,
                        format!(
                            "`{}` has type `{}`, which is not a function type",
                            self.show(ctx, &f),
                            self.show(ctx, &fty)
                        ),
                    );
                };
                let a = self.with_lock(ctx, mu, arg.span, |ctx| self.check(ctx, arg, &dom))?;
                let ty = self.subst1(ctx, &cod, a.clone(), mu);
                Ok((Term::app(f, mu, a), ty))
            }
            ExprKind::Open { mu, body } => {
                let mu = self.resolve(mu, e.span)?;
                self.require_sinister(mu, e.span)?;
                let (m, ty) = self.with_lock(ctx, mu, e.span, |ctx| self.infer(ctx, body))?;
                let inner = match ty {
                    Term::UMod { mu: m2, ty } if m2 == mu => ty,
                    other => {
                        let shown = {
                            let locked = ctx.locked(mt, mu).map_err(|x| context_error(x, e.span))?;
                            self.show(&locked, &other)
                        };
                        return err(
                            ErrorCode::ExpectedU,
                            body.span,
                            format!("expected a type `U[{}] _`, found `{shown}`", mt.mor_name(mu)),
                        );
                    }
                };
                let eps = mt.adjoint(mu).expect("sinister").counit;
                let ty = crate::syntax::apply_key(mt, &inner, ctx.entries(), ctx.mode(), eps, 0);
                Ok((Term::open(mu, m), ty))
            }
            ExprKind::Let {
                frame,
                mu,
                x,
                scrutinee,
                body,
                motive: Some((y, motive)),
            } => self.let_mod(ctx, e.span, frame.as_deref(), mu, x, scrutinee, body, Some((y, motive)), None),
            ExprKind::Let { motive: None, .. } => err(
                ErrorCode::CannotInfer,
                e.span,
                "cannot infer the type of a `let` without a motive",
            ),
            ExprKind::Lam { .. } | ExprKind::Mod { .. } | ExprKind::Shut { .. } => err(
                ErrorCode::CannotInfer,
                e.span,
                "cannot infer the type of an introduction form; check it against a type",
            ),
            ExprKind::Pi { .. } | ExprKind::F { .. } | ExprKind::U { .. } | ExprKind::Universe => {
                err(ErrorCode::CannotInfer, e.span, "a type is not a term")
            }
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn let_mod(
        &self,
        ctx: &mut Context,
        span: Span,
        frame: Option<&str>,
        mu: &str,
        x: &str,
        scrutinee: &Expr,
        body: &Expr,
        motive: Option<(&String, &Expr)>,
        expected: Option<&Term>,
    ) -> EResult<(Term, Term)> {
        let mt = self.mt;
        let mu = self.resolve(mu, span)?;
        let frame = match frame {
            Some(f) => self.resolve(f, span)?,
            None => mt.identity(ctx.mode()),
        };
        self.require_sharp(mu, span)?;
        if !mt.is_transparent(frame) {
            return err(
                ErrorCode::NotTransparent,
                span,
                format!("frame `{}` is not transparent", mt.mor_name(frame)),
            );
        }
        self.require_target(ctx, frame, span)?;
        let (d, dty) = self.with_lock(ctx, frame, scrutinee.span, |ctx| self.infer(ctx, scrutinee))?;
        let inner = match &dty {
            Term::FMod { mu: m2, ty } if *m2 == mu => (**ty).clone(),
            other => {
                let shown = {
                    let locked = ctx.locked(mt, frame).map_err(|x| context_error(x, span))?;
                    self.show(&locked, other)
                };
                return err(
                    ErrorCode::ExpectedF,
                    scrutinee.span,
                    format!("expected a type `F[{}] _`, found `{shown}`", mt.mor_name(mu)),
                );
            }
        };
        let (y, b_ty) = match (motive, expected) {
            (Some((y, m)), _) => {
                let b = self.with_var(ctx, y, frame, dty.clone(), m.span, |ctx| {
                    self.check_type(ctx, m)
                })?;
                (y.clone(), b)
            }
            (None, Some(t)) => ("_".to_owned(), shift(mt, t, ctx.mode(), ctx.var_count(), 1)),
            (None, None) => {
                return err(ErrorCode::CannotInfer, span, "a `let` without a motive")
            }
        };
        let nm = mt.compose(frame, mu).map_err(|e| {
            CheckError::new(ErrorCode::ModeMismatch, span, e.to_string())
        })?;
        let b = self.with_var(ctx, x, nm, inner, body.span, |ctx| {
            let expected_body = self.motive_at_mod(ctx, &b_ty, frame, mu);
            self.check(ctx, body, &expected_body)
        })?;
        let result_ty = self.subst1(ctx, &b_ty, d.clone(), frame);
        let t = Term::LetMod {
            frame,
            mu,
            x: x.to_owned(),
            scrutinee: Box::new(d),
            body: Box::new(b),
            y,
            motive: Box::new(b_ty),
        };
        Ok((t, result_ty))
    }

    /// `Γ ⊢ t ⇐ A`.
    pub fn check(&self, ctx: &mut Context, e: &Expr, ty: &Term) -> EResult<Term> {
        match (&e.kind, ty) {
            (ExprKind::Lam { name, body }, Term::Pi { mu, dom, cod, .. }) => {
                let b = self.with_var(ctx, name, *mu, (**dom).clone(), e.span, |ctx| {
                    self.check(ctx, body, cod)
                })?;
                Ok(Term::lam(name.clone(), b))
            }
            (ExprKind::Mod { mu, body }, Term::FMod { mu: m2, ty: inner }) => {
                let mu = self.resolve(mu, e.span)?;
                if mu != *m2 {
                    return Err(self.intro_mismatch(ctx, e, ty));
                }
                let a = self.with_lock(ctx, mu, e.span, |ctx| self.check(ctx, body, inner))?;
                Ok(Term::mod_intro(mu, a))
            }
            (ExprKind::Shut { mu, body }, Term::UMod { mu: m2, ty: inner }) => {
                let mu = self.resolve(mu, e.span)?;
                if mu != *m2 {
                    return Err(self.intro_mismatch(ctx, e, ty));
                }
                let dag = self.dagger(mu);
                let a = self.with_lock(ctx, dag, e.span, |ctx| self.check(ctx, body, inner))?;
                Ok(Term::shut(mu, a))
            }
            (ExprKind::Lam { .. } | ExprKind::Mod { .. } | ExprKind::Shut { .. }, _) => {
                Err(self.intro_mismatch(ctx, e, ty))
            }
            (
                ExprKind::Let {
                    frame,
                    mu,
                    x,
                    scrutinee,
                    body,
                    motive,
                },
                _,
            ) => {
                let motive = motive.as_ref().map(|(y, m)| (y, &**m));
                let (t, found) = self.let_mod(
                    ctx,
                    e.span,
                    frame.as_deref(),
                    mu,
                    x,
                    scrutinee,
                    body,
                    motive,
                    Some(ty),
                )?;
                self.expect_type(ctx, e.span, &found, ty)?;
                Ok(t)
            }
            _ => {
                let (t, found) = self.infer(ctx, e)?;
                self.expect_type(ctx, e.span, &found, ty)?;
                Ok(t)
            }
        }
    }

    fn expect_type(&self, ctx: &mut Context, span: Span, found: &Term, expected: &Term) -> EResult<()> {
        self.conv_ty(ctx, found, expected).map_err(|m| {
            let mut e = self.conversion_error(ctx, span, found, expected);
            e.trace = m.trace;
            e
        })
    }

    fn intro_mismatch(&self, ctx: &Context, e: &Expr, ty: &Term) -> CheckError {
        let what = match &e.kind {
            ExprKind::Lam { .. } => "a function",
            ExprKind::Mod { .. } => "a `mod` introduction",
            _ => "a `shut` introduction",
        };
        CheckError::new(
            ErrorCode::ConversionFailure,
            e.span,
            format!("{what} cannot have type `{}`", self.show(ctx, ty)),
        )
    }
}
