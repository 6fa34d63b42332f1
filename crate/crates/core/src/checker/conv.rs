//! Weak-head reduction and type-directed conversion.

use std::fmt;

use crate::mode_theory::MorId;
use crate::syntax::{apply_key, instantiate, shift, show, Context, Term};

use super::{Checker, GlobalKind};

/// A failed comparison, with the path leading to it (outermost first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub trace: Vec<String>,
}

impl Mismatch {
    fn leaf(msg: String) -> Mismatch {
        Mismatch { trace: vec![msg] }
    }

    fn within(mut self, msg: impl Into<String>) -> Mismatch {
        self.trace.insert(0, msg.into());
        self
    }
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, line) in self.trace.iter().enumerate() {
            writeln!(f, "{:indent$}{line}", "", indent = 2 * i)?;
        }
        Ok(())
    }
}

type CResult<T> = Result<T, Mismatch>;

const WELL_TYPED: &str = "conversion is only run on well-typed input";

impl Checker<'_> {
    fn lock<R>(&self, ctx: &mut Context, mu: MorId, f: impl FnOnce(&mut Context) -> R) -> R {
        let mark = ctx.push_lock(self.mt, mu).expect(WELL_TYPED);
        let r = f(ctx);
        ctx.pop_lock(mark);
        r
    }

    fn bind<R>(
        &self,
        ctx: &mut Context,
        name: &str,
        ann: MorId,
        ty: Term,
        f: impl FnOnce(&mut Context) -> R,
    ) -> R {
        ctx.push_var(self.mt, name, ann, ty).expect(WELL_TYPED);
        let r = f(ctx);
        ctx.pop_var();
        r
    }

    pub(super) fn dagger(&self, mu: MorId) -> MorId {
        self.mt.adjoint(mu).expect("sinister morphism has an adjoint").dagger
    }

    pub fn show(&self, ctx: &Context, t: &Term) -> String {
        show(self.mt, t, &ctx.names())
    }

    /// Type of the occurrence `x^key` of the variable at `level`.
    pub fn var_type(&self, ctx: &Context, level: usize, key: crate::mode_theory::CellId) -> Term {
        let (_, ann, ty) = ctx.var(level);
        apply_key(
            self.mt,
            ty,
            ctx.prefix(level),
            self.mt.target(ann),
            key,
            ctx.var_count() - level,
        )
    }

    /// Substitute a single trailing variable of `ctx, x` in `body`.
    pub(super) fn subst1(&self, ctx: &Context, body: &Term, value: Term, ann: MorId) -> Term {
        instantiate(
            self.mt,
            body,
            ctx.entries(),
            ctx.mode(),
            &[(value, ann)],
            self.mt.identity(ctx.mode()),
        )
    }

    /// `B[y <- mod_mu(x)]` for a motive `B` over `ctx, y :^frame F[mu] A`,
    /// as a type over `ctx, x :^(frame . mu) A`. `ctx` must already contain `x`.
    pub(super) fn motive_at_mod(&self, ctx: &Context, motive: &Term, frame: MorId, mu: MorId) -> Term {
        let mt = self.mt;
        let n = ctx.var_count() - 1;
        let weakened = shift(mt, motive, ctx.mode(), n, 1);
        let nm = mt.compose(frame, mu).expect(WELL_TYPED);
        let value = Term::mod_intro(mu, Term::var(n, mt.identity_cell(nm)));
        self.subst1(ctx, &weakened, value, frame)
    }

    /// Type of the `i`-th argument of a type former, given the earlier arguments.
    pub(super) fn param_type(
        &self,
        ctx: &Context,
        params: &[(String, MorId, Term)],
        i: usize,
        args: &[(MorId, Term)],
    ) -> Term {
        let mt = self.mt;
        let (_, mu, ty) = &params[i];
        let lifted = shift(mt, ty, mt.source(*mu), 0, ctx.var_count());
        let values: Vec<(Term, MorId)> = args[..i].iter().map(|(m, a)| (a.clone(), *m)).collect();
        instantiate(mt, &lifted, ctx.entries(), ctx.mode(), &values, *mu)
    }

    pub fn whnf(&self, ctx: &mut Context, t: &Term) -> Term {
        let mt = self.mt;
        let mut t = t.clone();
        loop {
            match t {
                Term::App { fun, lock, arg } => {
                    let f = self.whnf(ctx, &fun);
                    match f {
                        Term::Lam { body, .. } => t = self.subst1(ctx, &body, *arg, lock),
                        f => return Term::app(f, lock, *arg),
                    }
                }
                Term::LetMod {
                    frame,
                    mu,
                    x,
                    scrutinee,
                    body,
                    y,
                    motive,
                } => {
                    let d = self.lock(ctx, frame, |ctx| self.whnf(ctx, &scrutinee));
                    match d {
                        Term::ModIntro { body: a, .. } => {
                            let nm = mt.compose(frame, mu).expect(WELL_TYPED);
                            t = self.subst1(ctx, &body, *a, nm);
                        }
                        d => {
                            return Term::LetMod {
                                frame,
                                mu,
                                x,
                                scrutinee: Box::new(d),
                                body,
                                y,
                                motive,
                            }
                        }
                    }
                }
                Term::Open { mu, body } => {
                    let m = self.lock(ctx, mu, |ctx| self.whnf(ctx, &body));
                    match m {
                        Term::Shut { body: n, .. } => {
                            let eps = mt.adjoint(mu).expect(WELL_TYPED).counit;
                            t = apply_key(mt, &n, ctx.entries(), ctx.mode(), eps, 0);
                        }
                        m => return Term::open(mu, m),
                    }
                }
                Term::Const(ref name) => match self.sig.get(name).map(|g| (&g.kind, g.mode)) {
                    Some((GlobalKind::Def { body, .. }, mode)) => {
                        t = shift(mt, body, mode, 0, ctx.var_count());
                    }
                    _ => return t,
                },
                other => return other,
            }
        }
    }

    /// Definitional equality of two terms of type `ty`.
    pub fn convert(&self, ctx: &mut Context, ty: &Term, a: &Term, b: &Term) -> bool {
        self.conv(ctx, a, b, ty).is_ok()
    }

    pub fn conv(&self, ctx: &mut Context, a: &Term, b: &Term, ty: &Term) -> CResult<()> {
        let mt = self.mt;
        match ty {
            Term::Pi { name, mu, dom, cod } => {
                let n = ctx.var_count();
                let x = Term::var(n, mt.identity_cell(*mu));
                let fa = Term::app(shift(mt, a, ctx.mode(), n, 1), *mu, x.clone());
                let fb = Term::app(shift(mt, b, ctx.mode(), n, 1), *mu, x);
                self.bind(ctx, name, *mu, (**dom).clone(), |ctx| {
                    self.conv(ctx, &fa, &fb, cod)
                        .map_err(|m| m.within(format!("applied to a fresh `{name}`")))
                })
            }
            Term::UMod { mu, ty: inner } => {
                let eta = mt.adjoint(*mu).expect(WELL_TYPED).unit;
                let oa = Term::open(*mu, apply_key(mt, a, ctx.entries(), ctx.mode(), eta, 0));
                let ob = Term::open(*mu, apply_key(mt, b, ctx.entries(), ctx.mode(), eta, 0));
                let dag = self.dagger(*mu);
                self.lock(ctx, dag, |ctx| {
                    self.conv(ctx, &oa, &ob, inner)
                        .map_err(|m| m.within(format!("opened at `{}`", mt.mor_name(*mu))))
                })
            }
            _ => {
                let wa = self.whnf(ctx, a);
                let wb = self.whnf(ctx, b);
                match (&wa, &wb, ty) {
                    (
                        Term::ModIntro { mu: m1, body: x },
                        Term::ModIntro { mu: m2, body: y },
                        Term::FMod { ty: inner, .. },
                    ) if m1 == m2 => self.lock(ctx, *m1, |ctx| {
                        self.conv(ctx, x, y, inner)
                            .map_err(|m| m.within(format!("under mod[{}]", mt.mor_name(*m1))))
                    }),
                    _ => self.neutral(ctx, &wa, &wb).map(|_| ()),
                }
            }
        }
    }

    fn differ(&self, ctx: &Context, a: &Term, b: &Term) -> Mismatch {
        Mismatch::leaf(format!(
            "`{}` is not `{}`",
            self.show(ctx, a),
            self.show(ctx, b)
        ))
    }

    /// Compare weak-head neutral terms, returning their common type.
    fn neutral(&self, ctx: &mut Context, a: &Term, b: &Term) -> CResult<Term> {
        let mt = self.mt;
        match (a, b) {
            (Term::Var { level: l1, key: k1 }, Term::Var { level: l2, key: k2 })
                if l1 == l2 && k1 == k2 =>
            {
                Ok(self.var_type(ctx, *l1, *k1))
            }
            (Term::Const(n1), Term::Const(n2)) if n1 == n2 => {
                match self.sig.get(n1).map(|g| (&g.kind, g.mode)) {
                    Some((GlobalKind::Postulate { ty }, mode)) => {
                        Ok(shift(mt, ty, mode, 0, ctx.var_count()))
                    }
                    _ => Err(self.differ(ctx, a, b)),
                }
            }
            (
                Term::App {
                    fun: f,
                    lock: m1,
                    arg: x,
                },
                Term::App {
                    fun: g,
                    lock: m2,
                    arg: y,
                },
            ) if m1 == m2 => {
                let fty = self.neutral(ctx, f, g)?;
                let Term::Pi { dom, cod, .. } = fty else {
                    return Err(self.differ(ctx, a, b));
                };
                self.lock(ctx, *m1, |ctx| self.conv(ctx, x, y, &dom))
                    .map_err(|m| m.within(format!("in the argument of `{}`", self.show(ctx, f))))?;
                Ok(self.subst1(ctx, &cod, (**x).clone(), *m1))
            }
            (Term::Open { mu: m1, body: x }, Term::Open { mu: m2, body: y }) if m1 == m2 => {
                let ty = self
                    .lock(ctx, *m1, |ctx| self.neutral(ctx, x, y))
                    .map_err(|m| m.within(format!("under open[{}]", mt.mor_name(*m1))))?;
                let Term::UMod { ty: inner, .. } = ty else {
                    return Err(self.differ(ctx, a, b));
                };
                let eps = mt.adjoint(*m1).expect(WELL_TYPED).counit;
                Ok(apply_key(mt, &inner, ctx.entries(), ctx.mode(), eps, 0))
            }
            (
                Term::LetMod {
                    frame: n1,
                    mu: m1,
                    x,
                    scrutinee: d1,
                    body: b1,
                    y,
                    motive: c1,
                },
                Term::LetMod {
                    frame: n2,
                    mu: m2,
                    scrutinee: d2,
                    body: b2,
                    motive: c2,
                    ..
                },
            ) if n1 == n2 && m1 == m2 => {
                let dty = self
                    .lock(ctx, *n1, |ctx| self.neutral(ctx, d1, d2))
                    .map_err(|m| m.within("in a let scrutinee"))?;
                let Term::FMod { ty: inner, .. } = &dty else {
                    return Err(self.differ(ctx, a, b));
                };
                self.bind(ctx, y, *n1, dty.clone(), |ctx| self.conv_ty(ctx, c1, c2))
                    .map_err(|m| m.within("in a let motive"))?;
                let nm = mt.compose(*n1, *m1).expect(WELL_TYPED);
                self.bind(ctx, x, nm, (**inner).clone(), |ctx| {
                    let bty = self.motive_at_mod(ctx, c1, *n1, *m1);
                    self.conv(ctx, b1, b2, &bty)
                })
                .map_err(|m| m.within("in a let body"))?;
                Ok(self.subst1(ctx, c1, (**d1).clone(), *n1))
            }
            _ => Err(self.differ(ctx, a, b)),
        }
    }

    /// Definitional equality of two types.
    pub fn conv_ty(&self, ctx: &mut Context, a: &Term, b: &Term) -> CResult<()> {
        let mt = self.mt;
        match (a, b) {
            (
                Term::Pi {
                    name,
                    mu: m1,
                    dom: d1,
                    cod: c1,
                },
                Term::Pi {
                    mu: m2,
                    dom: d2,
                    cod: c2,
                    ..
                },
            ) if m1 == m2 => {
                self.lock(ctx, *m1, |ctx| self.conv_ty(ctx, d1, d2))
                    .map_err(|m| m.within("in a function domain"))?;
                self.bind(ctx, name, *m1, (**d1).clone(), |ctx| self.conv_ty(ctx, c1, c2))
                    .map_err(|m| m.within("in a function codomain"))
            }
            (Term::FMod { mu: m1, ty: x }, Term::FMod { mu: m2, ty: y }) if m1 == m2 => self
                .lock(ctx, *m1, |ctx| self.conv_ty(ctx, x, y))
                .map_err(|m| m.within(format!("under F[{}]", mt.mor_name(*m1)))),
            (Term::UMod { mu: m1, ty: x }, Term::UMod { mu: m2, ty: y }) if m1 == m2 => {
                let dag = self.dagger(*m1);
                self.lock(ctx, dag, |ctx| self.conv_ty(ctx, x, y))
                    .map_err(|m| m.within(format!("under U[{}]", mt.mor_name(*m1))))
            }
            (Term::TConst { name: n1, args: a1 }, Term::TConst { name: n2, args: a2 })
                if n1 == n2 && a1.len() == a2.len() =>
            {
                let Some(GlobalKind::TypeFormer { params }) = self.sig.get(n1).map(|g| &g.kind)
                else {
                    return Err(self.differ(ctx, a, b));
                };
                for (i, ((m, x), (_, y))) in a1.iter().zip(a2).enumerate() {
                    let pty = self.param_type(ctx, params, i, a1);
                    self.lock(ctx, *m, |ctx| self.conv(ctx, x, y, &pty))
                        .map_err(|mm| mm.within(format!("in argument {} of `{n1}`", i + 1)))?;
                }
                Ok(())
            }
            _ => Err(self.differ(ctx, a, b)),
        }
    }
}
