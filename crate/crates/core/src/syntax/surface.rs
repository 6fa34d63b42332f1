//! Surface syntax as written in source files, before name resolution.

use std::fmt;

use crate::mode_theory::CellExpr;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

/// Modality annotations are kept as names; `None` means the identity at
/// whatever mode the annotation ends up at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Name {
        name: String,
        key: Option<CellExpr>,
    },
    Lam {
        name: String,
        body: Box<Expr>,
    },
    App {
        fun: Box<Expr>,
        arg: Box<Expr>,
    },
    Mod {
        mu: String,
        body: Box<Expr>,
    },
    Let {
        frame: Option<String>,
        mu: String,
        x: String,
        scrutinee: Box<Expr>,
        body: Box<Expr>,
        motive: Option<(String, Box<Expr>)>,
    },
    Shut {
        mu: String,
        body: Box<Expr>,
    },
    Open {
        mu: String,
        body: Box<Expr>,
    },
    Pi {
        name: Option<String>,
        mu: Option<String>,
        dom: Box<Expr>,
        cod: Box<Expr>,
    },
    F {
        mu: String,
        ty: Box<Expr>,
    },
    U {
        mu: String,
        ty: Box<Expr>,
    },
    /// The keyword `Type`, only meaningful at the end of a constant's telescope.
    Universe,
}

impl Expr {
    pub fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Expr, Vec<&Expr>) {
        let mut args = Vec::new();
        let mut head = self;
        while let ExprKind::App { fun, arg } = &head.kind {
            args.push(&**arg);
            head = fun;
        }
        args.reverse();
        (head, args)
    }

    /// Structural equality ignoring source positions.
    pub fn same_shape(&self, other: &Expr) -> bool {
        strip(self) == strip(other)
    }
}

fn strip(e: &Expr) -> Expr {
    let b = |e: &Expr| Box::new(strip(e));
    let kind = match &e.kind {
        ExprKind::Name { .. } | ExprKind::Universe => e.kind.clone(),
        ExprKind::Lam { name, body } => ExprKind::Lam {
            name: name.clone(),
            body: b(body),
        },
        ExprKind::App { fun, arg } => ExprKind::App {
            fun: b(fun),
            arg: b(arg),
        },
        ExprKind::Mod { mu, body } => ExprKind::Mod {
            mu: mu.clone(),
            body: b(body),
        },
        ExprKind::Let {
            frame,
            mu,
            x,
            scrutinee,
            body,
            motive,
        } => ExprKind::Let {
            frame: frame.clone(),
            mu: mu.clone(),
            x: x.clone(),
            scrutinee: b(scrutinee),
            body: b(body),
            motive: motive.as_ref().map(|(y, m)| (y.clone(), b(m))),
        },
        ExprKind::Shut { mu, body } => ExprKind::Shut {
            mu: mu.clone(),
            body: b(body),
        },
        ExprKind::Open { mu, body } => ExprKind::Open {
            mu: mu.clone(),
            body: b(body),
        },
        ExprKind::Pi { name, mu, dom, cod } => ExprKind::Pi {
            name: name.clone(),
            mu: mu.clone(),
            dom: b(dom),
            cod: b(cod),
        },
        ExprKind::F { mu, ty } => ExprKind::F {
            mu: mu.clone(),
            ty: b(ty),
        },
        ExprKind::U { mu, ty } => ExprKind::U {
            mu: mu.clone(),
            ty: b(ty),
        },
    };
    Expr::new(kind, Span::default())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Param {
    pub name: String,
    pub mu: Option<String>,
    pub ty: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclKind {
    ModeTheory(String),
    /// `const B : (x :^mu A) -> Type @ m`
    TypeFormer {
        name: String,
        params: Vec<Param>,
        mode: String,
    },
    /// `const a : A @ m`
    Postulate { name: String, ty: Expr, mode: String },
    Def {
        name: String,
        mode: String,
        ty: Expr,
        body: Expr,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: Span,
}

impl Decl {
    pub fn name(&self) -> Option<&str> {
        match &self.kind {
            DeclKind::ModeTheory(_) => None,
            DeclKind::TypeFormer { name, .. }
            | DeclKind::Postulate { name, .. }
            | DeclKind::Def { name, .. } => Some(name),
        }
    }

    /// Global names mentioned by the declaration that are not bound locally.
    pub fn free_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        match &self.kind {
            DeclKind::ModeTheory(_) => {}
            DeclKind::TypeFormer { params, .. } => {
                for p in params {
                    collect(&p.ty, &mut bound, &mut out);
                    bound.push(p.name.clone());
                }
            }
            DeclKind::Postulate { ty, .. } => collect(ty, &mut bound, &mut out),
            DeclKind::Def { ty, body, .. } => {
                collect(ty, &mut bound, &mut out);
                collect(body, &mut bound, &mut out);
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

fn collect(e: &Expr, bound: &mut Vec<String>, out: &mut Vec<String>) {
    let under = |name: &str, body: &Expr, bound: &mut Vec<String>, out: &mut Vec<String>| {
        bound.push(name.to_owned());
        collect(body, bound, out);
        bound.pop();
    };
    match &e.kind {
        ExprKind::Name { name, .. } => {
            if !bound.iter().any(|b| b == name) {
                out.push(name.clone());
            }
        }
        ExprKind::Universe => {}
        ExprKind::Lam { name, body } => under(name, body, bound, out),
        ExprKind::App { fun, arg } => {
            collect(fun, bound, out);
            collect(arg, bound, out);
        }
        ExprKind::Mod { body, .. } | ExprKind::Shut { body, .. } | ExprKind::Open { body, .. } => {
            collect(body, bound, out)
        }
        ExprKind::F { ty, .. } | ExprKind::U { ty, .. } => collect(ty, bound, out),
        ExprKind::Let {
            x,
            scrutinee,
            body,
            motive,
            ..
        } => {
            collect(scrutinee, bound, out);
            under(x, body, bound, out);
            if let Some((y, m)) = motive {
                under(y, m, bound, out);
            }
        }
        ExprKind::Pi { name, dom, cod, .. } => {
            collect(dom, bound, out);
            under(name.as_deref().unwrap_or("_"), cod, bound, out);
        }
    }
}

fn key_atom(k: &CellExpr) -> String {
    match k {
        CellExpr::Named(n) => n.clone(),
        other => other.to_string(),
    }
}

fn is_atomic(e: &Expr) -> bool {
    matches!(e.kind, ExprKind::Name { .. } | ExprKind::Universe)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atom = |e: &Expr| {
            if is_atomic(e) {
                e.to_string()
            } else {
                format!("({e})")
            }
        };
        match &self.kind {
            ExprKind::Name { name, key: None } => f.write_str(name),
            ExprKind::Name {
                name,
                key: Some(k),
            } => write!(f, "{name}^{}", key_atom(k)),
            ExprKind::Universe => f.write_str("Type"),
            ExprKind::Lam { name, body } => write!(f, "\\{name}. {body}"),
            ExprKind::App { fun, arg } => {
                let head = match fun.kind {
                    ExprKind::App { .. } => fun.to_string(),
                    _ => atom(fun),
                };
                write!(f, "{head} {}", atom(arg))
            }
            ExprKind::Mod { mu, body } => write!(f, "mod[{mu}] {}", atom(body)),
            ExprKind::Shut { mu, body } => write!(f, "shut[{mu}] {}", atom(body)),
            ExprKind::Open { mu, body } => write!(f, "open[{mu}] {}", atom(body)),
            ExprKind::F { mu, ty } => write!(f, "F[{mu}] {}", atom(ty)),
            ExprKind::U { mu, ty } => write!(f, "U[{mu}] {}", atom(ty)),
            ExprKind::Let {
                frame,
                mu,
                x,
                scrutinee,
                body,
                motive,
            } => {
                match frame {
                    Some(nu) => write!(f, "let[{nu}, {mu}] mod {x} = {scrutinee} in ")?,
                    None => write!(f, "let[{mu}] mod {x} = {scrutinee} in ")?,
                }
                match motive {
                    Some((y, m)) => write!(f, "({body}) motive {y}. {m}"),
                    None => write!(f, "{body}"),
                }
            }
            ExprKind::Pi {
                name: None,
                mu: None,
                dom,
                cod,
            } => match dom.kind {
                ExprKind::Pi { .. } | ExprKind::Lam { .. } | ExprKind::Let { .. } => {
                    write!(f, "({dom}) -> {cod}")
                }
                _ => write!(f, "{dom} -> {cod}"),
            },
            ExprKind::Pi { name, mu, dom, cod } => {
                let name = name.as_deref().unwrap_or("_");
                match mu {
                    Some(mu) => write!(f, "({name} :^{mu} {dom}) -> {cod}"),
                    None => write!(f, "({name} : {dom}) -> {cod}"),
                }
            }
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DeclKind::ModeTheory(path) => write!(f, "mode-theory {path:?};"),
            DeclKind::TypeFormer { name, params, mode } => {
                write!(f, "const {name} : ")?;
                for p in params {
                    match &p.mu {
                        Some(mu) => write!(f, "({} :^{mu} {}) -> ", p.name, p.ty)?,
                        None => write!(f, "({} : {}) -> ", p.name, p.ty)?,
                    }
                }
                write!(f, "Type @ {mode};")
            }
            DeclKind::Postulate { name, ty, mode } => write!(f, "const {name} : {ty} @ {mode};"),
            DeclKind::Def {
                name,
                mode,
                ty,
                body,
            } => write!(f, "def {name} @ {mode} : {ty} = {body};"),
        }
    }
}
