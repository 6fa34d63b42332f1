//! Lexer and recursive-descent parser for source files.
//!
//! ```text
//! file  ::= (decl ";")*
//! decl  ::= "mode-theory" STRING
//!         | "const" NAME ":" expr "@" NAME
//!         | "def" NAME "@" NAME ":" expr "=" expr
//! expr  ::= "\" NAME+ "." expr
//!         | "let" "[" [NAME ","] NAME "]" "mod" NAME "=" expr "in" expr ["motive" NAME "." expr]
//!         | "(" NAME (":" | ":^" NAME) expr ")" "->" expr
//!         | app ["->" expr]
//! app   ::= pre+
//! pre   ::= ("mod" | "shut" | "open" | "F" | "U") "[" NAME "]" app | atom
//! atom  ::= NAME ["^" (NAME | "(" cell ")")] | "Type" | "(" expr ")"
//! ```

use thiserror::Error;

use crate::mode_theory::CellExpr;

use super::surface::{Decl, DeclKind, Expr, ExprKind, Param, Span};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Str(String),
    Kw(&'static str),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Str(s) => format!("{s:?}"),
            Tok::Kw(k) | Tok::Sym(k) => format!("`{k}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
    start: usize,
    end: usize,
}

const KEYWORDS: [&str; 11] = [
    "const", "def", "let", "in", "mod", "motive", "shut", "open", "F", "U", "Type",
];

const SYMBOLS: [&str; 17] = [
    ":^", "->", "<|", "|>", "(", ")", "[", "]", ",", ";", ":", "\\", "λ", ".", "@", "=", "^",
];

fn ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut i = 0usize;
    let bytes_len = src.len();
    let advance = |i: &mut usize, line: &mut u32, col: &mut u32, text: &str| {
        for c in text.chars() {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        }
        *i += text.len();
    };
    while i < bytes_len {
        let rest = &src[i..];
        let c = rest.chars().next().unwrap();
        let span = Span { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, &rest[..c.len_utf8()]);
            continue;
        }
        if rest.starts_with("--") {
            let len = rest.find('\n').unwrap_or(rest.len());
            advance(&mut i, &mut line, &mut col, &rest[..len]);
            continue;
        }
        if rest.starts_with("mode-theory") {
            out.push(Token {
                tok: Tok::Kw("mode-theory"),
                span,
                start: i,
                end: i + 11,
            });
            advance(&mut i, &mut line, &mut col, "mode-theory");
            continue;
        }
        if c == '"' {
            let Some(close) = rest[1..].find('"') else {
                return Err(ParseError {
                    span,
                    message: "unterminated string".into(),
                });
            };
            let text = &rest[..close + 2];
            out.push(Token {
                tok: Tok::Str(rest[1..close + 1].to_owned()),
                span,
                start: i,
                end: i + text.len(),
            });
            advance(&mut i, &mut line, &mut col, text);
            continue;
        }
        if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            out.push(Token {
                tok: Tok::Sym(sym),
                span,
                start: i,
                end: i + sym.len(),
            });
            advance(&mut i, &mut line, &mut col, sym);
            continue;
        }
        if ident_start(c) {
            let word = |from: usize| {
                rest[from..]
                    .char_indices()
                    .find(|&(_, d)| !ident_char(d))
                    .map_or(rest.len() - from, |(j, _)| j)
            };
            let mut len = word(0);
            // Reserved identity names: `id:p`, `id:id:mu`, ...
            if &rest[..len] == "id" {
                while rest[len..].starts_with(':')
                    && rest[len + 1..].chars().next().is_some_and(ident_start)
                {
                    len += 1 + word(len + 1);
                }
            }
            let text = &rest[..len];
            let tok = match KEYWORDS.iter().find(|k| **k == text) {
                Some(k) => Tok::Kw(k),
                None => Tok::Ident(text.to_owned()),
            };
            out.push(Token {
                tok,
                span,
                start: i,
                end: i + len,
            });
            advance(&mut i, &mut line, &mut col, text);
            continue;
        }
        if c == '*' {
            out.push(Token {
                tok: Tok::Sym("*"),
                span,
                start: i,
                end: i + 1,
            });
            advance(&mut i, &mut line, &mut col, "*");
            continue;
        }
        return Err(ParseError {
            span,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
        start: bytes_len,
        end: bytes_len,
    });
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn is_kw(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Kw(x) if *x == s)
    }

    fn sym(&mut self, s: &str) -> PResult<()> {
        if self.is_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn kw(&mut self, s: &str) -> PResult<()> {
        if self.is_kw(s) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("a name"),
        }
    }

    fn binder(&mut self) -> PResult<String> {
        let span = self.span();
        let name = self.ident()?;
        if name.contains(':') {
            return Err(ParseError {
                span,
                message: format!("`{name}` is reserved and cannot be bound"),
            });
        }
        Ok(name)
    }

    fn file(&mut self) -> PResult<Vec<Decl>> {
        let mut out = Vec::new();
        while *self.peek() != Tok::Eof {
            out.push(self.decl()?);
            self.sym(";")?;
        }
        Ok(out)
    }

    fn decl(&mut self) -> PResult<Decl> {
        let span = self.span();
        let kind = match self.peek() {
            Tok::Kw("mode-theory") => {
                self.bump();
                match self.peek().clone() {
                    Tok::Str(s) => {
                        self.bump();
                        DeclKind::ModeTheory(s)
                    }
                    _ => return self.error("a quoted path"),
                }
            }
            Tok::Kw("const") => {
                self.bump();
                let name = self.binder()?;
                self.sym(":")?;
                let ty = self.expr()?;
                self.sym("@")?;
                let mode = self.ident()?;
                classify_const(name, ty, mode)?
            }
            Tok::Kw("def") => {
                self.bump();
                let name = self.binder()?;
                self.sym("@")?;
                let mode = self.ident()?;
                self.sym(":")?;
                let ty = self.expr()?;
                self.sym("=")?;
                let body = self.expr()?;
                DeclKind::Def {
                    name,
                    mode,
                    ty,
                    body,
                }
            }
            _ => return self.error("a declaration"),
        };
        Ok(Decl { kind, span })
    }

    fn expr(&mut self) -> PResult<Expr> {
        let span = self.span();
        if self.is_sym("\\") || self.is_sym("λ") {
            self.bump();
            let mut names = vec![self.binder()?];
            while matches!(self.peek(), Tok::Ident(_)) {
                names.push(self.binder()?);
            }
            self.sym(".")?;
            let mut body = self.expr()?;
            for name in names.into_iter().rev() {
                body = Expr::new(
                    ExprKind::Lam {
                        name,
                        body: Box::new(body),
                    },
                    span,
                );
            }
            return Ok(body);
        }
        if self.is_kw("let") {
            return self.let_expr();
        }
        if self.is_sym("(")
            && matches!(self.peek_at(1), Tok::Ident(_))
            && matches!(self.peek_at(2), Tok::Sym(":") | Tok::Sym(":^"))
        {
            self.bump();
            let name = self.binder()?;
            let mu = if self.is_sym(":^") {
                self.bump();
                Some(self.ident()?)
            } else {
                self.sym(":")?;
                None
            };
            let dom = self.expr()?;
            self.sym(")")?;
            self.sym("->")?;
            let cod = self.expr()?;
            let name = if name == "_" { None } else { Some(name) };
            return Ok(Expr::new(
                ExprKind::Pi {
                    name,
                    mu,
                    dom: Box::new(dom),
                    cod: Box::new(cod),
                },
                span,
            ));
        }
        let head = self.app()?;
        if self.is_sym("->") {
            self.bump();
            let cod = self.expr()?;
            return Ok(Expr::new(
                ExprKind::Pi {
                    name: None,
                    mu: None,
                    dom: Box::new(head),
                    cod: Box::new(cod),
                },
                span,
            ));
        }
        Ok(head)
    }

    fn let_expr(&mut self) -> PResult<Expr> {
        let span = self.span();
        self.kw("let")?;
        self.sym("[")?;
        let first = self.ident()?;
        let (frame, mu) = if self.is_sym(",") {
            self.bump();
            (Some(first), self.ident()?)
        } else {
            (None, first)
        };
        self.sym("]")?;
        self.kw("mod")?;
        let x = self.binder()?;
        self.sym("=")?;
        let scrutinee = self.expr()?;
        self.kw("in")?;
        let body = self.expr()?;
        let motive = if self.is_kw("motive") {
            self.bump();
            let y = self.binder()?;
            self.sym(".")?;
            Some((y, Box::new(self.expr()?)))
        } else {
            None
        };
        Ok(Expr::new(
            ExprKind::Let {
                frame,
                mu,
                x,
                scrutinee: Box::new(scrutinee),
                body: Box::new(body),
                motive,
            },
            span,
        ))
    }

    fn starts_pre(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Sym("(")
                | Tok::Kw("Type")
                | Tok::Kw("mod")
                | Tok::Kw("shut")
                | Tok::Kw("open")
                | Tok::Kw("F")
                | Tok::Kw("U")
        )
    }

    fn app(&mut self) -> PResult<Expr> {
        if !self.starts_pre() {
            return self.error("an expression");
        }
        let mut acc = self.pre()?;
        while self.starts_pre() {
            let span = acc.span;
            let arg = self.pre()?;
            acc = Expr::new(
                ExprKind::App {
                    fun: Box::new(acc),
                    arg: Box::new(arg),
                },
                span,
            );
        }
        Ok(acc)
    }

    fn pre(&mut self) -> PResult<Expr> {
        let span = self.span();
        let kw = match self.peek() {
            Tok::Kw(k @ ("mod" | "shut" | "open" | "F" | "U")) => *k,
            _ => return self.atom(),
        };
        self.bump();
        self.sym("[")?;
        let mu = self.ident()?;
        self.sym("]")?;
        let body = Box::new(self.app()?);
        let kind = match kw {
            "mod" => ExprKind::Mod { mu, body },
            "shut" => ExprKind::Shut { mu, body },
            "open" => ExprKind::Open { mu, body },
            "F" => ExprKind::F { mu, ty: body },
            _ => ExprKind::U { mu, ty: body },
        };
        Ok(Expr::new(kind, span))
    }

    fn atom(&mut self) -> PResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Kw("Type") => {
                self.bump();
                Ok(Expr::new(ExprKind::Universe, span))
            }
            Tok::Sym("(") => {
                self.bump();
                let e = self.expr()?;
                self.sym(")")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                let key = if self.is_sym("^") {
                    self.bump();
                    Some(self.key()?)
                } else {
                    None
                };
                Ok(Expr::new(ExprKind::Name { name, key }, span))
            }
            _ => self.error("an expression"),
        }
    }

    fn key(&mut self) -> PResult<CellExpr> {
        if let Tok::Ident(n) = self.peek().clone() {
            self.bump();
            return Ok(CellExpr::Named(n));
        }
        let span = self.span();
        if !self.is_sym("(") {
            return self.error("a key");
        }
        let open = self.bump();
        let mut depth = 1;
        let close_start;
        loop {
            let t = self.bump();
            match t.tok {
                Tok::Sym("(") => depth += 1,
                Tok::Sym(")") => {
                    depth -= 1;
                    if depth == 0 {
                        close_start = t.start;
                        break;
                    }
                }
                Tok::Eof => {
                    return Err(ParseError {
                        span,
                        message: "unclosed key expression".into(),
                    })
                }
                _ => {}
            }
        }
        CellExpr::parse(&self.src[open.end..close_start]).map_err(|e| ParseError {
            span,
            message: e.to_string(),
        })
    }
}

fn classify_const(name: String, ty: Expr, mode: String) -> PResult<DeclKind> {
    let mut params = Vec::new();
    let mut cur = &ty;
    loop {
        match &cur.kind {
            ExprKind::Universe => return Ok(DeclKind::TypeFormer { name, params, mode }),
            ExprKind::Pi {
                name: pname,
                mu,
                dom,
                cod,
            } => {
                params.push(Param {
                    name: pname.clone().unwrap_or_else(|| "_".into()),
                    mu: mu.clone(),
                    ty: (**dom).clone(),
                });
                cur = cod;
            }
            _ => break,
        }
    }
    if contains_universe(&ty) {
        return Err(ParseError {
            span: ty.span,
            message: "`Type` may only end the telescope of a type former".into(),
        });
    }
    Ok(DeclKind::Postulate { name, ty, mode })
}

fn contains_universe(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Universe => true,
        ExprKind::Name { .. } => false,
        ExprKind::Lam { body, .. }
        | ExprKind::Mod { body, .. }
        | ExprKind::Shut { body, .. }
        | ExprKind::Open { body, .. } => contains_universe(body),
        ExprKind::F { ty, .. } | ExprKind::U { ty, .. } => contains_universe(ty),
        ExprKind::App { fun, arg } => contains_universe(fun) || contains_universe(arg),
        ExprKind::Pi { dom, cod, .. } => contains_universe(dom) || contains_universe(cod),
        ExprKind::Let {
            scrutinee,
            body,
            motive,
            ..
        } => {
            contains_universe(scrutinee)
                || contains_universe(body)
                || motive.as_ref().is_some_and(|(_, m)| contains_universe(m))
        }
    }
}

pub fn parse_file(src: &str) -> Result<Vec<Decl>, ParseError> {
    let toks = lex(src)?;
    Parser { src, toks, pos: 0 }.file()
}

/// Parse a standalone expression (used by tests and tools).
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { src, toks, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return p.error("end of input");
    }
    Ok(e)
}

/// Parse the text after `^` in a variable occurrence.
pub fn parse_cell_key(src: &str) -> Result<CellExpr, ParseError> {
    CellExpr::parse(src).map_err(|e| ParseError {
        span: Span { line: 1, col: 1 },
        message: e.to_string(),
    })
}
