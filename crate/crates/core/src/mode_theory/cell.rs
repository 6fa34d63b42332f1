//! Formal 2-cell expressions.
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! expr  ::= wexpr ('*' wexpr)*        vertical composition, later * earlier
//! wexpr ::= NAME '<|' wexpr | post    left whiskering by a morphism
//! post  ::= atom ('|>' NAME)*         right whiskering by a morphism
//! atom  ::= NAME | '(' expr ')'
//! ```

use std::fmt;

use super::ModeError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CellExpr {
    Named(String),
    /// `later * earlier`
    VComp(Box<CellExpr>, Box<CellExpr>),
    /// `mu <| beta`
    WhiskerLeft(String, Box<CellExpr>),
    /// `alpha |> nu`
    WhiskerRight(Box<CellExpr>, String),
}

impl CellExpr {
    pub fn named(name: impl Into<String>) -> CellExpr {
        CellExpr::Named(name.into())
    }

    pub fn then(self, later: CellExpr) -> CellExpr {
        CellExpr::VComp(Box::new(later), Box::new(self))
    }

    pub fn parse(text: &str) -> Result<CellExpr, ModeError> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(ModeError::Syntax(format!(
                "unexpected `{}` in cell expression",
                p.tokens[p.pos]
            )));
        }
        Ok(e)
    }
}

pub(crate) fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | ':' | '\'')
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Star,
    LeftW,
    RightW,
    Open,
    Close,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => f.write_str(n),
            Tok::Star => f.write_str("*"),
            Tok::LeftW => f.write_str("<|"),
            Tok::RightW => f.write_str("|>"),
            Tok::Open => f.write_str("("),
            Tok::Close => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Tok>, ModeError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        match c {
            c if c.is_whitespace() => {}
            '*' => out.push(Tok::Star),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            '<' if text[i..].starts_with("<|") => {
                chars.next();
                out.push(Tok::LeftW);
            }
            '|' if text[i..].starts_with("|>") => {
                chars.next();
                out.push(Tok::RightW);
            }
            c if is_name_char(c) => {
                let mut end = i + c.len_utf8();
                while let Some(&(j, d)) = chars.peek() {
                    if !is_name_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                out.push(Tok::Name(text[i..end].to_owned()));
            }
            other => {
                return Err(ModeError::Syntax(format!(
                    "unexpected character `{other}` in cell expression"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1)
    }

    fn name(&mut self) -> Result<String, ModeError> {
        match self.tokens.get(self.pos) {
            Some(Tok::Name(n)) => {
                self.pos += 1;
                Ok(n.clone())
            }
            Some(t) => Err(ModeError::Syntax(format!("expected a name, found `{t}`"))),
            None => Err(ModeError::Syntax("unexpected end of cell expression".into())),
        }
    }

    fn expr(&mut self) -> Result<CellExpr, ModeError> {
        let mut acc = self.wexpr()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let earlier = self.wexpr()?;
            acc = CellExpr::VComp(Box::new(acc), Box::new(earlier));
        }
        Ok(acc)
    }

    fn wexpr(&mut self) -> Result<CellExpr, ModeError> {
        if matches!(self.peek(), Some(Tok::Name(_))) && self.peek2() == Some(&Tok::LeftW) {
            let mu = self.name()?;
            self.pos += 1;
            let inner = self.wexpr()?;
            return Ok(CellExpr::WhiskerLeft(mu, Box::new(inner)));
        }
        self.post()
    }

    fn post(&mut self) -> Result<CellExpr, ModeError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::RightW) {
            self.pos += 1;
            let nu = self.name()?;
            acc = CellExpr::WhiskerRight(Box::new(acc), nu);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<CellExpr, ModeError> {
        if self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            let e = self.expr()?;
            if self.peek() != Some(&Tok::Close) {
                return Err(ModeError::Syntax("expected `)` in cell expression".into()));
            }
            self.pos += 1;
            return Ok(e);
        }
        Ok(CellExpr::Named(self.name()?))
    }
}

impl fmt::Display for CellExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellExpr::Named(n) => f.write_str(n),
            CellExpr::VComp(later, earlier) => write!(f, "({later} * {earlier})"),
            CellExpr::WhiskerLeft(mu, beta) => write!(f, "({mu} <| {beta})"),
            CellExpr::WhiskerRight(alpha, nu) => write!(f, "({alpha} |> {nu})"),
        }
    }
}
