//! Rendering core terms back into surface syntax.

use crate::mode_theory::ModeTheory;

use super::Term;

/// Render `t` in a context whose variables are named by `names` (by level).
pub fn show(mt: &ModeTheory, t: &Term, names: &[String]) -> String {
    let mut names = names.to_vec();
    let mut out = String::new();
    Printer { mt }.term(t, &mut names, &mut out);
    out
}

struct Printer<'a> {
    mt: &'a ModeTheory,
}

fn fresh(names: &[String], name: &str) -> String {
    let mut n = name.to_owned();
    while names.contains(&n) && n != "_" {
        n.push('\'');
    }
    n
}

fn atomic(t: &Term) -> bool {
    match t {
        Term::Var { .. } | Term::Const(_) => true,
        Term::TConst { args, .. } => args.is_empty(),
        _ => false,
    }
}

impl Printer<'_> {
    fn atom(&self, t: &Term, names: &mut Vec<String>, out: &mut String) {
        if atomic(t) {
            self.term(t, names, out);
        } else {
            out.push('(');
            self.term(t, names, out);
            out.push(')');
        }
    }

    fn bind(&self, name: &str, body: &Term, names: &mut Vec<String>, out: &mut String) -> String {
        let n = fresh(names, name);
        names.push(n.clone());
        self.term(body, names, out);
        names.pop();
        n
    }

    fn term(&self, t: &Term, names: &mut Vec<String>, out: &mut String) {
        let mt = self.mt;
        match t {
            Term::Var { level, key } => {
                match names.get(*level) {
                    Some(n) => out.push_str(n),
                    None => out.push_str(&format!("#{level}")),
                }
                if mt.identity_cell(mt.cell_source(*key)) != *key {
                    out.push('^');
                    out.push_str(mt.cell_name(*key));
                }
            }
            Term::Const(n) => out.push_str(n),
            Term::Lam { name, body } => {
                let mut inner = String::new();
                let n = self.bind(name, body, names, &mut inner);
                out.push_str(&format!("\\{n}. {inner}"));
            }
            Term::App { fun, arg, .. } => {
                if matches!(**fun, Term::App { .. }) {
                    self.term(fun, names, out);
                } else {
                    self.atom(fun, names, out);
                }
                out.push(' ');
                self.atom(arg, names, out);
            }
            Term::ModIntro { mu, body } => {
                out.push_str(&format!("mod[{}] ", mt.mor_name(*mu)));
                self.atom(body, names, out);
            }
            Term::Shut { mu, body } => {
                out.push_str(&format!("shut[{}] ", mt.mor_name(*mu)));
                self.atom(body, names, out);
            }
            Term::Open { mu, body } => {
                out.push_str(&format!("open[{}] ", mt.mor_name(*mu)));
                self.atom(body, names, out);
            }
            Term::FMod { mu, ty } => {
                out.push_str(&format!("F[{}] ", mt.mor_name(*mu)));
                self.atom(ty, names, out);
            }
            Term::UMod { mu, ty } => {
                out.push_str(&format!("U[{}] ", mt.mor_name(*mu)));
                self.atom(ty, names, out);
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
                out.push_str(&format!(
                    "let[{}, {}] mod ",
                    mt.mor_name(*frame),
                    mt.mor_name(*mu)
                ));
                let mut d = String::new();
                self.term(scrutinee, names, &mut d);
                let mut b = String::new();
                let xn = self.bind(x, body, names, &mut b);
                let mut m = String::new();
                let yn = self.bind(y, motive, names, &mut m);
                out.push_str(&format!("{xn} = {d} in ({b}) motive {yn}. {m}"));
            }
            Term::Pi { name, mu, dom, cod } => {
                let mut d = String::new();
                self.term(dom, names, &mut d);
                let mut c = String::new();
                let n = self.bind(name, cod, names, &mut c);
                if mt.is_identity(*mu) {
                    out.push_str(&format!("({n} : {d}) -> {c}"));
                } else {
                    out.push_str(&format!("({n} :^{} {d}) -> {c}", mt.mor_name(*mu)));
                }
            }
            Term::TConst { name, args } => {
                out.push_str(name);
                for (_, a) in args {
                    out.push(' ');
                    self.atom(a, names, out);
                }
            }
        }
    }
}
