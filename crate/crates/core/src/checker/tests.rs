use super::*;
use crate::bundled;
use crate::syntax::{apply_key, parse_expr, parse_file, Context, Term};

struct Env {
    mt: ModeTheory,
    sig: Signature,
}

impl Env {
    fn new(theory: &str, src: &str) -> Env {
        let mt = bundled::theory(theory);
        let decls = parse_file(src).unwrap();
        let report = check_program(&mt, &decls);
        let errs: Vec<String> = report.errors().map(|e| e.to_string()).collect();
        assert!(errs.is_empty(), "{errs:?}");
        Env {
            mt,
            sig: report.signature,
        }
    }

    fn ck(&self) -> Checker<'_> {
        Checker::new(&self.mt, &self.sig)
    }

    /// A context from binders `(name, annotation, type)`.
    fn ctx(&self, mode: &str, binders: &[(&str, Option<&str>, &str)]) -> Context {
        let mut ctx = Context::empty(self.mt.mode(mode).unwrap());
        for &(name, ann, ty) in binders {
            let ann = match ann {
                Some(a) => self.mt.mor(a).unwrap(),
                None => self.mt.identity(ctx.mode()),
            };
            let mark = ctx.push_lock(&self.mt, ann).unwrap();
            let ty = self.ty(&mut ctx, ty);
            ctx.pop_lock(mark);
            ctx.push_var(&self.mt, name, ann, ty).unwrap();
        }
        ctx
    }

    fn ty(&self, ctx: &mut Context, src: &str) -> Term {
        self.ck().check_type(ctx, &parse_expr(src).unwrap()).unwrap()
    }

    fn tm(&self, ctx: &mut Context, src: &str, ty: &Term) -> Term {
        self.ck().check(ctx, &parse_expr(src).unwrap(), ty).unwrap()
    }

    fn check_err(&self, ctx: &mut Context, src: &str, ty: &str) -> ErrorCode {
        let ty = self.ty(ctx, ty);
        self.ck()
            .check(ctx, &parse_expr(src).unwrap(), &ty)
            .unwrap_err()
            .code
    }

    /// Elaborate both sides against `ty` and compare them.
    fn convertible(&self, ctx: &mut Context, ty: &str, a: &str, b: &str) -> bool {
        let ty = self.ty(ctx, ty);
        let a = self.tm(ctx, a, &ty);
        let b = self.tm(ctx, b, &ty);
        self.ck().convert(ctx, &ty, &a, &b)
    }
}

const TRIVIAL: &str = "
const A : Type @ p;
const B : (x : A) -> Type @ p;
const a : A @ p;
";

const ARROW: &str = "
const A : Type @ p;
const a : A @ p;
const a2 : A @ p;
";

const TWO_LEVEL: &str = "
const A : Type @ f;
const a : A @ f;
";

const REFLECTIVE: &str = "
const A : Type @ p;
const C : Type @ q;
const c : C @ q;
const g : (u : U[mu] C) -> U[mu] C @ p;
def dra @ p : (u : U[mu] C) -> U[mu] C = \\u. shut[mu] (open[mu] u^eta);
";

#[test]
fn pi_beta() {
    let env = Env::new("trivial", TRIVIAL);
    let mut ctx = env.ctx("p", &[("y", None, "A")]);
    let ty = env.ty(&mut ctx, "A");
    let fun_ty = env.ty(&mut ctx, "A -> A");
    let id = env.tm(&mut ctx, "\\x. x", &fun_ty);
    let y = env.tm(&mut ctx, "y", &ty);
    let redex = Term::app(id, env.mt.identity(ctx.mode()), y.clone());
    assert!(env.ck().convert(&mut ctx, &ty, &redex, &y));
    let a = env.tm(&mut ctx, "a", &ty);
    assert!(!env.ck().convert(&mut ctx, &ty, &redex, &a));
}

#[test]
fn pi_eta() {
    let env = Env::new("trivial", TRIVIAL);
    let mut ctx = env.ctx("p", &[("f", None, "A -> A")]);
    assert!(env.convertible(&mut ctx, "A -> A", "\\x. f x", "f"));
    assert!(env.convertible(&mut ctx, "A -> A", "f", "\\x. f x"));
    assert!(!env.convertible(&mut ctx, "A -> A", "\\x. x", "f"));
}

#[test]
fn pi_eta_dependent() {
    let env = Env::new("trivial", TRIVIAL);
    let mut ctx = env.ctx("p", &[("h", None, "(x : A) -> B x")]);
    assert!(env.convertible(&mut ctx, "(x : A) -> B x", "\\z. h z", "h"));
}

#[test]
fn f_beta() {
    let env = Env::new("single_arrow", ARROW);
    let mut ctx = env.ctx("q", &[]);
    let boxed = env.ty(&mut ctx, "F[mu] A");
    let fun_ty = env.ty(&mut ctx, "F[mu] A -> F[mu] A");
    let rebox = env.tm(&mut ctx, "\\d. let[mu] mod x = d in mod[mu] x", &fun_ty);
    let value = env.tm(&mut ctx, "mod[mu] a", &boxed);
    let redex = Term::app(rebox, env.mt.identity(ctx.mode()), value.clone());
    assert!(env.ck().convert(&mut ctx, &boxed, &redex, &value));
    let other = env.tm(&mut ctx, "mod[mu] a2", &boxed);
    assert!(!env.ck().convert(&mut ctx, &boxed, &redex, &other));
}

#[test]
fn f_has_no_eta() {
    let env = Env::new("single_arrow", ARROW);
    let mut ctx = env.ctx("q", &[("d", None, "F[mu] A")]);
    assert!(!env.convertible(
        &mut ctx,
        "F[mu] A",
        "let[mu] mod x = d in mod[mu] x",
        "d"
    ));
    assert!(env.convertible(
        &mut ctx,
        "F[mu] A",
        "let[mu] mod x = d in mod[mu] x",
        "let[id:q, mu] mod z = d in mod[mu] z"
    ));
}

#[test]
fn u_beta() {
    let env = Env::new("2ltt", TWO_LEVEL);
    let mut ctx = env.ctx("f", &[]);
    let ty = env.ty(&mut ctx, "A");
    let iota = env.mt.mor("iota").unwrap();
    let a = Term::Const("a".into());
    let redex = Term::open(iota, Term::shut(iota, a.clone()));
    assert!(env.ck().convert(&mut ctx, &ty, &redex, &a));
}

#[test]
fn u_eta() {
    let env = Env::new("2ltt", TWO_LEVEL);
    let mut ctx = env.ctx("e", &[("u", None, "U[iota] A")]);
    assert!(env.convertible(&mut ctx, "U[iota] A", "shut[iota] (open[iota] u)", "u"));

    let env = Env::new("reflective", REFLECTIVE);
    let mut ctx = env.ctx("p", &[("u", None, "U[mu] C")]);
    assert!(env.convertible(&mut ctx, "U[mu] C", "shut[mu] (open[mu] u^eta)", "u"));
    assert!(env.convertible(&mut ctx, "U[mu] C", "dra u", "u"));
    assert!(!env.convertible(&mut ctx, "U[mu] C", "g u", "u"));
}

/// `M = shut(open(M[eta]))` for terms `M : U[mu] C`.
#[test]
fn dra_round_trip() {
    let env = Env::new("reflective", REFLECTIVE);
    let mt = &env.mt;
    let mu = mt.mor("mu").unwrap();
    let eta = mt.cell("eta").unwrap();
    let mut ctx = env.ctx("p", &[("u", None, "U[mu] C"), ("v", None, "U[mu] C")]);
    let ty = env.ty(&mut ctx, "U[mu] C");
    let samples = [
        "u",
        "shut[mu] c",
        "g (g v)",
        "dra (g u)",
        "shut[mu] (open[mu] (g u^eta))",
    ];
    for src in samples {
        let m = env.tm(&mut ctx, src, &ty);
        let keyed = apply_key(mt, &m, ctx.entries(), ctx.mode(), eta, 0);
        let round = Term::shut(mu, Term::open(mu, keyed));
        assert!(env.ck().convert(&mut ctx, &ty, &m, &round), "{src}");
    }
}

#[test]
fn conversion_is_reported_with_a_trace() {
    let env = Env::new("trivial", TRIVIAL);
    let mut ctx = env.ctx("p", &[("y", None, "A"), ("w", None, "B y")]);
    let expected = env.ty(&mut ctx, "B a");
    let err = env
        .ck()
        .check(&mut ctx, &parse_expr("w").unwrap(), &expected)
        .unwrap_err();
    assert_eq!(err.code, ErrorCode::ConversionFailure);
    assert!(!err.trace.is_empty());
}

#[test]
fn keys_must_match_locks() {
    let env = Env::new("reflective", REFLECTIVE);
    let mut ctx = env.ctx("p", &[("x", None, "A")]);
    assert_eq!(
        env.check_err(&mut ctx, "x^eta", "A"),
        ErrorCode::KeyTypeMismatch
    );
    let fty = env.ty(&mut ctx, "F[nu] (F[mu] A)");
    env.tm(&mut ctx, "mod[nu] (mod[mu] x^eta)", &fty);
    assert_eq!(
        env.check_err(&mut ctx, "mod[nu] (mod[mu] x)", "F[nu] (F[mu] A)"),
        ErrorCode::KeyTypeMismatch
    );
    assert_eq!(
        env.check_err(&mut ctx, "x^nope", "A"),
        ErrorCode::UnknownModality
    );
}

#[test]
fn variable_types_follow_the_key() {
    let env = Env::new("idempotent_comonad", "const A : Type @ p;");
    let mut ctx = env.ctx("p", &[("x", Some("mu"), "A")]);
    let (_, ty) = env
        .ck()
        .infer(&mut ctx, &parse_expr("x^eps").unwrap())
        .unwrap();
    assert_eq!(ty, Term::tconst("A"));
}

#[test]
fn error_codes_round_trip_by_name() {
    for code in ErrorCode::ALL {
        assert_eq!(ErrorCode::from_name(code.name()), Some(code));
    }
}

#[test]
fn verdicts_ignore_declaration_order() {
    let src = include_str!("../../fixtures/corpus/reflective_ok.matt");
    let mt = bundled::theory("reflective");
    let decls = parse_file(src).unwrap();
    let forward = check_program(&mt, &decls).verdicts();
    let mut reversed = decls.clone();
    reversed.reverse();
    assert_eq!(check_program(&mt, &reversed).verdicts(), forward);
}
