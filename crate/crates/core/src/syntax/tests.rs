use proptest::prelude::*;

use super::surface::DeclKind;
use super::*;
use crate::bundled;
use crate::checker::{check_program, Checker};

#[test]
fn locks_merge_and_cancel() {
    let mt = bundled::theory("reflective");
    let (p, q) = (mt.mode("p").unwrap(), mt.mode("q").unwrap());
    let (mu, nu) = (mt.mor("mu").unwrap(), mt.mor("nu").unwrap());

    let mut ctx = Context::empty(q);
    let first = ctx.push_lock(&mt, mu).unwrap();
    assert_eq!(ctx.mode(), p);
    assert_eq!(ctx.entries(), &[Entry::Lock(mu)]);
    let second = ctx.push_lock(&mt, nu).unwrap();
    assert_eq!(ctx.mode(), q);
    assert!(ctx.entries().is_empty(), "mu after nu is the identity");
    ctx.pop_lock(second);
    assert_eq!(ctx.entries(), &[Entry::Lock(mu)]);
    ctx.pop_lock(first);
    assert_eq!(ctx, Context::empty(q));

    let mut ctx = Context::empty(p);
    ctx.push_lock(&mt, nu).unwrap();
    ctx.push_lock(&mt, mu).unwrap();
    assert_eq!(ctx.entries(), &[Entry::Lock(mt.mor("numu").unwrap())]);
    assert!(ctx.push_lock(&mt, mu).is_err());
}

#[test]
fn identity_locks_vanish() {
    let mt = bundled::theory("trivial");
    let p = mt.mode("p").unwrap();
    let mut ctx = Context::empty(p);
    ctx.push_lock(&mt, mt.identity(p)).unwrap();
    assert!(ctx.entries().is_empty());
}

#[test]
fn lock_suffixes_count_from_the_end() {
    let mt = bundled::theory("reflective");
    let (p, q) = (mt.mode("p").unwrap(), mt.mode("q").unwrap());
    let (mu, nu) = (mt.mor("mu").unwrap(), mt.mor("nu").unwrap());
    let a = Term::tconst("A");
    let mut ctx = Context::empty(p);
    ctx.push_var(&mt, "x", mt.identity(p), a.clone()).unwrap();
    ctx.push_lock(&mt, nu).unwrap();
    ctx.push_var(&mt, "y", mt.identity(q), a.clone()).unwrap();
    ctx.push_lock(&mt, mu).unwrap();
    assert_eq!(
        lock_suffixes(&mt, ctx.entries(), ctx.mode()),
        vec![mt.mor("numu").unwrap(), mu]
    );
    assert_eq!(ctx.locks_after(&mt, 0), mt.mor("numu").unwrap());
    assert_eq!(locks_of(&mt, ctx.entries(), ctx.mode()), mt.mor("numu").unwrap());
}

#[test]
fn variables_need_tangible_annotations() {
    let mt = bundled::theory("reflective");
    let p = mt.mode("p").unwrap();
    let mut ctx = Context::empty(p);
    let err = ctx
        .push_var(&mt, "x", mt.mor("numu").unwrap(), Term::tconst("A"))
        .unwrap_err();
    assert!(matches!(err, ContextError::NotTangible(_)));
}

#[test]
fn surface_printing_reparses() {
    for name in ["reflective_ok", "meet_semilattice_ok", "2ltt_ok", "trivial_ok"] {
        let path = format!("{}/fixtures/corpus/{name}.matt", env!("CARGO_MANIFEST_DIR"));
        let src = std::fs::read_to_string(path).unwrap();
        for d in parse_file(&src).unwrap() {
            let printed = d.to_string();
            let again = parse_file(&printed).unwrap_or_else(|e| panic!("{printed}: {e}"));
            assert_eq!(again.len(), 1, "{printed}");
            assert_eq!(again[0].to_string(), printed);
        }
    }
}

/// Printing an elaborated body and elaborating it again is the identity.
#[test]
fn core_printing_reelaborates() {
    for (theory, name) in [
        ("reflective", "reflective_ok"),
        ("meet_semilattice", "meet_semilattice_ok"),
        ("single_arrow", "single_arrow_ok"),
        ("idempotent_comonad", "idempotent_comonad_ok"),
    ] {
        let mt = bundled::theory(theory);
        let path = format!("{}/fixtures/corpus/{name}.matt", env!("CARGO_MANIFEST_DIR"));
        let decls = parse_file(&std::fs::read_to_string(path).unwrap()).unwrap();
        let report = check_program(&mt, &decls);
        assert!(report.is_ok());
        let sig = &report.signature;
        let ck = Checker::new(&mt, sig);
        for d in &decls {
            let DeclKind::Def { name, .. } = &d.kind else {
                continue;
            };
            let g = sig.get(name).unwrap();
            let crate::checker::GlobalKind::Def { ty, body } = &g.kind else {
                unreachable!()
            };
            let mut ctx = Context::empty(g.mode);
            let shown = show(&mt, body, &[]);
            let reparsed = parse_expr(&shown).unwrap();
            let again = ck.check(&mut ctx, &reparsed, ty).unwrap();
            assert_eq!(&again, body, "{name}: {shown}");
        }
    }
}

#[test]
fn cell_keys_parse() {
    let k = parse_cell_key("(mu <| eta) * eta |> nu").unwrap();
    assert_eq!(parse_cell_key(&k.to_string()).unwrap(), k);
    assert_eq!(
        parse_cell_key("mu <| eta |> nu").unwrap().to_string(),
        parse_cell_key("mu <| (eta |> nu)").unwrap().to_string()
    );
}

/// Untyped terms over the one-mode trivial theory whose free variables are
/// below `scope`.
fn arb_term(scope: usize) -> impl Strategy<Value = Term> {
    let mt = bundled::theory("trivial");
    let id = mt.identity(mt.mode("p").unwrap());
    let key = mt.identity_cell(id);
    let leaf = prop_oneof![
        (0..scope.max(1)).prop_map(move |l| if scope == 0 {
            Term::Const("c".into())
        } else {
            Term::var(l, key)
        }),
        Just(Term::tconst("A")),
    ];
    leaf.prop_recursive(4, 24, 3, move |inner| {
        prop_oneof![
            inner.clone().prop_map(|b| Term::lam("z", b)),
            (inner.clone(), inner.clone()).prop_map(move |(f, a)| Term::app(f, id, a)),
            (inner.clone(), inner.clone()).prop_map(move |(d, c)| Term::pi("z", id, d, c)),
            inner.prop_map(move |b| Term::mod_intro(id, b)),
        ]
    })
}

/// Levels mentioned by a term after accounting for binders, as a check
/// that the generator stays in scope. Binders may make levels >= scope legal.
fn weaken_all(t: &Term, by: usize) -> Term {
    let mt = bundled::theory("trivial");
    shift(&mt, t, mt.mode("p").unwrap(), 0, by)
}

proptest! {
    #[test]
    fn shifting_by_zero_is_identity(t in arb_term(3)) {
        let mt = bundled::theory("trivial");
        prop_assert_eq!(shift(&mt, &t, mt.mode("p").unwrap(), 1, 0), t);
    }

    #[test]
    fn shifts_compose(t in arb_term(3), a in 0usize..3, b in 0usize..3) {
        let mt = bundled::theory("trivial");
        let p = mt.mode("p").unwrap();
        let twice = shift(&mt, &shift(&mt, &t, p, 0, a), p, 0, b);
        prop_assert_eq!(twice, weaken_all(&t, a + b));
    }

    #[test]
    fn identity_key_is_identity(t in arb_term(3)) {
        let mt = bundled::theory("trivial");
        let p = mt.mode("p").unwrap();
        let id = mt.identity(p);
        let mut ctx = Context::empty(p);
        for name in ["a", "b", "c"] {
            ctx.push_var(&mt, name, id, Term::tconst("A")).unwrap();
        }
        let keyed = apply_key(&mt, &t, ctx.entries(), p, mt.identity_cell(id), 0);
        prop_assert_eq!(keyed, t);
    }

    /// Substituting into a weakened term gives the term back.
    #[test]
    fn instantiating_a_fresh_variable_is_identity(t in arb_term(2), v in arb_term(2)) {
        let mt = bundled::theory("trivial");
        let p = mt.mode("p").unwrap();
        let id = mt.identity(p);
        let mut ctx = Context::empty(p);
        for name in ["a", "b"] {
            ctx.push_var(&mt, name, id, Term::tconst("A")).unwrap();
        }
        let weak = shift(&mt, &t, p, 2, 1);
        let back = instantiate(&mt, &weak, ctx.entries(), p, &[(v, id)], id);
        prop_assert_eq!(back, t);
    }

    /// Substituting a variable for the last variable renames it.
    #[test]
    fn instantiating_with_a_variable_renames(t in arb_term(3)) {
        let mt = bundled::theory("trivial");
        let p = mt.mode("p").unwrap();
        let id = mt.identity(p);
        let key = mt.identity_cell(id);
        let mut ctx = Context::empty(p);
        for name in ["a", "b"] {
            ctx.push_var(&mt, name, id, Term::tconst("A")).unwrap();
        }
        let renamed = instantiate(&mt, &t, ctx.entries(), p, &[(Term::var(0, key), id)], id);
        let direct = rename_top(&t, 2, 0);
        prop_assert_eq!(renamed, direct);
    }
}

/// Oracle for renaming the variable at `top` to `to` in a one-mode term:
/// plain structural recursion. Levels do not shift under binders.
fn rename_top(t: &Term, top: usize, to: usize) -> Term {
    match t {
        Term::Var { level, key } => {
            let level = if *level == top {
                to
            } else if *level > top {
                level - 1
            } else {
                *level
            };
            Term::Var { level, key: *key }
        }
        Term::Lam { name, body } => Term::lam(name.clone(), rename_top(body, top, to)),
        Term::App { fun, lock, arg } => Term::app(
            rename_top(fun, top, to),
            *lock,
            rename_top(arg, top, to),
        ),
        Term::Pi { name, mu, dom, cod } => Term::pi(
            name.clone(),
            *mu,
            rename_top(dom, top, to),
            rename_top(cod, top, to),
        ),
        Term::ModIntro { mu, body } => Term::mod_intro(*mu, rename_top(body, top, to)),
        other => other.clone(),
    }
}
