//! One line per acceptance criterion, with pinned time budgets. Exits
//! non-zero when any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use matt::bundled;
use matt::checker::{check_program, expected_verdicts, Checker, ErrorCode, Signature};
use matt::codex::{dextrify, reflect, run_laws, terminal_transformation, Chat, Colax, LawStatus, Options, Structure};
use matt::fincat::{ObjId, Search};
use matt::mode_theory::ModeTheory;
use matt::syntax::surface::{Decl, DeclKind};
use matt::syntax::{apply_key, parse_expr, parse_file, Context, Term};

const THEORIES_BUDGET: Duration = Duration::from_secs(1);
const POSITIVES_BUDGET: Duration = Duration::from_secs(1);
const SHAPE_BUDGET: Duration = Duration::from_secs(1);
const LAWS_BUDGET: Duration = Duration::from_secs(30);
const UNIVERSAL_BUDGET: Duration = Duration::from_secs(10);

const SEEDS: [u64; 5] = [1, 7, 42, 1234, 99991];

struct Line {
    ok: bool,
    detail: String,
}

fn line(ok: bool, detail: impl Into<String>) -> Line {
    Line {
        ok,
        detail: detail.into(),
    }
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> Line {
    let start = Instant::now();
    let r = f();
    let took = start.elapsed();
    let within = budget.is_none_or(|b| took < b);
    let budget = budget.map(|b| format!(" (budget {b:?})")).unwrap_or_default();
    match r {
        Ok(d) => line(within, format!("{d}; {took:.2?}{budget}")),
        Err(e) => line(false, format!("{e}; {took:.2?}{budget}")),
    }
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "matt"))
        .collect();
    files.sort();
    files
}

struct Loaded {
    file: String,
    src: String,
    mt: ModeTheory,
    decls: Vec<Decl>,
}

fn load(path: &Path) -> Loaded {
    let src = fs::read_to_string(path).unwrap();
    let decls = parse_file(&src).unwrap();
    let header = decls
        .iter()
        .find_map(|d| match &d.kind {
            DeclKind::ModeTheory(p) => Some(p.clone()),
            _ => None,
        })
        .unwrap();
    let mt = ModeTheory::from_json(&fs::read_to_string(path.parent().unwrap().join(header)).unwrap()).unwrap();
    Loaded {
        file: path.file_name().unwrap().to_string_lossy().into_owned(),
        src,
        mt,
        decls,
    }
}

/// `(file, declaration) -> (expected, got)`.
fn corpus_verdicts() -> BTreeMap<(String, String), (Option<ErrorCode>, Option<ErrorCode>)> {
    let mut out = BTreeMap::new();
    for path in corpus() {
        let l = load(&path);
        let expected = expected_verdicts(&l.src, &l.decls).unwrap();
        let got = check_program(&l.mt, &l.decls).verdicts();
        for (name, want) in expected {
            let have = got.get(&name).cloned().flatten();
            out.insert((l.file.clone(), name), (want, have));
        }
    }
    out
}

fn theories() -> Result<String, String> {
    for name in bundled::THEORY_NAMES {
        let r = bundled::theory(name).validate();
        if !r.is_valid() {
            return Err(format!("{name} is invalid: {r}"));
        }
    }
    let muts = common::mutations();
    for (label, axiom, src) in &muts {
        let r = common::load(src).validate();
        if r.violations.first().map(|v| v.axiom) != Some(*axiom) {
            return Err(format!("{label}: expected {axiom}, got {r}"));
        }
    }
    Ok(format!("{} theories valid, {} mutations name their axiom", bundled::THEORY_NAMES.len(), muts.len()))
}

fn positives() -> Result<String, String> {
    let v = corpus_verdicts();
    let pos: Vec<_> = v.iter().filter(|(_, (want, _))| want.is_none()).collect();
    if let Some(((f, n), (_, got))) = pos.iter().find(|(_, (_, got))| got.is_some()) {
        return Err(format!("{f}: {n} failed with {got:?}"));
    }
    let framed = v.get(&("meet_semilattice_ok.matt".into(), "framed_dep".into()));
    if framed != Some(&(None, None)) {
        return Err("framed elimination in the meet-semilattice theory did not check".into());
    }
    if pos.len() < 25 {
        return Err(format!("only {} positives", pos.len()));
    }
    Ok(format!("{} positive declarations check, including the framed elimination", pos.len()))
}

fn negatives() -> Result<String, String> {
    let v = corpus_verdicts();
    let neg: Vec<_> = v.iter().filter(|(_, (want, _))| want.is_some()).collect();
    if let Some(((f, n), (want, got))) = neg.iter().find(|(_, (want, got))| want != got) {
        return Err(format!("{f}: {n} expected {want:?}, got {got:?}"));
    }
    let must = [
        ("2ltt_bad.matt", "fibrant_replacement", ErrorCode::NotSharp),
        ("2ltt_bad.matt", "modal_function", ErrorCode::NotSharp),
        ("reflective_bad.matt", "unit_without_locks", ErrorCode::KeyTypeMismatch),
    ];
    for (f, n, code) in must {
        if v.get(&(f.into(), n.into())) != Some(&(Some(code), Some(code))) {
            return Err(format!("{f}: {n} is not rejected with {code}"));
        }
    }
    if neg.len() < 15 {
        return Err(format!("only {} negatives", neg.len()));
    }
    Ok(format!("{} negative declarations fail with their predicted codes", neg.len()))
}

struct Env {
    mt: ModeTheory,
    sig: Signature,
}

impl Env {
    fn new(theory: &str, src: &str) -> Result<Env, String> {
        let mt = bundled::theory(theory);
        let decls = parse_file(src).map_err(|e| e.to_string())?;
        let report = check_program(&mt, &decls);
        if let Some(e) = report.errors().next() {
            return Err(e.to_string());
        }
        Ok(Env {
            mt,
            sig: report.signature,
        })
    }

    fn ck(&self) -> Checker<'_> {
        Checker::new(&self.mt, &self.sig)
    }

    fn ctx(&self, mode: &str, binders: &[(&str, &str)]) -> Context {
        let mut ctx = Context::empty(self.mt.mode(mode).unwrap());
        for &(name, ty) in binders {
            let ty = self.ty(&mut ctx, ty);
            let id = self.mt.identity(ctx.mode());
            ctx.push_var(&self.mt, name, id, ty).unwrap();
        }
        ctx
    }

    fn ty(&self, ctx: &mut Context, src: &str) -> Term {
        self.ck().check_type(ctx, &parse_expr(src).unwrap()).unwrap()
    }

    fn tm(&self, ctx: &mut Context, src: &str, ty: &Term) -> Term {
        self.ck().check(ctx, &parse_expr(src).unwrap(), ty).unwrap()
    }

    fn conv(&self, ctx: &mut Context, ty: &str, a: &str, b: &str) -> bool {
        let ty = self.ty(ctx, ty);
        let (a, b) = (self.tm(ctx, a, &ty), self.tm(ctx, b, &ty));
        self.ck().convert(ctx, &ty, &a, &b)
    }
}

fn conversions() -> Result<String, String> {
    let mut passed = Vec::new();
    let mut expect = |what: &str, ok: bool| -> Result<(), String> {
        if ok {
            passed.push(what.to_owned());
            Ok(())
        } else {
            Err(format!("{what} failed"))
        }
    };

    let trivial = Env::new("trivial", "const A : Type @ p; const a : A @ p;")?;
    let mut ctx = trivial.ctx("p", &[("y", "A"), ("f", "A -> A")]);
    let ty = trivial.ty(&mut ctx, "A");
    let fun_ty = trivial.ty(&mut ctx, "A -> A");
    let id = trivial.tm(&mut ctx, "\\x. x", &fun_ty);
    let y = trivial.tm(&mut ctx, "y", &ty);
    let redex = Term::app(id, trivial.mt.identity(ctx.mode()), y.clone());
    expect("pi beta", trivial.ck().convert(&mut ctx, &ty, &redex, &y))?;
    expect("pi eta", trivial.conv(&mut ctx, "A -> A", "\\x. f x", "f"))?;

    let arrow = Env::new("single_arrow", "const A : Type @ p; const a : A @ p;")?;
    let mut ctx = arrow.ctx("q", &[("d", "F[mu] A")]);
    let boxed = arrow.ty(&mut ctx, "F[mu] A");
    let fun_ty = arrow.ty(&mut ctx, "F[mu] A -> F[mu] A");
    let rebox = arrow.tm(&mut ctx, "\\e. let[mu] mod x = e in mod[mu] x", &fun_ty);
    let value = arrow.tm(&mut ctx, "mod[mu] a", &boxed);
    let redex = Term::app(rebox, arrow.mt.identity(ctx.mode()), value.clone());
    expect("F beta", arrow.ck().convert(&mut ctx, &boxed, &redex, &value))?;
    expect("no F eta", !arrow.conv(&mut ctx, "F[mu] A", "let[mu] mod x = d in mod[mu] x", "d"))?;

    let two = Env::new("2ltt", "const A : Type @ f; const a : A @ f;")?;
    let mut ctx = two.ctx("f", &[]);
    let ty = two.ty(&mut ctx, "A");
    let iota = two.mt.mor("iota").unwrap();
    let a = Term::Const("a".into());
    let redex = Term::open(iota, Term::shut(iota, a.clone()));
    expect("U beta", two.ck().convert(&mut ctx, &ty, &redex, &a))?;
    let mut ctx = two.ctx("e", &[("u", "U[iota] A")]);
    expect("U eta", two.conv(&mut ctx, "U[iota] A", "shut[iota] (open[iota] u)", "u"))?;

    let refl = Env::new(
        "reflective",
        "const C : Type @ q; const c : C @ q;
         const g : (u : U[mu] C) -> U[mu] C @ p;
         def dra @ p : (u : U[mu] C) -> U[mu] C = \\u. shut[mu] (open[mu] u^eta);",
    )?;
    let mt = &refl.mt;
    let (mu, eta) = (mt.mor("mu").unwrap(), mt.cell("eta").unwrap());
    let mut ctx = refl.ctx("p", &[("u", "U[mu] C"), ("v", "U[mu] C")]);
    let ty = refl.ty(&mut ctx, "U[mu] C");
    let samples = ["u", "shut[mu] c", "g (g v)", "dra (g u)", "shut[mu] (open[mu] (g u^eta))"];
    for src in samples {
        let m = refl.tm(&mut ctx, src, &ty);
        let keyed = apply_key(mt, &m, ctx.entries(), ctx.mode(), eta, 0);
        let round = Term::shut(mu, Term::open(mu, keyed));
        expect(&format!("round trip of {src}"), refl.ck().convert(&mut ctx, &ty, &m, &round))?;
    }
    Ok(format!("{} conversion checks, including {} round trips", passed.len(), samples.len()))
}

fn shape() -> Result<String, String> {
    let d = bundled::diagram("single_arrow");
    let chat = Chat::build(&d, Search::default().cap).map_err(|e| e.to_string())?;
    let mt = &d.mt;
    let (p, q, mu) = (mt.mode("p").unwrap(), mt.mode("q").unwrap(), mt.mor("mu").unwrap());
    let n = chat.at(q).objects.len();
    let (cq, cp, f) = (d.cat(q), d.cat(p), d.functor(mu));
    let oracle: usize = cq
        .objects()
        .flat_map(|a| cp.objects().map(move |b| (a, b)))
        .map(|(a, b)| cq.hom(a, f.on_obj(b)).len())
        .sum();
    if n != 3 || oracle != 3 {
        return Err(format!("{n} families at q, comma count {oracle}"));
    }
    let proj = reflect(&chat, mt.identity(p));
    let hat = &chat.at(p).cat;
    proj.verify(hat, cp).map_err(|e| e.to_string())?;
    let bijective = |v: &[u32], len: usize| {
        let mut v = v.to_vec();
        v.sort();
        v.dedup();
        v.len() == len
    };
    let objs: Vec<u32> = proj.obj.iter().map(|o| o.0).collect();
    let arrs: Vec<u32> = proj.arr.iter().map(|a| a.0).collect();
    if hat.object_count() != cp.object_count()
        || hat.arrow_count() != cp.arrow_count()
        || !bijective(&objs, cp.object_count())
        || !bijective(&arrs, cp.arrow_count())
    {
        return Err("families at p are not isomorphic to the base category".into());
    }
    Ok("3 families at q, matching the comma count; restriction at p is an isomorphism".into())
}

fn all_laws() -> Result<String, String> {
    let mut n = 0;
    for name in bundled::DIAGRAM_NAMES {
        let report = run_laws(&bundled::diagram(name), &Options::default()).map_err(|e| e.to_string())?;
        if let Some(o) = report.outcomes.iter().find(|o| o.status == LawStatus::Fail) {
            return Err(format!("{name}: {} failed: {}", o.law, o.counterexample.clone().unwrap_or_default()));
        }
        n += report.outcomes.len();
    }
    Ok(format!("{n} law checks pass on {} diagrams", bundled::DIAGRAM_NAMES.len()))
}

fn universal() -> Result<String, String> {
    let mut checked = 0;
    for name in ["single_arrow", "idempotent_comonad"] {
        let d = bundled::diagram(name);
        let chat = Chat::build(&d, Search::default().cap).map_err(|e| e.to_string())?;
        let search = Search::default();
        let st = Structure::new(&chat, &search).map_err(|e| e.to_string())?;
        let base = Colax::reflect(&st).map_err(|e| e.to_string())?;
        let top = terminal_transformation(&chat, &search).ok_or(format!("{name}: no terminal transformation"))?;
        for g in [base.clone(), base.then(&chat, &top)] {
            let hat = dextrify(&st, &g).map_err(|e| e.to_string())?;
            let again = dextrify(&st, &Colax::reflect_after(&st, &hat.at).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            for r in d.mt.modes() {
                let c = chat.at(r);
                let proj = reflect(&chat, d.mt.identity(r));
                for x in c.cat.objects() {
                    let y: ObjId = hat.at[r.0 as usize].on_obj(x);
                    if !d.cat(r).isomorphic(proj.on_obj(y), g.mode(r).on_obj(x)) {
                        return Err(format!("{name}: restriction after the factorization differs"));
                    }
                    if !c.cat.isomorphic(again.at[r.0 as usize].on_obj(x), y) {
                        return Err(format!("{name}: second round trip differs"));
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} objects pass both round trips"))
}

fn metamorphic() -> Result<String, String> {
    let mut runs = 0;
    let names: Vec<&str> = bundled::DIAGRAM_NAMES.iter().copied().chain(["non_lex"]).collect();
    for name in names {
        let d = bundled::diagram(name);
        let plain = run_laws(&d, &Options::default()).map_err(|e| e.to_string())?;
        for seed in SEEDS {
            let mut perm: Vec<ObjId> = (0..64).map(ObjId).collect();
            perm.shuffle(&mut StdRng::seed_from_u64(seed));
            let opts = Options {
                search: Search::default().permuted(perm),
                ..Options::default()
            };
            let shuffled = run_laws(&d, &opts).map_err(|e| e.to_string())?;
            let verdicts = |r: &matt::codex::LawReport| r.outcomes.iter().map(|o| (o.law, o.status)).collect::<Vec<_>>();
            if verdicts(&plain) != verdicts(&shuffled) {
                return Err(format!("{name}: verdicts change under seed {seed}"));
            }
            runs += 1;
        }
    }
    for path in corpus() {
        let l = load(&path);
        let plain = check_program(&l.mt, &l.decls).verdicts();
        for seed in SEEDS {
            let mut decls = l.decls.clone();
            decls.shuffle(&mut StdRng::seed_from_u64(seed));
            if check_program(&l.mt, &decls).verdicts() != plain {
                return Err(format!("{}: verdicts change under seed {seed}", l.file));
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} permuted runs agree"))
}

fn main() -> ExitCode {
    let results = [
        ("1 mode-theory axioms", timed(Some(THEORIES_BUDGET), theories)),
        ("2 checker positives", timed(Some(POSITIVES_BUDGET), positives)),
        ("3 checker negatives", timed(None, negatives)),
        ("4 conversion suite", timed(None, conversions)),
        ("5 family category shape", timed(Some(SHAPE_BUDGET), shape)),
        ("6 law suite", timed(Some(LAWS_BUDGET), all_laws)),
        ("7 universal property", timed(Some(UNIVERSAL_BUDGET), universal)),
        ("8 metamorphic", timed(None, metamorphic)),
    ];
    let mut ok = true;
    for (name, l) in &results {
        println!("{} {name}: {}", if l.ok { "PASS" } else { "FAIL" }, l.detail);
        ok &= l.ok;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
