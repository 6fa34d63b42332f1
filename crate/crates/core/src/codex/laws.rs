//! Exhaustive law checks over the enumerated family categories.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::fincat::{limit, preserves_limit, ArrId, Cone, Diagram, FinCat, FinFunctor, LimitDiagram, ObjId, Search};

use super::adjoint::Transposer;
use super::dextrify::{dextrify, Colax, Structure};
use super::functors::reflect;
use super::{verify_family, verify_morphism, Chat, CodexError, Decomp, Family};

const TOTAL: &str = "tables of a validated mode theory are total";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    AssumptionLex,
    ChatLim,
    ChatLocks,
    ChatPsfr,
    ChatRadj,
    CodexAxioms,
    ReflectInclAdjunction,
    Smlock1Psnat,
    UniversalProperty,
    UpFf,
    UpLax,
    UpMate,
}

impl Law {
    /// Sorted by name.
    pub const ALL: [Law; 12] = [
        Law::AssumptionLex,
        Law::ChatLim,
        Law::ChatLocks,
        Law::ChatPsfr,
        Law::ChatRadj,
        Law::CodexAxioms,
        Law::ReflectInclAdjunction,
        Law::Smlock1Psnat,
        Law::UniversalProperty,
        Law::UpFf,
        Law::UpLax,
        Law::UpMate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::AssumptionLex => "assumption-lex",
            Law::ChatLim => "chat-lim",
            Law::ChatLocks => "chat-locks",
            Law::ChatPsfr => "chat-psfr",
            Law::ChatRadj => "chat-radj",
            Law::CodexAxioms => "codex-axioms",
            Law::ReflectInclAdjunction => "reflect-incl-adjunction",
            Law::Smlock1Psnat => "smlock1-psnat",
            Law::UniversalProperty => "universal-property",
            Law::UpFf => "up-ff",
            Law::UpLax => "up-lax",
            Law::UpMate => "up-mate",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = String;

    fn from_str(s: &str) -> Result<Law, String> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| format!("unknown law `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawOutcome {
    pub law: Law,
    pub status: LawStatus,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub diagram: String,
    pub outcomes: Vec<LawOutcome>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status == LawStatus::Pass)
    }

    pub fn status(&self, law: Law) -> Option<LawStatus> {
        self.outcomes.iter().find(|o| o.law == law).map(|o| o.status)
    }

    /// One JSON object per law, sorted by name, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            out.push_str(&serde_json::to_string(o).expect("outcomes serialize"));
            out.push('\n');
        }
        let failed = self.outcomes.iter().filter(|o| o.status == LawStatus::Fail).count();
        out.push_str(&format!(
            "{}: {} laws, {} passed, {} failed\n",
            self.diagram,
            self.outcomes.len(),
            self.outcomes.len() - failed,
            failed
        ));
        out
    }
}

#[derive(Debug, Clone)]
pub struct Options {
    pub only: Option<Law>,
    pub search: Search,
    pub jobs: usize,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            only: None,
            search: Search::default(),
            jobs: 1,
        }
    }
}

/// Enumerate every family category of `d` and check the selected laws.
/// Fails only when enumeration itself is impossible.
pub fn run_laws(d: &Diagram, opts: &Options) -> Result<LawReport, CodexError> {
    let chat = Chat::build(d, opts.search.cap)?;
    let st = Structure::new(&chat, &opts.search)?;
    let laws: Vec<Law> = match opts.only {
        Some(l) => vec![l],
        None => Law::ALL.to_vec(),
    };
    let jobs = opts.jobs.max(1);
    let mut outcomes: Vec<LawOutcome> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|j| {
                let (laws, st) = (&laws, &st);
                scope.spawn(move || {
                    laws.iter()
                        .skip(j)
                        .step_by(jobs)
                        .map(|&l| outcome(l, check(st, l)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            outcomes.extend(h.join().expect("law checks do not panic"));
        }
    });
    outcomes.sort_by_key(|o| o.law.name());
    Ok(LawReport {
        diagram: d.name.clone(),
        outcomes,
    })
}

fn outcome(law: Law, r: Result<(), String>) -> LawOutcome {
    match r {
        Ok(()) => LawOutcome {
            law,
            status: LawStatus::Pass,
            counterexample: None,
        },
        Err(c) => LawOutcome {
            law,
            status: LawStatus::Fail,
            counterexample: Some(c),
        },
    }
}

type Check = Result<(), String>;

fn check(st: &Structure<'_>, law: Law) -> Check {
    match law {
        Law::AssumptionLex => assumption_lex(st),
        Law::ChatLim => chat_lim(st),
        Law::ChatLocks => chat_locks(st),
        Law::ChatPsfr => chat_psfr(st),
        Law::ChatRadj => chat_radj(st),
        Law::CodexAxioms => codex_axioms(st),
        Law::ReflectInclAdjunction => reflect_incl(st),
        Law::Smlock1Psnat => psnat(st),
        Law::UniversalProperty => universal_property(st),
        Law::UpFf => up_ff(st),
        Law::UpLax => up_lax(st),
        Law::UpMate => up_mate(st),
    }
}

fn err(e: CodexError) -> String {
    e.to_string()
}

/// Empty, binary-product and cospan diagrams over a category.
fn test_diagrams(c: &FinCat) -> Vec<(String, LimitDiagram)> {
    let mut out = vec![("the empty diagram".to_owned(), LimitDiagram::new())];
    let objs: Vec<ObjId> = c.objects().collect();
    for (i, &x) in objs.iter().enumerate() {
        for &y in &objs[i..] {
            out.push((
                format!("the product of {} and {}", c.object_name(x), c.object_name(y)),
                LimitDiagram::discrete(vec![x, y]),
            ));
        }
    }
    let arrows: Vec<ArrId> = c.arrows().filter(|&f| !c.is_identity(f)).collect();
    for (i, &f) in arrows.iter().enumerate() {
        for &g in &arrows[i..] {
            if c.dst(f) != c.dst(g) {
                continue;
            }
            let mut dg = LimitDiagram::new();
            let (a, b, z) = (dg.node(c.src(f)), dg.node(c.src(g)), dg.node(c.dst(f)));
            dg.edge(a, z, f);
            dg.edge(b, z, g);
            out.push((format!("the pullback of {} and {}", c.arrow_name(f), c.arrow_name(g)), dg));
        }
    }
    out
}

fn assumption_lex(st: &Structure<'_>) -> Check {
    let d = &st.chat().diagram;
    let mt = &d.mt;
    let search = &st.adjoints.search;
    for mu in mt.morphisms().filter(|&m| !mt.is_identity(m)) {
        let (src, dst) = (d.source_cat(mu), d.target_cat(mu));
        for (what, dg) in test_diagrams(src) {
            if let Some(cone) = limit(src, &dg, search).map_err(|e| e.to_string())? {
                if !preserves_limit(d.functor(mu), dst, &dg, &cone, search).map_err(|e| e.to_string())? {
                    return Err(format!("{} does not preserve {}", mt.mor_name(mu), what));
                }
            }
        }
    }
    Ok(())
}

fn chat_lim(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    let search = &st.adjoints.search;
    for c in &chat.codex {
        let r = c.mode();
        for (what, dg) in test_diagrams(&c.cat) {
            let mut pointwise = true;
            for &mu in &c.shape.indices {
                let f = reflect(chat, mu);
                let img = dg.image(&f);
                if limit(d.source_cat(mu), &img, search).map_err(|e| e.to_string())?.is_none() {
                    pointwise = false;
                    break;
                }
            }
            if !pointwise {
                continue;
            }
            let cone = limit(&c.cat, &dg, search)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("no limit of {} at {}", what, mt.mode_name(r)))?;
            for &mu in &c.shape.indices {
                let f = reflect(chat, mu);
                if !preserves_limit(&f, d.source_cat(mu), &dg, &cone, search).map_err(|e| e.to_string())? {
                    return Err(format!("restriction to {} does not preserve {}", mt.mor_name(mu), what));
                }
                let to = &chat.at(mt.source(mu)).cat;
                if !preserves_limit(st.lock(mu), to, &dg, &cone, search).map_err(|e| e.to_string())? {
                    return Err(format!("lock {} does not preserve {}", mt.mor_name(mu), what));
                }
            }
        }
    }
    Ok(())
}

fn chat_locks(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let mt = &chat.diagram.mt;
    for mu in mt.morphisms() {
        let (from, to) = (&chat.at(mt.target(mu)).cat, &chat.at(mt.source(mu)).cat);
        st.lock(mu)
            .verify(from, to)
            .map_err(|e| format!("lock {}: {e}", mt.mor_name(mu)))?;
        if mt.is_identity(mu) && *st.lock(mu) != FinFunctor::identity(from) {
            return Err(format!("lock {} is not the identity", mt.mor_name(mu)));
        }
        for nu in mt.morphisms().filter(|&n| mt.target(n) == mt.source(mu)) {
            let both = mt.compose(mu, nu).expect(TOTAL);
            if *st.lock(both) != st.lock(nu).after(st.lock(mu)) {
                return Err(format!(
                    "lock of {} differs from the lock of {} after the lock of {}",
                    mt.mor_name(both),
                    mt.mor_name(nu),
                    mt.mor_name(mu)
                ));
            }
        }
    }
    let action = |b: crate::mode_theory::CellId| &st.actions[b.0 as usize];
    for beta in mt.cells() {
        let (mu, mu2) = (mt.cell_source(beta), mt.cell_target(beta));
        let (from, to) = (&chat.at(mt.target(mu)).cat, &chat.at(mt.source(mu)).cat);
        action(beta)
            .verify(from, to, st.lock(mu2), st.lock(mu))
            .map_err(|e| format!("action of {}: {e}", mt.cell_name(beta)))?;
        if beta == mt.identity_cell(mu) && action(beta).comp != (from.objects().map(|x| to.id(st.lock(mu).on_obj(x))).collect::<Vec<_>>()) {
            return Err(format!("action of {} is not an identity", mt.cell_name(beta)));
        }
        for later in mt.cells().filter(|&c| mt.cell_source(c) == mu2) {
            let v = mt.vcompose(later, beta).expect(TOTAL);
            if *action(v) != action(later).then(to, action(beta)) {
                return Err(format!("action of {} then {}", mt.cell_name(beta), mt.cell_name(later)));
            }
        }
        for outer in mt.morphisms().filter(|&o| mt.source(o) == mt.target(mu)) {
            let w = mt.whisker_left(outer, beta).expect(TOTAL);
            if *action(w) != action(beta).before(st.lock(outer)) {
                return Err(format!("action of {} whiskered by {}", mt.cell_name(beta), mt.mor_name(outer)));
            }
        }
        for inner in mt.morphisms().filter(|&i| mt.target(i) == mt.source(mu)) {
            let w = mt.whisker_right(beta, inner).expect(TOTAL);
            if *action(w) != action(beta).under(st.lock(inner)) {
                return Err(format!("action of {} whiskered by {}", mt.cell_name(beta), mt.mor_name(inner)));
            }
        }
    }
    Ok(())
}

fn chat_radj(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let mt = &chat.diagram.mt;
    for w in mt.morphisms() {
        let r = st.radj(w).map_err(err)?;
        let (from, to) = (&chat.at(mt.source(w)).cat, &chat.at(mt.target(w)).cat);
        r.functor
            .verify(from, to)
            .map_err(|e| format!("right adjoint of the lock {}: {e}", mt.mor_name(w)))?;
        r.transposer(chat)
            .verify()
            .map_err(|e| format!("lock {} and its right adjoint: {e}", mt.mor_name(w)))?;
    }
    Ok(())
}

fn chat_psfr(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let mt = &chat.diagram.mt;
    for w in mt.morphisms() {
        let r = st.radj(w).map_err(err)?;
        let (from, to) = (chat.at(mt.source(w)), &chat.at(mt.target(w)).cat);
        if mt.is_identity(w) {
            for x in from.cat.objects() {
                if !to.isomorphic(r.functor.on_obj(x), x) {
                    return Err(format!("right adjoint of {} moves {}", mt.mor_name(w), from.cat.object_name(x)));
                }
            }
        }
        for inner in mt.morphisms().filter(|&i| mt.target(i) == mt.source(w)) {
            let ri = st.radj(inner).map_err(err)?;
            let both = st.radj(mt.compose(w, inner).expect(TOTAL)).map_err(err)?;
            for x in chat.at(mt.source(inner)).cat.objects() {
                if !to.isomorphic(both.functor.on_obj(x), r.functor.on_obj(ri.functor.on_obj(x))) {
                    return Err(format!(
                        "right adjoints of {} and {} do not compose at {}",
                        mt.mor_name(w),
                        mt.mor_name(inner),
                        chat.at(mt.source(inner)).cat.object_name(x)
                    ));
                }
            }
        }
        if let Some(adj) = mt.adjoint(w) {
            let dagger = st.lock(adj.dagger);
            for x in from.cat.objects() {
                if !to.isomorphic(r.functor.on_obj(x), dagger.on_obj(x)) {
                    return Err(format!(
                        "right adjoint of {} differs from the lock of {} at {}",
                        mt.mor_name(w),
                        mt.mor_name(adj.dagger),
                        from.cat.object_name(x)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn codex_axioms(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    for c in &chat.codex {
        for x in c.cat.objects() {
            verify_family(d, &c.shape, c.family(x)).map_err(|e| format!("{}: {e}", c.cat.object_name(x)))?;
        }
        for f in c.cat.arrows() {
            let (s, t) = (c.family(c.cat.src(f)), c.family(c.cat.dst(f)));
            verify_morphism(d, &c.shape, s, t, &c.arrows[f.index()]).map_err(|e| format!("{}: {e}", c.cat.arrow_name(f)))?;
        }
        let all = brute_force_families(d, c, st.adjoints.search.cap);
        if let Some(all) = all {
            if all.len() != c.objects.len() || all.iter().any(|fam| c.find(fam).is_none()) {
                return Err(format!(
                    "enumeration at {} found {} families, brute force {}",
                    d.mt.mode_name(c.mode()),
                    c.objects.len(),
                    all.len()
                ));
            }
        }
    }
    Ok(())
}

/// Every assignment of components and maps that passes the axiom checker,
/// or `None` when there are more than `cap` candidates.
fn brute_force_families(d: &Diagram, c: &super::Codex, cap: u128) -> Option<Vec<Family>> {
    let shape = &c.shape;
    let cats: Vec<&FinCat> = shape.indices.iter().map(|&m| d.source_cat(m)).collect();
    let mut out = Vec::new();
    let mut tuples: Vec<Vec<ObjId>> = vec![Vec::new()];
    for cat in &cats {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                cat.objects().map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
        if tuples.len() as u128 > cap {
            return None;
        }
    }
    let mut budget = cap;
    for comps in tuples {
        let options: Vec<&[ArrId]> = shape
            .decomps
            .iter()
            .map(|k| {
                let cat = d.source_cat(k.nu);
                cat.hom(comps[shape.index(k.nu)], d.functor(k.rho).on_obj(comps[shape.index(k.mu)]))
            })
            .collect();
        let mut maps: Vec<Vec<ArrId>> = vec![Vec::new()];
        for opt in options {
            maps = maps
                .into_iter()
                .flat_map(|m| {
                    opt.iter().map(move |&a| {
                        let mut m = m.clone();
                        m.push(a);
                        m
                    })
                })
                .collect();
            budget = budget.checked_sub(maps.len() as u128)?;
        }
        for maps in maps {
            let fam = Family {
                comps: comps.clone(),
                maps,
            };
            if verify_family(d, shape, &fam).is_ok() {
                out.push(fam);
            }
        }
    }
    Some(out)
}

fn reflect_incl(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    for w in mt.morphisms() {
        let inc = st.adjoints.incl(w).map_err(err)?;
        let top = &chat.at(mt.target(w)).cat;
        let base = d.source_cat(w);
        inc.functor
            .verify(base, top)
            .map_err(|e| format!("right adjoint of restriction to {}: {e}", mt.mor_name(w)))?;
        let left = reflect(chat, w);
        Transposer {
            a: top,
            b: base,
            left: &left,
            right: &inc.functor,
            counit: &inc.counit,
        }
        .verify()
        .map_err(|e| format!("restriction to {}: {e}", mt.mor_name(w)))?;
    }
    Ok(())
}

fn up_ff(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    for r in mt.modes() {
        let inc = st.adjoints.incl(mt.identity(r)).map_err(err)?;
        let (base, top) = (d.cat(r), &chat.at(r).cat);
        for x in base.objects() {
            if !base.is_iso(inc.counit[x.index()]) {
                return Err(format!("counit at {} is not invertible", base.object_name(x)));
            }
            for y in base.objects() {
                let mut image: Vec<ArrId> = base.hom(x, y).iter().map(|&f| inc.functor.on_arr(f)).collect();
                image.sort();
                image.dedup();
                if image.len() != base.hom(x, y).len() || image.len() != top.hom(inc.on_obj(x), inc.on_obj(y)).len() {
                    return Err(format!(
                        "inclusion at {} is not fully faithful on {} -> {}",
                        mt.mode_name(r),
                        base.object_name(x),
                        base.object_name(y)
                    ));
                }
            }
        }
    }
    Ok(())
}

fn all_decomps<'a>(chat: &'a Chat) -> impl Iterator<Item = Decomp> + 'a {
    chat.codex.iter().flat_map(|c| c.shape.decomps.iter().copied())
}

fn up_mate(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    for k in all_decomps(chat) {
        let mate = st.adjoints.mate(k).map_err(err)?;
        let (at_mu, at_nu) = (st.adjoints.incl(k.mu).map_err(err)?, st.adjoints.incl(k.nu).map_err(err)?);
        let top = chat.at(mt.target(k.mu));
        let base = d.source_cat(k.mu);
        let f = d.functor(k.rho);
        for g in base.arrows() {
            let (x, y) = (base.src(g), base.dst(g));
            let lhs = top.cat.compose(at_nu.functor.on_arr(f.on_arr(g)), mate.at(x));
            let rhs = top.cat.compose(mate.at(y), at_mu.functor.on_arr(g));
            if lhs != rhs {
                return Err(format!("mate of {} is not natural at {}", mt.cell_name(k.alpha), base.arrow_name(g)));
            }
        }
        if k.mu == k.nu && mt.is_identity(k.rho) && k.alpha == mt.identity_cell(k.mu) {
            for x in base.objects() {
                if !top.cat.is_identity(mate.at(x)) {
                    return Err(format!("mate of {} is not an identity", mt.cell_name(k.alpha)));
                }
            }
        }
        let left = reflect(chat, k.mu);
        let adj = Transposer {
            a: &top.cat,
            b: base,
            left: &left,
            right: &at_mu.functor,
            counit: &at_mu.counit,
        };
        let cq = d.source_cat(k.nu);
        for x in top.cat.objects() {
            let base_x = top.comp(x, k.mu);
            let eta = adj.unit(x).ok_or_else(|| format!("no unit at {}", top.cat.object_name(x)))?;
            let v = top.cat.compose(mate.at(base_x), eta);
            let back = cq.compose(at_nu.counit[f.on_obj(base_x).index()], top.arrow_comp(v, k.nu));
            if back != top.map(x, &k) {
                return Err(format!(
                    "mate of {} does not recover the structure map of {}",
                    mt.cell_name(k.alpha),
                    top.cat.object_name(x)
                ));
            }
        }
    }
    Ok(())
}

fn up_lax(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    for c in &chat.codex {
        for k1 in &c.shape.decomps {
            let m1 = st.adjoints.mate(*k1).map_err(err)?;
            for k2 in c.shape.decomps.iter().filter(|k| k.mu == k1.nu) {
                let m2 = st.adjoints.mate(*k2).map_err(err)?;
                let k3 = Decomp {
                    mu: k1.mu,
                    nu: k2.nu,
                    rho: mt.compose(k2.rho, k1.rho).expect(TOTAL),
                    alpha: mt
                        .vcompose(mt.whisker_right(k2.alpha, k1.rho).expect(TOTAL), k1.alpha)
                        .expect(TOTAL),
                };
                let m3 = st.adjoints.mate(k3).map_err(err)?;
                for x in d.source_cat(k1.mu).objects() {
                    let fx = d.functor(k1.rho).on_obj(x);
                    if c.cat.compose(m2.at(fx), m1.at(x)) != m3.at(x) {
                        return Err(format!(
                            "mates of {} and {} do not compose at {}",
                            mt.cell_name(k1.alpha),
                            mt.cell_name(k2.alpha),
                            d.source_cat(k1.mu).object_name(x)
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn psnat(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    for w in mt.morphisms() {
        let r = st.radj(w).map_err(err)?;
        let (from, to) = (chat.at(mt.source(w)), chat.at(mt.target(w)));
        let cs = d.cat(mt.target(w));
        let one_r = mt.identity(mt.source(w));
        let one_s = mt.identity(mt.target(w));
        let cmp: Vec<ArrId> = from
            .cat
            .objects()
            .map(|x| r.comparison(&st.adjoints, x))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for x in from.cat.objects() {
            if !cs.is_iso(cmp[x.index()]) {
                return Err(format!(
                    "comparison for {} at {} is not invertible",
                    mt.mor_name(w),
                    from.cat.object_name(x)
                ));
            }
        }
        for g in from.cat.arrows() {
            let (x, y) = (from.cat.src(g), from.cat.dst(g));
            let lhs = cs.compose(d.functor(w).on_arr(from.arrow_comp(g, one_r)), cmp[x.index()]);
            let rhs = cs.compose(cmp[y.index()], to.arrow_comp(r.functor.on_arr(g), one_s));
            if lhs != rhs {
                return Err(format!("comparison for {} is not natural at {}", mt.mor_name(w), from.cat.arrow_name(g)));
            }
        }
    }
    Ok(())
}

/// The constant functors at terminal objects, when they form a strict
/// transformation of the diagram.
pub fn terminal_transformation(chat: &Chat, search: &Search) -> Option<Vec<FinFunctor>> {
    let d = &chat.diagram;
    let mt = &d.mt;
    let mut tops = Vec::new();
    for p in mt.modes() {
        let cone: Cone = limit(d.cat(p), &LimitDiagram::new(), search).ok()??;
        tops.push(cone.apex);
    }
    for mu in mt.morphisms() {
        if d.functor(mu).on_obj(tops[mt.source(mu).0 as usize]) != tops[mt.target(mu).0 as usize] {
            return None;
        }
    }
    for a in mt.cells() {
        let p = mt.source(mt.cell_source(a));
        let q = mt.target(mt.cell_source(a));
        if !d.cat(q).is_identity(d.nat(a).at(tops[p.0 as usize])) {
            return None;
        }
    }
    Some(
        mt.modes()
            .map(|p| {
                let (c, top) = (d.cat(p), tops[p.0 as usize]);
                FinFunctor::constant(c, c, top)
            })
            .collect(),
    )
}

fn universal_property(st: &Structure<'_>) -> Check {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    let base = Colax::reflect(st).map_err(err)?;
    let mut cases = vec![("restriction", base.clone())];
    if let Some(h) = terminal_transformation(chat, &st.adjoints.search) {
        cases.push(("the terminal transformation after restriction", base.then(chat, &h)));
    }
    for (what, g) in cases {
        let hat = dextrify(st, &g).map_err(|e| format!("{what}: {e}"))?;
        for r in mt.modes() {
            let c = chat.at(r);
            let f = &hat.at[r.0 as usize];
            f.verify(&c.cat, &c.cat).map_err(|e| format!("{what}: {e}"))?;
            let back = reflect(chat, mt.identity(r)).after(f);
            for x in c.cat.objects() {
                if !d.cat(r).isomorphic(back.on_obj(x), g.mode(r).on_obj(x)) {
                    return Err(format!("{what}: restriction after the factorization differs at {}", c.cat.object_name(x)));
                }
            }
            for mu in mt.morphisms().filter(|&m| mt.target(m) == r) {
                let q = mt.source(mu);
                if st.lock(mu).after(f) != hat.at[q.0 as usize].after(st.lock(mu)) {
                    return Err(format!("{what}: factorization does not commute with the lock {}", mt.mor_name(mu)));
                }
            }
        }
        let again = Colax::reflect_after(st, &hat.at).map_err(|e| format!("{what}: {e}"))?;
        let twice = dextrify(st, &again).map_err(|e| format!("{what}: {e}"))?;
        for r in mt.modes() {
            let c = chat.at(r);
            for x in c.cat.objects() {
                if !c.cat.isomorphic(twice.at[r.0 as usize].on_obj(x), hat.at[r.0 as usize].on_obj(x)) {
                    return Err(format!("{what}: round trip differs at {}", c.cat.object_name(x)));
                }
                if what == "restriction" && !c.cat.isomorphic(hat.at[r.0 as usize].on_obj(x), x) {
                    return Err(format!("factorization of restriction moves {}", c.cat.object_name(x)));
                }
            }
        }
    }
    Ok(())
}
