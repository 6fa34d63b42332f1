//! Right adjoints of the lock functors, and a generic check of adjunctions
//! presented by a counit.

use crate::fincat::{factorizations, limit, ArrId, Cone, FinCat, FinFunctor, LimitDiagram, ObjId, Search};
use crate::mode_theory::MorId;

use super::functors::{lock_functor, Incl, Mate};
use super::{Chat, CodexError, Decomp};

const TOTAL: &str = "tables of a validated mode theory are total";

/// Every right adjoint of restriction, computed once per morphism. A
/// morphism whose adjoint cannot be built keeps its error.
#[derive(Debug)]
pub struct Adjoints<'c> {
    pub chat: &'c Chat,
    pub search: Search,
    incl: Vec<Result<Incl, CodexError>>,
}

impl<'c> Adjoints<'c> {
    pub fn new(chat: &'c Chat, search: &Search) -> Adjoints<'c> {
        let incl = chat
            .diagram
            .mt
            .morphisms()
            .map(|w| Incl::new(chat, w, search))
            .collect();
        Adjoints {
            chat,
            search: search.clone(),
            incl,
        }
    }

    pub fn incl(&self, w: MorId) -> Result<&Incl, CodexError> {
        self.incl[w.0 as usize].as_ref().map_err(Clone::clone)
    }

    pub fn mate(&self, k: Decomp) -> Result<Mate, CodexError> {
        Mate::new(self.chat, k, self.incl(k.mu)?, self.incl(k.nu)?)
    }
}

/// An adjunction `left -| right` between `a` and `b` given by its counit
/// `left . right => id` on `b`.
#[derive(Debug, Clone)]
pub struct Transposer<'x> {
    pub a: &'x FinCat,
    pub b: &'x FinCat,
    pub left: &'x FinFunctor,
    pub right: &'x FinFunctor,
    pub counit: &'x [ArrId],
}

impl Transposer<'_> {
    /// `u : x -> right(y)` to `counit . left(u)`.
    pub fn lower(&self, y: ObjId, u: ArrId) -> ArrId {
        self.b.compose(self.counit[y.index()], self.left.on_arr(u))
    }

    /// The unique `u` with `lower(y, u) = f`, for `f : left(x) -> y`.
    pub fn transpose(&self, x: ObjId, y: ObjId, f: ArrId) -> Option<ArrId> {
        let hits: Vec<ArrId> = self
            .a
            .hom(x, self.right.on_obj(y))
            .iter()
            .copied()
            .filter(|&u| self.lower(y, u) == f)
            .collect();
        match hits.as_slice() {
            [u] => Some(*u),
            _ => None,
        }
    }

    pub fn unit(&self, x: ObjId) -> Option<ArrId> {
        let lx = self.left.on_obj(x);
        self.transpose(x, lx, self.b.id(lx))
    }

    /// Naturality of the counit, bijectivity of transposition and the
    /// second triangle identity.
    pub fn verify(&self) -> Result<(), String> {
        for y in self.b.objects() {
            let e = self.counit[y.index()];
            if self.b.src(e) != self.left.on_obj(self.right.on_obj(y)) || self.b.dst(e) != y {
                return Err(format!("counit at {} has the wrong endpoints", self.b.object_name(y)));
            }
        }
        for f in self.b.arrows() {
            let (x, y) = (self.b.src(f), self.b.dst(f));
            let lhs = self.b.compose(f, self.counit[x.index()]);
            let rhs = self.b.compose(self.counit[y.index()], self.left.on_arr(self.right.on_arr(f)));
            if lhs != rhs {
                return Err(format!("counit is not natural at {}", self.b.arrow_name(f)));
            }
        }
        for x in self.a.objects() {
            let lx = self.left.on_obj(x);
            for y in self.b.objects() {
                let ups = self.a.hom(x, self.right.on_obj(y));
                let downs = self.b.hom(lx, y);
                let mut hit = vec![false; downs.len()];
                for &u in ups {
                    let f = self.lower(y, u);
                    let i = downs.iter().position(|&g| g == f).expect("lowered arrows stay in the hom");
                    if hit[i] {
                        return Err(format!(
                            "two arrows {} -> {} lower to {}",
                            self.a.object_name(x),
                            self.a.object_name(self.right.on_obj(y)),
                            self.b.arrow_name(f)
                        ));
                    }
                    hit[i] = true;
                }
                if let Some(i) = hit.iter().position(|&h| !h) {
                    return Err(format!("{} has no transpose", self.b.arrow_name(downs[i])));
                }
            }
        }
        for y in self.b.objects() {
            let ry = self.right.on_obj(y);
            let eta = self.unit(ry).ok_or("missing unit")?;
            if self.a.compose(self.right.on_arr(self.counit[y.index()]), eta) != self.a.id(ry) {
                return Err(format!("triangle identity fails at {}", self.b.object_name(y)));
            }
        }
        Ok(())
    }
}

/// The right adjoint of the lock of `w : r -> s`, from families at `r` to
/// families at `s`. Each value is a limit of right adjoints of restriction
/// glued along the structure maps and their mates.
#[derive(Debug, Clone)]
pub struct RightAdjoint {
    pub w: MorId,
    pub functor: FinFunctor,
    pub lock: FinFunctor,
    /// `lock(functor(x)) -> x` at `r`.
    pub counit: Vec<ArrId>,
    pub cones: Vec<Cone>,
}

impl RightAdjoint {
    pub fn new(adj: &Adjoints<'_>, w: MorId) -> Result<RightAdjoint, CodexError> {
        let chat = adj.chat;
        let d = &chat.diagram;
        let mt = &d.mt;
        let (r, s) = (mt.source(w), mt.target(w));
        let (from, to) = (chat.at(r), chat.at(s));
        let shape = &from.shape;
        let post = |m: MorId| mt.compose(w, m).expect(TOTAL);

        let mut mates = Vec::new();
        for k in &shape.decomps {
            mates.push(adj.mate(Decomp {
                mu: post(k.mu),
                nu: post(k.nu),
                rho: k.rho,
                alpha: mt.whisker_left(w, k.alpha).expect(TOTAL),
            })?);
        }
        let n = shape.indices.len();
        let glue = |x: ObjId| -> Result<LimitDiagram, CodexError> {
            let mut dg = LimitDiagram::new();
            for &mu in &shape.indices {
                dg.node(adj.incl(post(mu))?.on_obj(from.comp(x, mu)));
            }
            for (i, k) in shape.decomps.iter().enumerate() {
                let at_nu = adj.incl(post(k.nu))?;
                let base = from.comp(x, k.mu);
                let c = dg.node(at_nu.on_obj(d.functor(k.rho).on_obj(base)));
                dg.edge(shape.index(k.nu), c, at_nu.functor.on_arr(from.map(x, k)));
                dg.edge(shape.index(k.mu), c, mates[i].at(base));
            }
            Ok(dg)
        };

        let mut cones = Vec::new();
        for x in from.cat.objects() {
            let cone = limit(&to.cat, &glue(x)?, &adj.search)?.ok_or_else(|| {
                CodexError::LimitAbsent(format!("right adjoint of the lock {} at {}", mt.mor_name(w), from.cat.object_name(x)))
            })?;
            cones.push(cone);
        }

        let mut arr = Vec::new();
        for g in from.cat.arrows() {
            let (x, y) = (from.cat.src(g), from.cat.dst(g));
            let src = &cones[x.index()];
            let mut legs = Vec::with_capacity(src.legs.len());
            for (i, &mu) in shape.indices.iter().enumerate() {
                let h = adj.incl(post(mu))?.functor.on_arr(from.arrow_comp(g, mu));
                legs.push(to.cat.compose(h, src.legs[i]));
            }
            for (i, k) in shape.decomps.iter().enumerate() {
                let f = d.functor(k.rho).on_arr(from.arrow_comp(g, k.mu));
                let h = adj.incl(post(k.nu))?.functor.on_arr(f);
                legs.push(to.cat.compose(h, src.legs[n + i]));
            }
            let through = Cone { apex: src.apex, legs };
            match factorizations(&to.cat, &cones[y.index()], &through).as_slice() {
                [u] => arr.push(*u),
                _ => {
                    return Err(CodexError::LimitAbsent(format!(
                        "right adjoint of the lock {} on {}",
                        mt.mor_name(w),
                        from.cat.arrow_name(g)
                    )))
                }
            }
        }
        let functor = FinFunctor {
            obj: cones.iter().map(|c| c.apex).collect(),
            arr,
        };

        let lock = lock_functor(chat, w)?;
        let mut counit = Vec::new();
        for x in from.cat.objects() {
            let apex = functor.on_obj(x);
            let mut comps = Vec::new();
            for (i, &mu) in shape.indices.iter().enumerate() {
                let inc = adj.incl(post(mu))?;
                let leg = to.arrow_comp(cones[x.index()].legs[i], post(mu));
                comps.push(d.source_cat(mu).compose(inc.counit[from.comp(x, mu).index()], leg));
            }
            counit.push(from.find_arrow(lock.on_obj(apex), x, &comps).ok_or_else(|| {
                CodexError::NotAMorphism(format!("counit of the lock {} at {}", mt.mor_name(w), from.cat.object_name(x)))
            })?);
        }
        Ok(RightAdjoint {
            w,
            functor,
            lock,
            counit,
            cones,
        })
    }

    pub fn transposer<'x>(&'x self, chat: &'x Chat) -> Transposer<'x> {
        let mt = &chat.diagram.mt;
        Transposer {
            a: &chat.at(mt.target(self.w)).cat,
            b: &chat.at(mt.source(self.w)).cat,
            left: &self.lock,
            right: &self.functor,
            counit: &self.counit,
        }
    }

    /// The comparison from the identity component of the value at `x` to
    /// `w` applied to the identity component of `x`.
    pub fn comparison(&self, adj: &Adjoints<'_>, x: ObjId) -> Result<ArrId, CodexError> {
        let chat = adj.chat;
        let d = &chat.diagram;
        let mt = &d.mt;
        let (r, s) = (mt.source(self.w), mt.target(self.w));
        let (from, to) = (chat.at(r), chat.at(s));
        let one_r = mt.identity(r);
        let one_s = mt.identity(s);
        let inc = adj.incl(self.w)?;
        let base = from.comp(x, one_r);
        let leg = to.arrow_comp(self.cones[x.index()].legs[from.shape.index(one_r)], one_s);
        let i = to.shape.index(one_s);
        let j = inc.commas[i]
            .find(self.w, mt.identity_cell(self.w))
            .expect("w lies under itself");
        let proj = inc.cones[base.index()][i].legs[j.index()];
        Ok(d.cat(s).compose(proj, leg))
    }
}

