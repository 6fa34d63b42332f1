//! Locks, restriction to a component, the right adjoints of restriction,
//! and their mates.

use crate::fincat::{comma, factorizations, limit, ArrId, CommaCat, Cone, FinFunctor, FinNat, LimitDiagram, ObjId, Search};
use crate::mode_theory::{CellId, MorId};

use super::{Chat, CodexError, Decomp, Family};

const TOTAL: &str = "tables of a validated mode theory are total";

/// The lock functor for `mu : q -> r`, from families at `r` to families
/// at `q`: it reindexes along postcomposition with `mu`.
pub fn lock_functor(chat: &Chat, mu: MorId) -> Result<FinFunctor, CodexError> {
    let mt = &chat.diagram.mt;
    let (from, to) = (chat.at(mt.target(mu)), chat.at(mt.source(mu)));
    let post = |nu: MorId| mt.compose(mu, nu).expect(TOTAL);
    let mut obj = Vec::with_capacity(from.objects.len());
    for x in from.cat.objects() {
        let fam = Family {
            comps: to.shape.indices.iter().map(|&nu| from.comp(x, post(nu))).collect(),
            maps: to
                .shape
                .decomps
                .iter()
                .map(|k| {
                    from.map(
                        x,
                        &Decomp {
                            mu: post(k.mu),
                            nu: post(k.nu),
                            rho: k.rho,
                            alpha: mt.whisker_left(mu, k.alpha).expect(TOTAL),
                        },
                    )
                })
                .collect(),
        };
        obj.push(to.find(&fam).ok_or_else(|| {
            CodexError::NotAnObject(format!("lock {} of {}", mt.mor_name(mu), from.cat.object_name(x)))
        })?);
    }
    let mut arr = Vec::with_capacity(from.arrows.len());
    for f in from.cat.arrows() {
        let comps: Vec<ArrId> = to.shape.indices.iter().map(|&nu| from.arrow_comp(f, post(nu))).collect();
        let (s, t) = (obj[from.cat.src(f).index()], obj[from.cat.dst(f).index()]);
        arr.push(to.find_arrow(s, t, &comps).ok_or_else(|| {
            CodexError::NotAMorphism(format!("lock {} of {}", mt.mor_name(mu), from.cat.arrow_name(f)))
        })?);
    }
    Ok(FinFunctor { obj, arr })
}

/// For `beta : mu => mu'`, the transformation from the lock of `mu'` to the
/// lock of `mu`.
pub fn cell_action(chat: &Chat, beta: CellId) -> Result<FinNat, CodexError> {
    let mt = &chat.diagram.mt;
    let (mu, mu2) = (mt.cell_source(beta), mt.cell_target(beta));
    let (from, to) = (chat.at(mt.target(mu)), chat.at(mt.source(mu)));
    let (lo, hi) = (lock_functor(chat, mu)?, lock_functor(chat, mu2)?);
    let mut comp = Vec::new();
    for x in from.cat.objects() {
        let comps: Vec<ArrId> = to
            .shape
            .indices
            .iter()
            .map(|&rho| {
                from.map(
                    x,
                    &Decomp {
                        mu: mt.compose(mu, rho).expect(TOTAL),
                        nu: mt.compose(mu2, rho).expect(TOTAL),
                        rho: mt.identity(mt.source(rho)),
                        alpha: mt.whisker_right(beta, rho).expect(TOTAL),
                    },
                )
            })
            .collect();
        comp.push(
            to.find_arrow(hi.on_obj(x), lo.on_obj(x), &comps)
                .ok_or_else(|| CodexError::NotAMorphism(format!("action of {} at {}", mt.cell_name(beta), from.cat.object_name(x))))?,
        );
    }
    Ok(FinNat { comp })
}

/// Restriction to the component at `mu : p -> r`.
pub fn reflect(chat: &Chat, mu: MorId) -> FinFunctor {
    let c = chat.at(chat.diagram.mt.target(mu));
    FinFunctor {
        obj: c.cat.objects().map(|x| c.comp(x, mu)).collect(),
        arr: c.cat.arrows().map(|f| c.arrow_comp(f, mu)).collect(),
    }
}

/// The right adjoint of restriction along `w : r -> s`, computed as the
/// pointwise right Kan extension: its component at `nu` is a limit over
/// the comma category of `w` over `nu`.
#[derive(Debug, Clone)]
pub struct Incl {
    pub w: MorId,
    pub functor: FinFunctor,
    /// `(incl X)^w -> X`, one per object of the category at `r`.
    pub counit: Vec<ArrId>,
    /// One per index of the target shape.
    pub commas: Vec<CommaCat>,
    /// `cones[x][nu]`.
    pub cones: Vec<Vec<Cone>>,
}

impl Incl {
    pub fn new(chat: &Chat, w: MorId, search: &Search) -> Result<Incl, CodexError> {
        let d = &chat.diagram;
        let mt = &d.mt;
        let (r, s) = (mt.source(w), mt.target(w));
        let base = d.cat(r);
        let target = chat.at(s);
        let shape = &target.shape;
        let commas: Vec<CommaCat> = shape
            .indices
            .iter()
            .map(|&nu| comma(mt, w, nu))
            .collect::<Result<_, _>>()?;

        let shape_of = |x: ObjId, i: usize| {
            let k = &commas[i];
            let mut dg = LimitDiagram::new();
            for &(sigma, _) in &k.objects {
                dg.node(d.functor(sigma).on_obj(x));
            }
            for a in &k.arrows {
                dg.edge(a.src.index(), a.dst.index(), d.nat(a.cell).at(x));
            }
            dg
        };

        let mut cones = Vec::new();
        for x in base.objects() {
            let mut row = Vec::new();
            for (i, &nu) in shape.indices.iter().enumerate() {
                let cat = d.source_cat(nu);
                let cone = limit(cat, &shape_of(x, i), search)?.ok_or_else(|| {
                    CodexError::LimitAbsent(format!(
                        "right adjoint of {} at {} over {}",
                        mt.mor_name(w),
                        base.object_name(x),
                        mt.mor_name(nu)
                    ))
                })?;
                row.push(cone);
            }
            cones.push(row);
        }

        // Comparison arrow into `rho` applied to the limit at `mu`.
        let induced = |row: &[Cone], k: &Decomp| -> Result<ArrId, CodexError> {
            let (im, inu) = (shape.index(k.mu), shape.index(k.nu));
            let cat = d.source_cat(k.nu);
            let tgt = row[im].image(d.functor(k.rho));
            let legs = commas[im]
                .objects
                .iter()
                .map(|&(sigma, beta)| {
                    let sigma2 = mt.compose(k.rho, sigma).expect(TOTAL);
                    let beta2 = mt
                        .vcompose(mt.whisker_right(k.alpha, sigma).expect(TOTAL), beta)
                        .expect(TOTAL);
                    let j = commas[inu].find(sigma2, beta2).expect("comma objects are closed under decomposition");
                    row[inu].legs[j.index()]
                })
                .collect();
            let src = Cone {
                apex: row[inu].apex,
                legs,
            };
            match factorizations(cat, &tgt, &src).as_slice() {
                [u] => Ok(*u),
                _ => Err(CodexError::NotPreserved(mt.mor_name(k.rho).to_owned())),
            }
        };

        let mut obj = Vec::new();
        let mut counit = Vec::new();
        let iw = shape.index(w);
        let unit_obj = commas[iw]
            .find(mt.identity(r), mt.identity_cell(w))
            .expect("the identity lies over itself");
        for x in base.objects() {
            let row = &cones[x.index()];
            let fam = Family {
                comps: row.iter().map(|c| c.apex).collect(),
                maps: shape.decomps.iter().map(|k| induced(row, k)).collect::<Result<_, _>>()?,
            };
            obj.push(target.find(&fam).ok_or_else(|| {
                CodexError::NotAnObject(format!("right adjoint of {} at {}", mt.mor_name(w), base.object_name(x)))
            })?);
            counit.push(row[iw].legs[unit_obj.index()]);
        }

        let mut arr = Vec::new();
        for f in base.arrows() {
            let (x, y) = (base.src(f), base.dst(f));
            let mut comps = Vec::new();
            for (i, &nu) in shape.indices.iter().enumerate() {
                let cat = d.source_cat(nu);
                let from = &cones[x.index()][i];
                let src = Cone {
                    apex: from.apex,
                    legs: commas[i]
                        .objects
                        .iter()
                        .zip(&from.legs)
                        .map(|(&(sigma, _), &l)| cat.compose(d.functor(sigma).on_arr(f), l))
                        .collect(),
                };
                match factorizations(cat, &cones[y.index()][i], &src).as_slice() {
                    [u] => comps.push(*u),
                    _ => return Err(CodexError::LimitAbsent(format!("right adjoint of {} on {}", mt.mor_name(w), base.arrow_name(f)))),
                }
            }
            arr.push(
                target
                    .find_arrow(obj[x.index()], obj[y.index()], &comps)
                    .ok_or_else(|| CodexError::NotAMorphism(format!("right adjoint of {} on {}", mt.mor_name(w), base.arrow_name(f))))?,
            );
        }
        Ok(Incl {
            w,
            functor: FinFunctor { obj, arr },
            counit,
            commas,
            cones,
        })
    }

    pub fn on_obj(&self, x: ObjId) -> ObjId {
        self.functor.on_obj(x)
    }

    /// The unique `u : y -> incl(x)` with `counit . u^w = f`, for
    /// `f : y^w -> x`. `None` when there is no such arrow or more than one.
    pub fn transpose(&self, chat: &Chat, y: ObjId, x: ObjId, f: ArrId) -> Option<ArrId> {
        let d = &chat.diagram;
        let target = chat.at(d.mt.target(self.w));
        let base = d.source_cat(self.w);
        let hits: Vec<ArrId> = target
            .cat
            .hom(y, self.on_obj(x))
            .iter()
            .copied()
            .filter(|&u| base.compose(self.counit[x.index()], target.arrow_comp(u, self.w)) == f)
            .collect();
        match hits.as_slice() {
            [u] => Some(*u),
            _ => None,
        }
    }
}

/// The mate of `alpha : mu => nu . rho`: a transformation from the right
/// adjoint at `mu` to the right adjoint at `nu` after `rho`.
#[derive(Debug, Clone)]
pub struct Mate {
    pub decomp: Decomp,
    /// One component per object of the category at the source of `mu`.
    pub comp: Vec<ArrId>,
}

impl Mate {
    pub fn new(chat: &Chat, k: Decomp, at_mu: &Incl, at_nu: &Incl) -> Result<Mate, CodexError> {
        let d = &chat.diagram;
        let mt = &d.mt;
        let target = chat.at(mt.target(k.mu));
        let cat = d.source_cat(k.nu);
        let f = d.functor(k.rho);
        let mut comp = Vec::new();
        for x in d.source_cat(k.mu).objects() {
            let y = at_mu.on_obj(x);
            let arrow = cat.compose(f.on_arr(at_mu.counit[x.index()]), target.map(y, &k));
            comp.push(at_nu.transpose(chat, y, f.on_obj(x), arrow).ok_or_else(|| {
                CodexError::NoTranspose(format!("mate of {} at {}", mt.cell_name(k.alpha), d.source_cat(k.mu).object_name(x)))
            })?);
        }
        Ok(Mate { decomp: k, comp })
    }

    pub fn at(&self, x: ObjId) -> ArrId {
        self.comp[x.index()]
    }
}
