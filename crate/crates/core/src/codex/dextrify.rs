//! The universal property: a colax map into the diagram factors through
//! the family categories.

use crate::fincat::{ArrId, FinFunctor, FinNat, ObjId, Search};
use crate::mode_theory::{ModeId, MorId};

use super::adjoint::{Adjoints, RightAdjoint};
use super::functors::{cell_action, lock_functor, reflect};
use super::{Chat, CodexError, Decomp, Family};

/// Everything derived from a [`Chat`] that the laws and the universal
/// property need: locks, cell actions and both kinds of right adjoint.
#[derive(Debug)]
pub struct Structure<'c> {
    pub adjoints: Adjoints<'c>,
    pub locks: Vec<FinFunctor>,
    pub actions: Vec<FinNat>,
    radj: Vec<Result<RightAdjoint, CodexError>>,
}

impl<'c> Structure<'c> {
    pub fn new(chat: &'c Chat, search: &Search) -> Result<Structure<'c>, CodexError> {
        let mt = &chat.diagram.mt;
        let locks = mt.morphisms().map(|m| lock_functor(chat, m)).collect::<Result<_, _>>()?;
        let actions = mt.cells().map(|c| cell_action(chat, c)).collect::<Result<_, _>>()?;
        let adjoints = Adjoints::new(chat, search);
        let radj = mt.morphisms().map(|w| RightAdjoint::new(&adjoints, w)).collect();
        Ok(Structure {
            adjoints,
            locks,
            actions,
            radj,
        })
    }

    pub fn chat(&self) -> &'c Chat {
        self.adjoints.chat
    }

    pub fn lock(&self, m: MorId) -> &FinFunctor {
        &self.locks[m.0 as usize]
    }

    pub fn radj(&self, w: MorId) -> Result<&RightAdjoint, CodexError> {
        self.radj[w.0 as usize].as_ref().map_err(Clone::clone)
    }
}

/// A colax map from the family categories to the diagram: a functor per
/// mode and, for each `rho : p -> q`, components `G_q(R_rho x) -> C_rho(G_p x)`
/// where `R_rho` is the right adjoint of the lock.
#[derive(Debug, Clone)]
pub struct Colax {
    pub at: Vec<FinFunctor>,
    pub cells: Vec<Vec<ArrId>>,
}

impl Colax {
    /// Restriction to the identity component.
    pub fn reflect(st: &Structure<'_>) -> Result<Colax, CodexError> {
        let chat = st.chat();
        let mt = &chat.diagram.mt;
        let at = mt.modes().map(|p| reflect(chat, mt.identity(p))).collect();
        let mut cells = Vec::new();
        for rho in mt.morphisms() {
            let r = st.radj(rho)?;
            let src = chat.at(mt.source(rho));
            cells.push(src.cat.objects().map(|x| r.comparison(&st.adjoints, x)).collect::<Result<_, _>>()?);
        }
        Ok(Colax { at, cells })
    }

    /// Postcompose with a strict transformation of the diagram, given by one
    /// endofunctor per mode.
    pub fn then(&self, chat: &Chat, h: &[FinFunctor]) -> Colax {
        let mt = &chat.diagram.mt;
        Colax {
            at: self.at.iter().zip(h).map(|(g, h)| h.after(g)).collect(),
            cells: mt
                .morphisms()
                .zip(&self.cells)
                .map(|(rho, row)| {
                    let hq = &h[mt.target(rho).0 as usize];
                    row.iter().map(|&a| hq.on_arr(a)).collect()
                })
                .collect(),
        }
    }

    /// Restriction to the identity component after a map `f` of family
    /// categories; `f` must commute with the locks.
    pub fn reflect_after(st: &Structure<'_>, f: &[FinFunctor]) -> Result<Colax, CodexError> {
        let chat = st.chat();
        let mt = &chat.diagram.mt;
        let base = Colax::reflect(st)?;
        let at: Vec<FinFunctor> = base.at.iter().zip(f).map(|(g, f)| g.after(f)).collect();
        let mut cells = Vec::new();
        for rho in mt.morphisms() {
            let (p, q) = (mt.source(rho), mt.target(rho));
            let r = st.radj(rho)?;
            let tr = r.transposer(chat);
            let (fp, fq) = (&f[p.0 as usize], &f[q.0 as usize]);
            let mut row = Vec::new();
            for x in chat.at(p).cat.objects() {
                // F_q(R x) -> R(F_p x), transposed from F_p(counit_x).
                let rx = r.functor.on_obj(x);
                let kappa = tr
                    .transpose(fq.on_obj(rx), fp.on_obj(x), fp.on_arr(r.counit[x.index()]))
                    .ok_or_else(|| CodexError::NotColax(format!("no comparison for {}", mt.mor_name(rho))))?;
                let cq = chat.diagram.cat(q);
                let down = base.at[q.0 as usize].on_arr(kappa);
                row.push(cq.compose(base.cells[rho.0 as usize][fp.on_obj(x).index()], down));
            }
            cells.push(row);
        }
        Ok(Colax { at, cells })
    }

    pub fn mode(&self, p: ModeId) -> &FinFunctor {
        &self.at[p.0 as usize]
    }
}

/// The factorization of a colax map through the family categories: one
/// functor per mode.
#[derive(Debug, Clone)]
pub struct Dextrified {
    pub at: Vec<FinFunctor>,
}

pub fn dextrify(st: &Structure<'_>, g: &Colax) -> Result<Dextrified, CodexError> {
    let chat = st.chat();
    let d = &chat.diagram;
    let mt = &d.mt;
    let mut at = Vec::new();
    for r in mt.modes() {
        let c = chat.at(r);
        let shape = &c.shape;
        let mut obj = Vec::new();
        for x in c.cat.objects() {
            let comps: Vec<ObjId> = shape
                .indices
                .iter()
                .map(|&mu| g.mode(mt.source(mu)).on_obj(st.lock(mu).on_obj(x)))
                .collect();
            let mut maps = Vec::new();
            for k in &shape.decomps {
                maps.push(structure_map(st, g, x, k)?);
            }
            let fam = Family { comps, maps };
            obj.push(c.find(&fam).ok_or_else(|| {
                CodexError::NotAnObject(format!("factorization at {}", c.cat.object_name(x)))
            })?);
        }
        let mut arr = Vec::new();
        for f in c.cat.arrows() {
            let comps: Vec<ArrId> = shape
                .indices
                .iter()
                .map(|&mu| g.mode(mt.source(mu)).on_arr(st.lock(mu).on_arr(f)))
                .collect();
            let (s, t) = (obj[c.cat.src(f).index()], obj[c.cat.dst(f).index()]);
            arr.push(c.find_arrow(s, t, &comps).ok_or_else(|| {
                CodexError::NotAMorphism(format!("factorization on {}", c.cat.arrow_name(f)))
            })?);
        }
        at.push(FinFunctor { obj, arr });
    }
    Ok(Dextrified { at })
}

fn structure_map(st: &Structure<'_>, g: &Colax, x: ObjId, k: &Decomp) -> Result<ArrId, CodexError> {
    let chat = st.chat();
    let mt = &chat.diagram.mt;
    let q = mt.source(k.nu);
    let r = st.radj(k.rho)?;
    let tr = r.transposer(chat);
    let (at_mu, at_nu) = (st.lock(k.mu).on_obj(x), st.lock(k.nu).on_obj(x));
    let act = st.actions[k.alpha.0 as usize].at(x);
    let f = tr
        .transpose(at_nu, at_mu, act)
        .ok_or_else(|| CodexError::NotColax(format!("no transpose of the action of {}", mt.cell_name(k.alpha))))?;
    let cq = chat.diagram.cat(q);
    Ok(cq.compose(g.cells[k.rho.0 as usize][at_mu.index()], g.mode(q).on_arr(f)))
}
