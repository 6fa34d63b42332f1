//! The co-dextrification of a finite strict diagram: each category of
//! oplax families is enumerated exactly, and the right adjoints, mates and
//! the universal property are computed on the enumerated tables.

mod adjoint;
mod dextrify;
mod functors;
pub mod laws;

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::fincat::{ArrId, Diagram, FinCat, FinCatError, ObjId};
use crate::mode_theory::{CellId, ModeId, MorId};

pub use adjoint::{Adjoints, RightAdjoint, Transposer};
pub use dextrify::{dextrify, Colax, Dextrified, Structure};
pub use functors::{cell_action, lock_functor, reflect, Incl, Mate};
pub use laws::{run_laws, terminal_transformation, Law, LawOutcome, LawReport, LawStatus, Options};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodexError {
    #[error(transparent)]
    Cat(#[from] FinCatError),
    #[error("no limit for {0}")]
    LimitAbsent(String),
    #[error("{0} does not preserve a required limit")]
    NotPreserved(String),
    #[error("{0} is not an object of the co-dextrification")]
    NotAnObject(String),
    #[error("{0} is not a morphism of the co-dextrification")]
    NotAMorphism(String),
    #[error("no transpose: {0}")]
    NoTranspose(String),
    #[error("not colax: {0}")]
    NotColax(String),
}

/// A decomposition `alpha : mu => nu . rho` of a slice morphism; the
/// structure map it indexes runs from the `nu` component to `rho` applied
/// to the `mu` component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Decomp {
    pub mu: MorId,
    pub nu: MorId,
    pub rho: MorId,
    pub alpha: CellId,
}

/// An oplax family: one component per morphism into the mode and one
/// structure map per decomposition, both in the order of the [`Shape`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Family {
    pub comps: Vec<ObjId>,
    pub maps: Vec<ArrId>,
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    /// The map at this decomposition is an identity.
    Identity(usize),
    /// `C_sigma(m[first]) . m[second] = m[result]`.
    Cocycle {
        first: usize,
        second: usize,
        result: usize,
        sigma: MorId,
    },
    /// `C_beta(comp[at]) . m[first] = m[result]`.
    Action {
        first: usize,
        beta: CellId,
        at: usize,
        result: usize,
    },
}

impl Constraint {
    fn last(&self) -> usize {
        match *self {
            Constraint::Identity(k) => k,
            Constraint::Cocycle {
                first,
                second,
                result,
                ..
            } => first.max(second).max(result),
            Constraint::Action { first, result, .. } => first.max(result),
        }
    }
}

/// The indexing data of the category of families at one mode.
#[derive(Debug, Clone)]
pub struct Shape {
    pub mode: ModeId,
    pub indices: Vec<MorId>,
    pub decomps: Vec<Decomp>,
    index_of: HashMap<MorId, usize>,
    decomp_of: HashMap<Decomp, usize>,
    constraints: Vec<Constraint>,
}

impl Shape {
    pub fn new(d: &Diagram, mode: ModeId) -> Shape {
        let mt = &d.mt;
        let indices: Vec<MorId> = mt.into_mode(mode).collect();
        let index_of: HashMap<MorId, usize> = indices.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mut decomps = Vec::new();
        for &mu in &indices {
            for &nu in &indices {
                for rho in mt.hom(mt.source(mu), mt.source(nu)) {
                    let target = mt.compose(nu, rho).expect("validated tables");
                    for alpha in mt.cells_between(mu, target) {
                        decomps.push(Decomp { mu, nu, rho, alpha });
                    }
                }
            }
        }
        let decomp_of: HashMap<Decomp, usize> = decomps.iter().enumerate().map(|(i, &k)| (k, i)).collect();

        let mut constraints = Vec::new();
        for (a, da) in decomps.iter().enumerate() {
            if da.mu == da.nu && mt.is_identity(da.rho) && da.alpha == mt.identity_cell(da.mu) {
                constraints.push(Constraint::Identity(a));
            }
            for (b, db) in decomps.iter().enumerate() {
                if db.mu != da.nu {
                    continue;
                }
                let rho = mt.compose(db.rho, da.rho).expect("validated tables");
                let moved = mt.whisker_right(db.alpha, da.rho).expect("validated tables");
                let alpha = mt.vcompose(moved, da.alpha).expect("validated tables");
                let result = decomp_of[&Decomp {
                    mu: da.mu,
                    nu: db.nu,
                    rho,
                    alpha,
                }];
                constraints.push(Constraint::Cocycle {
                    first: a,
                    second: b,
                    result,
                    sigma: db.rho,
                });
            }
            for sigma in mt.hom(mt.source(da.mu), mt.source(da.nu)) {
                for beta in mt.cells_between(da.rho, sigma) {
                    let moved = mt.whisker_left(da.nu, beta).expect("validated tables");
                    let alpha = mt.vcompose(moved, da.alpha).expect("validated tables");
                    let result = decomp_of[&Decomp {
                        mu: da.mu,
                        nu: da.nu,
                        rho: sigma,
                        alpha,
                    }];
                    constraints.push(Constraint::Action {
                        first: a,
                        beta,
                        at: index_of[&da.mu],
                        result,
                    });
                }
            }
        }
        Shape {
            mode,
            indices,
            decomps,
            index_of,
            decomp_of,
            constraints,
        }
    }

    pub fn index(&self, m: MorId) -> usize {
        self.index_of[&m]
    }

    pub fn decomp(&self, k: &Decomp) -> usize {
        self.decomp_of[k]
    }
}

/// The category of oplax families at one mode, fully enumerated.
#[derive(Debug, Clone)]
pub struct Codex {
    pub shape: Shape,
    pub objects: Vec<Family>,
    /// Components of each arrow, one per index.
    pub arrows: Vec<Vec<ArrId>>,
    pub cat: FinCat,
    object_of: HashMap<Family, ObjId>,
    arrow_of: HashMap<(ObjId, ObjId, Vec<ArrId>), ArrId>,
}

impl Codex {
    pub fn mode(&self) -> ModeId {
        self.shape.mode
    }

    pub fn family(&self, x: ObjId) -> &Family {
        &self.objects[x.index()]
    }

    pub fn find(&self, fam: &Family) -> Option<ObjId> {
        self.object_of.get(fam).copied()
    }

    pub fn find_arrow(&self, src: ObjId, dst: ObjId, comps: &[ArrId]) -> Option<ArrId> {
        self.arrow_of.get(&(src, dst, comps.to_vec())).copied()
    }

    /// Component of object `x` at the morphism `m`.
    pub fn comp(&self, x: ObjId, m: MorId) -> ObjId {
        self.objects[x.index()].comps[self.shape.index(m)]
    }

    pub fn arrow_comp(&self, f: ArrId, m: MorId) -> ArrId {
        self.arrows[f.index()][self.shape.index(m)]
    }

    pub fn map(&self, x: ObjId, k: &Decomp) -> ArrId {
        self.objects[x.index()].maps[self.shape.decomp(k)]
    }
}

impl fmt::Display for Codex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} families, {} morphisms", self.objects.len(), self.arrows.len())
    }
}

/// Every family at `mode`, by exhaustive search. `cap` bounds the number of
/// component tuples tried.
pub fn enumerate_codex(d: &Diagram, mode: ModeId, cap: u128) -> Result<Codex, CodexError> {
    let shape = Shape::new(d, mode);
    let cats: Vec<&FinCat> = shape.indices.iter().map(|&m| d.source_cat(m)).collect();
    let estimate = cats
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.object_count() as u128));
    if estimate > cap {
        return Err(FinCatError::CapExceeded { estimate, cap }.into());
    }

    let mut by_last: Vec<Vec<Constraint>> = vec![Vec::new(); shape.decomps.len()];
    for c in &shape.constraints {
        by_last[c.last()].push(*c);
    }

    let mut objects = Vec::new();
    let mut comps = vec![ObjId(0); shape.indices.len()];
    let mut odometer = vec![0usize; shape.indices.len()];
    if cats.iter().all(|c| c.object_count() > 0) {
        loop {
            for (i, &o) in odometer.iter().enumerate() {
                comps[i] = ObjId(o as u32);
            }
            let mut maps = Vec::with_capacity(shape.decomps.len());
            search_maps(d, &shape, &by_last, &comps, &mut maps, &mut objects);
            // advance
            let mut i = 0;
            while i < odometer.len() {
                odometer[i] += 1;
                if odometer[i] < cats[i].object_count() {
                    break;
                }
                odometer[i] = 0;
                i += 1;
            }
            if i == odometer.len() {
                break;
            }
        }
    }

    let mut b = FinCat::builder();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut ids = Vec::new();
    for fam in &objects {
        let base = format!(
            "({})",
            fam.comps
                .iter()
                .zip(&shape.indices)
                .map(|(&x, &m)| d.source_cat(m).object_name(x).to_owned())
                .collect::<Vec<_>>()
                .join(",")
        );
        let n = seen.entry(base.clone()).or_insert(0);
        *n += 1;
        let name = if *n == 1 { base } else { format!("{base}#{n}") };
        ids.push(b.object(&name)?);
    }

    let mut arrows: Vec<Vec<ArrId>> = objects
        .iter()
        .map(|fam| {
            fam.comps
                .iter()
                .zip(&shape.indices)
                .map(|(&x, &m)| d.source_cat(m).id(x))
                .collect()
        })
        .collect();
    let mut ends: Vec<(ObjId, ObjId)> = ids.iter().map(|&x| (x, x)).collect();
    for (i, src) in objects.iter().enumerate() {
        for (j, dst) in objects.iter().enumerate() {
            let mut found = Vec::new();
            search_arrow(d, &shape, src, dst, &mut Vec::new(), &mut found);
            for (k, comps) in found.into_iter().enumerate() {
                if i == j && comps == arrows[i] {
                    continue;
                }
                b.arrow(&format!("{i}->{j}#{k}"), ids[i], ids[j])?;
                arrows.push(comps);
                ends.push((ids[i], ids[j]));
            }
        }
    }
    let arrow_of: HashMap<(ObjId, ObjId, Vec<ArrId>), ArrId> = arrows
        .iter()
        .zip(&ends)
        .enumerate()
        .map(|(i, (c, &(s, t)))| ((s, t, c.clone()), ArrId(i as u32)))
        .collect();
    for (f, cf) in arrows.iter().enumerate() {
        for (g, cg) in arrows.iter().enumerate() {
            if ends[f].1 != ends[g].0 {
                continue;
            }
            let comps: Vec<ArrId> = cf
                .iter()
                .zip(cg)
                .zip(&shape.indices)
                .map(|((&a, &bb), &m)| d.source_cat(m).compose(bb, a))
                .collect();
            let h = arrow_of[&(ends[f].0, ends[g].1, comps)];
            b.set_compose(ArrId(g as u32), ArrId(f as u32), h)?;
        }
    }
    let object_of = objects
        .iter()
        .enumerate()
        .map(|(i, f)| (f.clone(), ObjId(i as u32)))
        .collect();
    Ok(Codex {
        shape,
        objects,
        arrows,
        cat: b.build()?,
        object_of,
        arrow_of,
    })
}

fn search_maps(
    d: &Diagram,
    shape: &Shape,
    by_last: &[Vec<Constraint>],
    comps: &[ObjId],
    maps: &mut Vec<ArrId>,
    out: &mut Vec<Family>,
) {
    let k = maps.len();
    if k == shape.decomps.len() {
        out.push(Family {
            comps: comps.to_vec(),
            maps: maps.clone(),
        });
        return;
    }
    let dk = shape.decomps[k];
    let cat = d.source_cat(dk.nu);
    let from = comps[shape.index(dk.nu)];
    let to = d.functor(dk.rho).on_obj(comps[shape.index(dk.mu)]);
    for &a in cat.hom(from, to) {
        maps.push(a);
        if by_last[k].iter().all(|c| holds(d, shape, comps, maps, c)) {
            search_maps(d, shape, by_last, comps, maps, out);
        }
        maps.pop();
    }
}

fn holds(d: &Diagram, shape: &Shape, comps: &[ObjId], maps: &[ArrId], c: &Constraint) -> bool {
    match *c {
        Constraint::Identity(k) => {
            let cat = d.source_cat(shape.decomps[k].nu);
            cat.is_identity(maps[k])
        }
        Constraint::Cocycle {
            first,
            second,
            result,
            sigma,
        } => {
            let cat = d.source_cat(shape.decomps[second].nu);
            cat.compose(d.functor(sigma).on_arr(maps[first]), maps[second]) == maps[result]
        }
        Constraint::Action {
            first,
            beta,
            at,
            result,
        } => {
            let cat = d.source_cat(shape.decomps[first].nu);
            cat.compose(d.nat(beta).at(comps[at]), maps[first]) == maps[result]
        }
    }
}

fn search_arrow(
    d: &Diagram,
    shape: &Shape,
    src: &Family,
    dst: &Family,
    comps: &mut Vec<ArrId>,
    out: &mut Vec<Vec<ArrId>>,
) {
    let i = comps.len();
    if i == shape.indices.len() {
        if respects(d, shape, src, dst, comps) {
            out.push(comps.clone());
        }
        return;
    }
    let cat = d.source_cat(shape.indices[i]);
    for &a in cat.hom(src.comps[i], dst.comps[i]) {
        comps.push(a);
        search_arrow(d, shape, src, dst, comps, out);
        comps.pop();
    }
}

/// `C_rho(theta^mu) . src^alpha = dst^alpha . theta^nu` for every decomposition.
fn respects(d: &Diagram, shape: &Shape, src: &Family, dst: &Family, theta: &[ArrId]) -> bool {
    shape.decomps.iter().enumerate().all(|(k, dk)| {
        let cat = d.source_cat(dk.nu);
        let (tm, tn) = (theta[shape.index(dk.mu)], theta[shape.index(dk.nu)]);
        cat.compose(d.functor(dk.rho).on_arr(tm), src.maps[k]) == cat.compose(dst.maps[k], tn)
    })
}

/// Re-check a family against the definition, independently of the
/// constraint lists used by the enumeration: every decomposition pair is
/// recomputed from the mode theory's tables.
pub fn verify_family(d: &Diagram, shape: &Shape, fam: &Family) -> Result<(), String> {
    let mt = &d.mt;
    let comp = |m: MorId| fam.comps[shape.index(m)];
    let map = |k: &Decomp| fam.maps[shape.decomp(k)];
    for dk in &shape.decomps {
        let cat = d.source_cat(dk.nu);
        let a = map(dk);
        if cat.src(a) != comp(dk.nu) || cat.dst(a) != d.functor(dk.rho).on_obj(comp(dk.mu)) {
            return Err(format!("structure map at {} has the wrong endpoints", mt.cell_name(dk.alpha)));
        }
    }
    for &m in &shape.indices {
        let k = Decomp {
            mu: m,
            nu: m,
            rho: mt.identity(mt.source(m)),
            alpha: mt.identity_cell(m),
        };
        if !d.source_cat(m).is_identity(map(&k)) {
            return Err(format!("identity decomposition of {} is not an identity", mt.mor_name(m)));
        }
    }
    for da in &shape.decomps {
        for db in shape.decomps.iter().filter(|db| db.mu == da.nu) {
            let lhs = d
                .source_cat(db.nu)
                .compose(d.functor(db.rho).on_arr(map(da)), map(db));
            let k = Decomp {
                mu: da.mu,
                nu: db.nu,
                rho: mt.compose(db.rho, da.rho).map_err(|e| e.to_string())?,
                alpha: mt
                    .vcompose(mt.whisker_right(db.alpha, da.rho).map_err(|e| e.to_string())?, da.alpha)
                    .map_err(|e| e.to_string())?,
            };
            if lhs != map(&k) {
                return Err(format!(
                    "cocycle fails for {} then {}",
                    mt.cell_name(da.alpha),
                    mt.cell_name(db.alpha)
                ));
            }
        }
        for beta in mt.cells().filter(|&b| mt.cell_source(b) == da.rho) {
            let lhs = d
                .source_cat(da.nu)
                .compose(d.nat(beta).at(comp(da.mu)), map(da));
            let k = Decomp {
                mu: da.mu,
                nu: da.nu,
                rho: mt.cell_target(beta),
                alpha: mt
                    .vcompose(mt.whisker_left(da.nu, beta).map_err(|e| e.to_string())?, da.alpha)
                    .map_err(|e| e.to_string())?,
            };
            if lhs != map(&k) {
                return Err(format!(
                    "cell action of {} fails at {}",
                    mt.cell_name(beta),
                    mt.cell_name(da.alpha)
                ));
            }
        }
    }
    Ok(())
}

/// Re-check a morphism of families against the definition.
pub fn verify_morphism(d: &Diagram, shape: &Shape, src: &Family, dst: &Family, theta: &[ArrId]) -> Result<(), String> {
    for (i, &m) in shape.indices.iter().enumerate() {
        let cat = d.source_cat(m);
        if cat.src(theta[i]) != src.comps[i] || cat.dst(theta[i]) != dst.comps[i] {
            return Err(format!("component at {} has the wrong endpoints", d.mt.mor_name(m)));
        }
    }
    if !respects(d, shape, src, dst, theta) {
        return Err("a structure square does not commute".into());
    }
    Ok(())
}

/// All categories of families of a diagram, one per mode.
#[derive(Debug, Clone)]
pub struct Chat {
    pub diagram: Diagram,
    pub codex: Vec<Codex>,
}

impl Chat {
    pub fn build(d: &Diagram, cap: u128) -> Result<Chat, CodexError> {
        let codex = d
            .mt
            .modes()
            .map(|p| enumerate_codex(d, p, cap))
            .collect::<Result<_, _>>()?;
        Ok(Chat {
            diagram: d.clone(),
            codex,
        })
    }

    pub fn at(&self, p: ModeId) -> &Codex {
        &self.codex[p.0 as usize]
    }
}
