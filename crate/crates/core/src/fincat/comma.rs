use crate::mode_theory::{CellId, ModeTheory, MorId};

use super::{ArrId, FinCat, FinCatError, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CommaArrow {
    pub src: ObjId,
    pub dst: ObjId,
    pub cell: CellId,
}

/// For `over : r -> s` and `along : p -> s`, the category of pairs
/// `(sigma : r -> p, beta : over => along . sigma)`, with arrows the cells
/// `gamma : sigma => sigma'` such that `(along <| gamma) * beta = beta'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommaCat {
    pub over: MorId,
    pub along: MorId,
    pub objects: Vec<(MorId, CellId)>,
    pub arrows: Vec<CommaArrow>,
    pub cat: FinCat,
}

impl CommaCat {
    pub fn object(&self, x: ObjId) -> (MorId, CellId) {
        self.objects[x.index()]
    }

    pub fn arrow(&self, f: ArrId) -> CommaArrow {
        self.arrows[f.index()]
    }

    pub fn find(&self, sigma: MorId, beta: CellId) -> Option<ObjId> {
        self.objects
            .iter()
            .position(|&o| o == (sigma, beta))
            .map(|i| ObjId(i as u32))
    }

    /// Whether `x` has exactly one arrow to every object.
    pub fn is_initial(&self, x: ObjId) -> bool {
        self.cat.objects().all(|y| self.cat.hom(x, y).len() == 1)
    }
}

pub fn comma(mt: &ModeTheory, over: MorId, along: MorId) -> Result<CommaCat, FinCatError> {
    if mt.target(over) != mt.target(along) {
        return Err(FinCatError::ModeMismatch(
            mt.mor_name(over).to_owned(),
            mt.mor_name(along).to_owned(),
        ));
    }
    let (r, p) = (mt.source(over), mt.source(along));
    let table = |e: crate::mode_theory::ModeError| FinCatError::Invalid(e.to_string());

    let mut objects = Vec::new();
    for sigma in mt.hom(r, p) {
        let composite = mt.compose(along, sigma).map_err(table)?;
        for beta in mt.cells_between(over, composite) {
            objects.push((sigma, beta));
        }
    }

    let mut b = FinCat::builder();
    let ids: Vec<ObjId> = objects
        .iter()
        .map(|&(s, be)| b.object(&format!("({}, {})", mt.mor_name(s), mt.cell_name(be))))
        .collect::<Result<_, _>>()?;

    let mut arrows: Vec<CommaArrow> = ids
        .iter()
        .zip(&objects)
        .map(|(&x, &(s, _))| CommaArrow {
            src: x,
            dst: x,
            cell: mt.identity_cell(s),
        })
        .collect();
    for (i, &(s, beta)) in objects.iter().enumerate() {
        for (j, &(s2, beta2)) in objects.iter().enumerate() {
            for gamma in mt.cells_between(s, s2) {
                if i == j && gamma == mt.identity_cell(s) {
                    continue;
                }
                let moved = mt.whisker_left(along, gamma).map_err(table)?;
                if mt.vcompose(moved, beta).map_err(table)? != beta2 {
                    continue;
                }
                let name = format!("{}:{i}->{j}", mt.cell_name(gamma));
                b.arrow(&name, ids[i], ids[j])?;
                arrows.push(CommaArrow {
                    src: ids[i],
                    dst: ids[j],
                    cell: gamma,
                });
            }
        }
    }
    let find = |src: ObjId, dst: ObjId, cell: CellId| {
        arrows
            .iter()
            .position(|a| a.src == src && a.dst == dst && a.cell == cell)
            .map(|i| ArrId(i as u32))
    };
    for f in 0..arrows.len() {
        for g in 0..arrows.len() {
            let (af, ag) = (arrows[f], arrows[g]);
            if af.dst != ag.src {
                continue;
            }
            let cell = mt.vcompose(ag.cell, af.cell).map_err(table)?;
            let h = find(af.src, ag.dst, cell).ok_or_else(|| {
                FinCatError::Invalid(format!(
                    "comma category is not closed under composition at {}",
                    mt.cell_name(cell)
                ))
            })?;
            b.set_compose(ArrId(g as u32), ArrId(f as u32), h)?;
        }
    }
    Ok(CommaCat {
        over,
        along,
        objects,
        arrows,
        cat: b.build()?,
    })
}
