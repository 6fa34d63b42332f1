//! Finite presentations of adjoint mode theories.
//!
//! A mode theory is a strict 2-category given by closed tables: every
//! composite, vertical composite and whiskering that the presentation can
//! form must be a named element. Equality of 2-cells is then identity of
//! table elements, which is all the type checker ever needs.

mod cell;
mod file;
mod validate;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use cell::CellExpr;
pub use file::{AdjointEntry, ClassesEntry, NamedArrow, ModeTheoryFile};
pub use validate::{Axiom, ValidationReport, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MorId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub u32);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModeError {
    #[error("unknown mode `{0}`")]
    UnknownMode(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("unknown 2-cell `{0}`")]
    UnknownCell(String),
    #[error("`{outer}` and `{inner}` are not composable")]
    NotComposable { outer: String, inner: String },
    #[error("{table} table has no entry for ({left}, {right})")]
    MissingEntry {
        table: &'static str,
        left: String,
        right: String,
    },
    #[error("ill-typed cell expression: {0}")]
    IllTypedCellExpression(String),
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("invalid mode theory document: {0}")]
    Syntax(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: ModeId,
    pub target: ModeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub source: MorId,
    pub target: MorId,
}

/// The four independent morphism classes.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Classes {
    pub tangible: bool,
    pub sharp: bool,
    pub transparent: bool,
    pub sinister: bool,
}

/// Chosen right adjoint of a sinister morphism `mu : p -> q`:
/// `dagger : q -> p`, `unit : 1_p => dagger . mu`, `counit : mu . dagger => 1_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Adjoint {
    pub dagger: MorId,
    pub unit: CellId,
    pub counit: CellId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeTheory {
    modes: Vec<String>,
    morphisms: Vec<Morphism>,
    cells: Vec<Cell>,
    mode_index: HashMap<String, ModeId>,
    mor_index: HashMap<String, MorId>,
    cell_index: HashMap<String, CellId>,
    identity_mor: Vec<MorId>,
    identity_cell: Vec<CellId>,
    compose: HashMap<(MorId, MorId), MorId>,
    vcompose: HashMap<(CellId, CellId), CellId>,
    whisker_left: HashMap<(MorId, CellId), CellId>,
    whisker_right: HashMap<(CellId, MorId), CellId>,
    classes: Vec<Classes>,
    adjoints: HashMap<MorId, Adjoint>,
}

impl ModeTheory {
    pub fn from_json(text: &str) -> Result<ModeTheory, ModeError> {
        let file: ModeTheoryFile =
            serde_json::from_str(text).map_err(|e| ModeError::Syntax(e.to_string()))?;
        ModeTheory::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("mode theory serializes")
    }

    // ----- names and lookup -----

    pub fn mode(&self, name: &str) -> Result<ModeId, ModeError> {
        self.mode_index
            .get(name)
            .copied()
            .ok_or_else(|| ModeError::UnknownMode(name.to_owned()))
    }

    pub fn mor(&self, name: &str) -> Result<MorId, ModeError> {
        self.mor_index
            .get(name)
            .copied()
            .ok_or_else(|| ModeError::UnknownMorphism(name.to_owned()))
    }

    pub fn cell(&self, name: &str) -> Result<CellId, ModeError> {
        self.cell_index
            .get(name)
            .copied()
            .ok_or_else(|| ModeError::UnknownCell(name.to_owned()))
    }

    pub fn mode_name(&self, m: ModeId) -> &str {
        &self.modes[m.0 as usize]
    }

    pub fn mor_name(&self, m: MorId) -> &str {
        &self.morphisms[m.0 as usize].name
    }

    pub fn cell_name(&self, c: CellId) -> &str {
        &self.cells[c.0 as usize].name
    }

    pub fn modes(&self) -> impl Iterator<Item = ModeId> + '_ {
        (0..self.modes.len() as u32).map(ModeId)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        (0..self.morphisms.len() as u32).map(MorId)
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len() as u32).map(CellId)
    }

    pub fn mode_count(&self) -> usize {
        self.modes.len()
    }

    pub fn source(&self, m: MorId) -> ModeId {
        self.morphisms[m.0 as usize].source
    }

    pub fn target(&self, m: MorId) -> ModeId {
        self.morphisms[m.0 as usize].target
    }

    pub fn cell_source(&self, c: CellId) -> MorId {
        self.cells[c.0 as usize].source
    }

    pub fn cell_target(&self, c: CellId) -> MorId {
        self.cells[c.0 as usize].target
    }

    pub fn identity(&self, p: ModeId) -> MorId {
        self.identity_mor[p.0 as usize]
    }

    pub fn identity_cell(&self, m: MorId) -> CellId {
        self.identity_cell[m.0 as usize]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identity(self.source(m)) == m
    }

    /// Morphisms `p -> q`, in declaration order.
    pub fn hom(&self, p: ModeId, q: ModeId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms()
            .filter(move |&m| self.source(m) == p && self.target(m) == q)
    }

    /// Morphisms with the given target.
    pub fn into_mode(&self, r: ModeId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |&m| self.target(m) == r)
    }

    /// 2-cells `mu => nu`.
    pub fn cells_between(&self, mu: MorId, nu: MorId) -> impl Iterator<Item = CellId> + '_ {
        self.cells()
            .filter(move |&c| self.cell_source(c) == mu && self.cell_target(c) == nu)
    }

    // ----- classes -----

    pub fn classes(&self, m: MorId) -> Classes {
        self.classes[m.0 as usize]
    }

    pub fn is_tangible(&self, m: MorId) -> bool {
        self.classes(m).tangible
    }

    pub fn is_sharp(&self, m: MorId) -> bool {
        self.classes(m).sharp
    }

    pub fn is_transparent(&self, m: MorId) -> bool {
        self.classes(m).transparent
    }

    pub fn is_sinister(&self, m: MorId) -> bool {
        self.classes(m).sinister
    }

    pub fn adjoint(&self, m: MorId) -> Option<Adjoint> {
        self.adjoints.get(&m).copied()
    }

    // ----- algebra -----

    /// `outer . inner`, i.e. first `inner` then `outer`.
    pub fn compose(&self, outer: MorId, inner: MorId) -> Result<MorId, ModeError> {
        if self.source(outer) != self.target(inner) {
            return Err(ModeError::NotComposable {
                outer: self.mor_name(outer).to_owned(),
                inner: self.mor_name(inner).to_owned(),
            });
        }
        self.compose
            .get(&(outer, inner))
            .copied()
            .ok_or_else(|| ModeError::MissingEntry {
                table: "compose",
                left: self.mor_name(outer).to_owned(),
                right: self.mor_name(inner).to_owned(),
            })
    }

    /// Composite of a path of morphisms listed outermost first.
    pub fn compose_all(&self, start: ModeId, path: &[MorId]) -> Result<MorId, ModeError> {
        let mut acc = self.identity(start);
        for &m in path.iter().rev() {
            acc = self.compose(m, acc)?;
        }
        Ok(acc)
    }

    /// Vertical composite `later . earlier`.
    pub fn vcompose(&self, later: CellId, earlier: CellId) -> Result<CellId, ModeError> {
        if self.cell_target(earlier) != self.cell_source(later) {
            return Err(ModeError::IllTypedCellExpression(format!(
                "cannot compose {} after {}: {} != {}",
                self.cell_name(later),
                self.cell_name(earlier),
                self.mor_name(self.cell_target(earlier)),
                self.mor_name(self.cell_source(later)),
            )));
        }
        self.vcompose
            .get(&(later, earlier))
            .copied()
            .ok_or_else(|| ModeError::MissingEntry {
                table: "vcompose",
                left: self.cell_name(later).to_owned(),
                right: self.cell_name(earlier).to_owned(),
            })
    }

    /// `mu <| beta`: post-compose the cell with a morphism.
    pub fn whisker_left(&self, mu: MorId, beta: CellId) -> Result<CellId, ModeError> {
        let inner = self.cell_source(beta);
        if self.source(mu) != self.target(inner) {
            return Err(ModeError::IllTypedCellExpression(format!(
                "cannot whisker {} by {} on the left",
                self.cell_name(beta),
                self.mor_name(mu)
            )));
        }
        self.whisker_left
            .get(&(mu, beta))
            .copied()
            .ok_or_else(|| ModeError::MissingEntry {
                table: "whisker_left",
                left: self.mor_name(mu).to_owned(),
                right: self.cell_name(beta).to_owned(),
            })
    }

    /// `alpha |> nu`: pre-compose the cell with a morphism.
    pub fn whisker_right(&self, alpha: CellId, nu: MorId) -> Result<CellId, ModeError> {
        let outer = self.cell_source(alpha);
        if self.source(outer) != self.target(nu) {
            return Err(ModeError::IllTypedCellExpression(format!(
                "cannot whisker {} by {} on the right",
                self.cell_name(alpha),
                self.mor_name(nu)
            )));
        }
        self.whisker_right
            .get(&(alpha, nu))
            .copied()
            .ok_or_else(|| ModeError::MissingEntry {
                table: "whisker_right",
                left: self.cell_name(alpha).to_owned(),
                right: self.mor_name(nu).to_owned(),
            })
    }

    /// Evaluate a formal cell expression to its table element.
    pub fn eval(&self, expr: &CellExpr) -> Result<CellId, ModeError> {
        let ill = |e: ModeError| match e {
            ModeError::NotComposable { .. } | ModeError::UnknownMorphism(_) => {
                ModeError::IllTypedCellExpression(e.to_string())
            }
            other => other,
        };
        match expr {
            CellExpr::Named(name) => self.cell(name),
            CellExpr::VComp(later, earlier) => {
                let later = self.eval(later)?;
                let earlier = self.eval(earlier)?;
                self.vcompose(later, earlier)
            }
            CellExpr::WhiskerLeft(mu, beta) => {
                let mu = self.mor(mu).map_err(ill)?;
                let beta = self.eval(beta)?;
                self.whisker_left(mu, beta)
            }
            CellExpr::WhiskerRight(alpha, nu) => {
                let alpha = self.eval(alpha)?;
                let nu = self.mor(nu).map_err(ill)?;
                self.whisker_right(alpha, nu)
            }
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate::validate(self)
    }
}

impl fmt::Display for ModeTheory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "mode theory with {} modes, {} morphisms, {} cells",
            self.modes.len(),
            self.morphisms.len(),
            self.cells.len()
        )
    }
}

#[cfg(test)]
mod tests;
