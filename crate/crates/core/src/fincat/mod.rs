//! Finite categories, functors and natural transformations given by
//! tables, with limits found by exhaustive search.

mod comma;
mod diagram;
mod functor;
mod limit;

#[cfg(test)]
mod tests;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

pub use comma::{comma, CommaArrow, CommaCat};
pub use diagram::{CategorySpec, Diagram, DiagramFile, FunctorSpec};
pub use functor::{FinFunctor, FinNat};
pub use limit::{
    colimit, cones, factorizations, is_limit, limit, preserves_limit, Cone, LimitDiagram, Search,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrId(pub u32);

impl ObjId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinCatError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("`{outer}` and `{inner}` are not composable")]
    NotComposable { outer: String, inner: String },
    #[error("no composite given for `{outer}` after `{inner}`")]
    MissingComposite { outer: String, inner: String },
    #[error("composite of `{outer}` after `{inner}` is `{got}`, which has the wrong endpoints")]
    IllTypedComposite {
        outer: String,
        inner: String,
        got: String,
    },
    #[error("conflicting composites for `{outer}` after `{inner}`")]
    ConflictingComposite { outer: String, inner: String },
    #[error("composition is not associative at ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("the order relation has a cycle through `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a natural transformation: {0}")]
    NotNatural(String),
    #[error("search needs {estimate} candidates, over the cap of {cap}")]
    CapExceeded { estimate: u128, cap: u128 },
    #[error("`{0}` and `{1}` do not end at the same mode")]
    ModeMismatch(String, String),
    #[error("diagram is not strictly functorial: {0}")]
    NotStrict(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
}

/// A finite category. Composition is a total table on composable pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrId>,
    /// `compose[g * n + f] = g . f` for composable pairs.
    compose: Vec<Option<ArrId>>,
    homs: Vec<Vec<ArrId>>,
    object_index: HashMap<String, ObjId>,
    arrow_index: HashMap<String, ArrId>,
}

impl FinCat {
    pub fn builder() -> FinCatBuilder {
        FinCatBuilder::default()
    }

    /// The thin category of a preorder: `order` lists generating pairs
    /// `x <= y`, closed under reflexivity and transitivity. Cycles are
    /// rejected so that the result is a poset.
    pub fn poset(elements: &[impl AsRef<str>], order: &[(impl AsRef<str>, impl AsRef<str>)]) -> Result<FinCat, FinCatError> {
        let n = elements.len();
        let index: HashMap<&str, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_ref(), i))
            .collect();
        if index.len() != n {
            let dup = elements
                .iter()
                .enumerate()
                .find(|(i, e)| index[e.as_ref()] != *i)
                .unwrap()
                .1;
            return Err(FinCatError::DuplicateName(dup.as_ref().to_owned()));
        }
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in order {
            let get = |x: &str| {
                index
                    .get(x)
                    .copied()
                    .ok_or_else(|| FinCatError::UnknownObject(x.to_owned()))
            };
            le[get(a.as_ref())?][get(b.as_ref())?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if le[i][k] {
                    let row = le[k].clone();
                    for (cell, via) in le[i].iter_mut().zip(row) {
                        *cell |= via;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if le[i][j] && le[j][i] {
                    return Err(FinCatError::NotAntisymmetric(
                        elements[i].as_ref().to_owned(),
                        elements[j].as_ref().to_owned(),
                    ));
                }
            }
        }
        let mut b = FinCat::builder();
        let objs: Vec<ObjId> = elements
            .iter()
            .map(|e| b.object(e.as_ref()))
            .collect::<Result<_, _>>()?;
        let mut arrow = vec![vec![None; n]; n];
        for i in 0..n {
            arrow[i][i] = Some(b.identity(objs[i]));
            for j in 0..n {
                if i != j && le[i][j] {
                    let name = format!("{}<={}", elements[i].as_ref(), elements[j].as_ref());
                    arrow[i][j] = Some(b.arrow(&name, objs[i], objs[j])?);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if let (Some(f), Some(g)) = (arrow[i][j], arrow[j][k]) {
                        b.set_compose(g, f, arrow[i][k].unwrap())?;
                    }
                }
            }
        }
        b.build()
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjId> + '_ {
        (0..self.objects.len() as u32).map(ObjId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrId> + '_ {
        (0..self.arrows.len() as u32).map(ArrId)
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.index()]
    }

    pub fn arrow(&self, f: ArrId) -> &Arrow {
        &self.arrows[f.index()]
    }

    pub fn arrow_name(&self, f: ArrId) -> &str {
        &self.arrows[f.index()].name
    }

    pub fn object_by_name(&self, name: &str) -> Result<ObjId, FinCatError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| FinCatError::UnknownObject(name.to_owned()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrId, FinCatError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| FinCatError::UnknownArrow(name.to_owned()))
    }

    pub fn src(&self, f: ArrId) -> ObjId {
        self.arrows[f.index()].src
    }

    pub fn dst(&self, f: ArrId) -> ObjId {
        self.arrows[f.index()].dst
    }

    pub fn id(&self, x: ObjId) -> ArrId {
        self.identities[x.index()]
    }

    pub fn is_identity(&self, f: ArrId) -> bool {
        self.identities[self.src(f).index()] == f
    }

    /// `g . f`, or `None` when `f` does not end where `g` starts.
    pub fn try_compose(&self, g: ArrId, f: ArrId) -> Option<ArrId> {
        self.compose[g.index() * self.arrows.len() + f.index()]
    }

    /// `g . f`. Panics on a non-composable pair.
    pub fn compose(&self, g: ArrId, f: ArrId) -> ArrId {
        self.try_compose(g, f).unwrap_or_else(|| {
            panic!(
                "`{}` and `{}` are not composable",
                self.arrow_name(g),
                self.arrow_name(f)
            )
        })
    }

    /// Compose a path given in diagrammatic order (first arrow first).
    pub fn compose_path(&self, path: &[ArrId]) -> ArrId {
        let mut it = path.iter();
        let first = *it.next().expect("empty path");
        it.fold(first, |acc, &g| self.compose(g, acc))
    }

    pub fn hom(&self, x: ObjId, y: ObjId) -> &[ArrId] {
        &self.homs[x.index() * self.objects.len() + y.index()]
    }

    pub fn is_thin(&self) -> bool {
        self.homs.iter().all(|h| h.len() <= 1)
    }

    /// The inverse of `f`, if it is an isomorphism.
    pub fn inverse(&self, f: ArrId) -> Option<ArrId> {
        let (x, y) = (self.src(f), self.dst(f));
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.id(x) && self.compose(f, g) == self.id(y))
    }

    pub fn is_iso(&self, f: ArrId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn isomorphic(&self, x: ObjId, y: ObjId) -> bool {
        self.hom(x, y).iter().any(|&f| self.is_iso(f))
    }

    /// The opposite category; ids are shared with `self`.
    pub fn opposite(&self) -> FinCat {
        let n = self.arrows.len();
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = self.compose[g * n + f] {
                    compose[f * n + g] = Some(h);
                }
            }
        }
        let arrows: Vec<Arrow> = self
            .arrows
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                src: a.dst,
                dst: a.src,
            })
            .collect();
        let homs = hom_table(self.objects.len(), &arrows);
        FinCat {
            objects: self.objects.clone(),
            arrows,
            identities: self.identities.clone(),
            compose,
            homs,
            object_index: self.object_index.clone(),
            arrow_index: self.arrow_index.clone(),
        }
    }
}

fn hom_table(n: usize, arrows: &[Arrow]) -> Vec<Vec<ArrId>> {
    let mut homs = vec![Vec::new(); n * n];
    for (i, a) in arrows.iter().enumerate() {
        homs[a.src.index() * n + a.dst.index()].push(ArrId(i as u32));
    }
    homs
}

impl fmt::Display for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, o) in self.objects.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}")?;
        }
        write!(f, "}} with {} arrows", self.arrows.len())
    }
}

/// Incremental construction of a [`FinCat`]. Identities are created with
/// their objects and their composites are filled in automatically.
#[derive(Debug, Default)]
pub struct FinCatBuilder {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrId>,
    composites: HashMap<(ArrId, ArrId), ArrId>,
    names: HashMap<String, ()>,
}

impl FinCatBuilder {
    fn claim(&mut self, name: &str) -> Result<(), FinCatError> {
        if self.names.insert(name.to_owned(), ()).is_some() {
            return Err(FinCatError::DuplicateName(name.to_owned()));
        }
        Ok(())
    }

    /// Add an object together with its identity arrow `id:<name>`.
    pub fn object(&mut self, name: &str) -> Result<ObjId, FinCatError> {
        self.claim(name)?;
        let x = ObjId(self.objects.len() as u32);
        self.objects.push(name.to_owned());
        let id_name = format!("id:{name}");
        self.claim(&id_name)?;
        let id = ArrId(self.arrows.len() as u32);
        self.arrows.push(Arrow {
            name: id_name,
            src: x,
            dst: x,
        });
        self.identities.push(id);
        Ok(x)
    }

    pub fn identity(&self, x: ObjId) -> ArrId {
        self.identities[x.index()]
    }

    pub fn arrow(&mut self, name: &str, src: ObjId, dst: ObjId) -> Result<ArrId, FinCatError> {
        self.claim(name)?;
        let f = ArrId(self.arrows.len() as u32);
        self.arrows.push(Arrow {
            name: name.to_owned(),
            src,
            dst,
        });
        Ok(f)
    }

    pub fn object_id(&self, name: &str) -> Result<ObjId, FinCatError> {
        self.objects
            .iter()
            .position(|o| o == name)
            .map(|i| ObjId(i as u32))
            .ok_or_else(|| FinCatError::UnknownObject(name.to_owned()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrId, FinCatError> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .map(|i| ArrId(i as u32))
            .ok_or_else(|| FinCatError::UnknownArrow(name.to_owned()))
    }

    /// Record `g . f = h`.
    pub fn set_compose(&mut self, g: ArrId, f: ArrId, h: ArrId) -> Result<(), FinCatError> {
        let name = |a: ArrId| self.arrows[a.index()].name.clone();
        let (ga, fa, ha) = (
            &self.arrows[g.index()],
            &self.arrows[f.index()],
            &self.arrows[h.index()],
        );
        if fa.dst != ga.src {
            return Err(FinCatError::NotComposable {
                outer: name(g),
                inner: name(f),
            });
        }
        if ha.src != fa.src || ha.dst != ga.dst {
            return Err(FinCatError::IllTypedComposite {
                outer: name(g),
                inner: name(f),
                got: name(h),
            });
        }
        match self.composites.insert((g, f), h) {
            Some(old) if old != h => Err(FinCatError::ConflictingComposite {
                outer: name(g),
                inner: name(f),
            }),
            _ => Ok(()),
        }
    }

    /// Check totality, unit and associativity laws and freeze the table.
    pub fn build(mut self) -> Result<FinCat, FinCatError> {
        let n = self.arrows.len();
        for i in 0..n {
            let f = ArrId(i as u32);
            let (s, d) = (self.arrows[i].src, self.arrows[i].dst);
            self.set_compose(f, self.identities[s.index()], f)?;
            self.set_compose(self.identities[d.index()], f, f)?;
        }
        let mut compose = vec![None; n * n];
        for g in 0..n {
            for f in 0..n {
                if self.arrows[f].dst != self.arrows[g].src {
                    continue;
                }
                let h = self
                    .composites
                    .get(&(ArrId(g as u32), ArrId(f as u32)))
                    .copied()
                    .ok_or_else(|| FinCatError::MissingComposite {
                        outer: self.arrows[g].name.clone(),
                        inner: self.arrows[f].name.clone(),
                    })?;
                compose[g * n + f] = Some(h);
            }
        }
        let homs = hom_table(self.objects.len(), &self.arrows);
        let object_index = self
            .objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), ObjId(i as u32)))
            .collect();
        let arrow_index = self
            .arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ArrId(i as u32)))
            .collect();
        let cat = FinCat {
            objects: self.objects,
            arrows: self.arrows,
            identities: self.identities,
            compose,
            homs,
            object_index,
            arrow_index,
        };
        for h in cat.arrows() {
            for g in cat.arrows() {
                let Some(hg) = cat.try_compose(h, g) else {
                    continue;
                };
                for f in cat.hom_into(cat.src(g)) {
                    let gf = cat.compose(g, f);
                    if cat.compose(h, gf) != cat.compose(hg, f) {
                        return Err(FinCatError::NotAssociative(
                            cat.arrow_name(h).to_owned(),
                            cat.arrow_name(g).to_owned(),
                            cat.arrow_name(f).to_owned(),
                        ));
                    }
                }
            }
        }
        Ok(cat)
    }
}

impl FinCat {
    /// All arrows ending at `x`.
    pub fn hom_into(&self, x: ObjId) -> impl Iterator<Item = ArrId> + '_ {
        self.arrows().filter(move |&f| self.dst(f) == x)
    }
}
