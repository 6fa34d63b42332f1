use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::mode_theory::{CellId, ModeId, ModeTheory, MorId};

use super::{ArrId, FinCat, FinCatError, FinFunctor, FinNat, ObjId};

/// A category in a diagram file: either a poset or explicit tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum CategorySpec {
    Poset {
        elements: Vec<String>,
        #[serde(default)]
        order: Vec<(String, String)>,
    },
    Explicit {
        objects: Vec<String>,
        #[serde(default)]
        arrows: Vec<ArrowSpec>,
        /// `(g, f, h)` meaning `g . f = h`; composites with identities are implied.
        #[serde(default)]
        compose: Vec<(String, String, String)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// A functor by object and arrow maps. The arrow map may be omitted when
/// the target category is thin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorSpec {
    pub objects: BTreeMap<String, String>,
    #[serde(default)]
    pub arrows: BTreeMap<String, String>,
}

/// On-disk form of a strict diagram over a mode theory. Functors for
/// identities and for composites of listed morphisms are derived, as are
/// the cells obtained from listed ones by the mode theory's tables. Cells
/// between functors into a thin category may be omitted entirely.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(default)]
    pub name: Option<String>,
    /// A bundled theory name, or a path ending in `.mt` relative to the file.
    pub mode_theory: String,
    pub categories: BTreeMap<String, CategorySpec>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorSpec>,
    /// Components by object name; a cell's value maps objects to arrows.
    #[serde(default)]
    pub cells: BTreeMap<String, BTreeMap<String, String>>,
}

impl DiagramFile {
    pub fn from_json(text: &str) -> Result<DiagramFile, FinCatError> {
        serde_json::from_str(text).map_err(|e| FinCatError::Invalid(e.to_string()))
    }
}

/// A strict 2-functor from a mode theory to finite categories.
#[derive(Debug, Clone)]
pub struct Diagram {
    pub name: String,
    pub mt: ModeTheory,
    pub cats: Vec<FinCat>,
    pub functors: Vec<FinFunctor>,
    pub nats: Vec<FinNat>,
}

fn invalid(msg: impl Into<String>) -> FinCatError {
    FinCatError::Invalid(msg.into())
}

fn build_category(spec: &CategorySpec) -> Result<FinCat, FinCatError> {
    match spec {
        CategorySpec::Poset { elements, order } => FinCat::poset(elements, order),
        CategorySpec::Explicit {
            objects,
            arrows,
            compose,
        } => {
            let mut b = FinCat::builder();
            for o in objects {
                b.object(o)?;
            }
            for a in arrows {
                let (s, d) = (b.object_id(&a.src)?, b.object_id(&a.dst)?);
                b.arrow(&a.name, s, d)?;
            }
            for (g, f, h) in compose {
                let (g, f, h) = (b.arrow_id(g)?, b.arrow_id(f)?, b.arrow_id(h)?);
                b.set_compose(g, f, h)?;
            }
            b.build()
        }
    }
}

impl Diagram {
    pub fn cat(&self, p: ModeId) -> &FinCat {
        &self.cats[p.0 as usize]
    }

    pub fn functor(&self, m: MorId) -> &FinFunctor {
        &self.functors[m.0 as usize]
    }

    pub fn nat(&self, c: CellId) -> &FinNat {
        &self.nats[c.0 as usize]
    }

    pub fn source_cat(&self, m: MorId) -> &FinCat {
        self.cat(self.mt.source(m))
    }

    pub fn target_cat(&self, m: MorId) -> &FinCat {
        self.cat(self.mt.target(m))
    }

    pub fn from_file(file: &DiagramFile, mt: ModeTheory) -> Result<Diagram, FinCatError> {
        let mut cats = Vec::new();
        for p in mt.modes() {
            let name = mt.mode_name(p);
            let spec = file
                .categories
                .get(name)
                .ok_or_else(|| invalid(format!("no category for mode `{name}`")))?;
            cats.push(build_category(spec)?);
        }
        for name in file.categories.keys() {
            mt.mode(name).map_err(|e| invalid(e.to_string()))?;
        }

        let nmor = mt.morphisms().count();
        let mut functors: Vec<Option<FinFunctor>> = vec![None; nmor];
        for (name, spec) in &file.functors {
            let m = mt.mor(name).map_err(|e| invalid(e.to_string()))?;
            let (src, dst) = (&cats[mt.source(m).0 as usize], &cats[mt.target(m).0 as usize]);
            functors[m.0 as usize] = Some(build_functor(name, spec, src, dst)?);
        }
        for m in mt.morphisms() {
            if mt.is_identity(m) {
                let c = &cats[mt.source(m).0 as usize];
                let f = FinFunctor::identity(c);
                if let Some(given) = &functors[m.0 as usize] {
                    if *given != f {
                        return Err(FinCatError::NotStrict(format!(
                            "`{}` must act as the identity",
                            mt.mor_name(m)
                        )));
                    }
                }
                functors[m.0 as usize] = Some(f);
            }
        }
        loop {
            let mut changed = false;
            for outer in mt.morphisms() {
                for inner in mt.morphisms() {
                    let Ok(m) = mt.compose(outer, inner) else {
                        continue;
                    };
                    if functors[m.0 as usize].is_some() {
                        continue;
                    }
                    if let (Some(o), Some(i)) = (&functors[outer.0 as usize], &functors[inner.0 as usize]) {
                        functors[m.0 as usize] = Some(o.after(i));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let functors: Vec<FinFunctor> = functors
            .into_iter()
            .enumerate()
            .map(|(i, f)| f.ok_or_else(|| invalid(format!("no functor for `{}`", mt.mor_name(MorId(i as u32))))))
            .collect::<Result<_, _>>()?;

        let ncell = mt.cells().count();
        let mut nats: Vec<Option<FinNat>> = vec![None; ncell];
        for (name, comps) in &file.cells {
            let c = mt.cell(name).map_err(|e| invalid(e.to_string()))?;
            let (src_cat, dst_cat) = (
                &cats[mt.source(mt.cell_source(c)).0 as usize],
                &cats[mt.target(mt.cell_source(c)).0 as usize],
            );
            let mut comp = Vec::new();
            for x in src_cat.objects() {
                let oname = src_cat.object_name(x);
                let a = match comps.get(oname) {
                    Some(a) => dst_cat.arrow_by_name(a)?,
                    None => thin_component(&mt, &functors, dst_cat, c, x).ok_or_else(|| {
                        invalid(format!("cell `{name}` has no component at `{oname}`"))
                    })?,
                };
                comp.push(a);
            }
            nats[c.0 as usize] = Some(FinNat { comp });
        }
        for c in mt.cells() {
            let m = mt.cell_source(c);
            if mt.identity_cell(m) == c {
                nats[c.0 as usize] = Some(FinNat::identity(
                    &cats[mt.target(m).0 as usize],
                    &functors[m.0 as usize],
                ));
            }
        }
        loop {
            let mut changed = false;
            for a in mt.cells() {
                for b in mt.cells() {
                    if let Ok(c) = mt.vcompose(b, a) {
                        if nats[c.0 as usize].is_none() {
                            if let (Some(na), Some(nb)) = (&nats[a.0 as usize], &nats[b.0 as usize]) {
                                let dst = &cats[mt.target(mt.cell_source(a)).0 as usize];
                                nats[c.0 as usize] = Some(na.then(dst, nb));
                                changed = true;
                            }
                        }
                    }
                }
                for m in mt.morphisms() {
                    if let Ok(c) = mt.whisker_left(m, a) {
                        if nats[c.0 as usize].is_none() {
                            if let Some(na) = &nats[a.0 as usize] {
                                nats[c.0 as usize] = Some(na.under(&functors[m.0 as usize]));
                                changed = true;
                            }
                        }
                    }
                    if let Ok(c) = mt.whisker_right(a, m) {
                        if nats[c.0 as usize].is_none() {
                            if let Some(na) = &nats[a.0 as usize] {
                                nats[c.0 as usize] = Some(na.before(&functors[m.0 as usize]));
                                changed = true;
                            }
                        }
                    }
                }
            }
            if changed {
                continue;
            }
            // Fall back to thin targets for whatever is still missing.
            for c in mt.cells() {
                if nats[c.0 as usize].is_some() {
                    continue;
                }
                let m = mt.cell_source(c);
                let (src_cat, dst_cat) = (&cats[mt.source(m).0 as usize], &cats[mt.target(m).0 as usize]);
                let comp: Option<Vec<ArrId>> = src_cat
                    .objects()
                    .map(|x| thin_component(&mt, &functors, dst_cat, c, x))
                    .collect();
                if let Some(comp) = comp {
                    nats[c.0 as usize] = Some(FinNat { comp });
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let nats: Vec<FinNat> = nats
            .into_iter()
            .enumerate()
            .map(|(i, n)| n.ok_or_else(|| invalid(format!("no components for cell `{}`", mt.cell_name(CellId(i as u32))))))
            .collect::<Result<_, _>>()?;

        let d = Diagram {
            name: file.name.clone().unwrap_or_else(|| "diagram".to_owned()),
            mt,
            cats,
            functors,
            nats,
        };
        d.validate()?;
        Ok(d)
    }

    /// Every functor and transformation is well formed and the assignment
    /// respects identities, composition, vertical composition and both
    /// whiskerings on the nose.
    pub fn validate(&self) -> Result<(), FinCatError> {
        let mt = &self.mt;
        let strict = |m: String| Err(FinCatError::NotStrict(m));
        for m in mt.morphisms() {
            self.functor(m)
                .verify(self.source_cat(m), self.target_cat(m))
                .map_err(|e| FinCatError::NotAFunctor(format!("`{}`: {e}", mt.mor_name(m))))?;
            if mt.is_identity(m) && *self.functor(m) != FinFunctor::identity(self.source_cat(m)) {
                return strict(format!("`{}` is not the identity", mt.mor_name(m)));
            }
        }
        for outer in mt.morphisms() {
            for inner in mt.morphisms() {
                if let Ok(m) = mt.compose(outer, inner) {
                    if *self.functor(m) != self.functor(outer).after(self.functor(inner)) {
                        return strict(format!(
                            "`{}` is not `{}` after `{}`",
                            mt.mor_name(m),
                            mt.mor_name(outer),
                            mt.mor_name(inner)
                        ));
                    }
                }
            }
        }
        for c in mt.cells() {
            let (f, g) = (mt.cell_source(c), mt.cell_target(c));
            self.nat(c)
                .verify(self.source_cat(f), self.target_cat(f), self.functor(f), self.functor(g))
                .map_err(|e| FinCatError::NotNatural(format!("`{}`: {e}", mt.cell_name(c))))?;
            if mt.identity_cell(f) == c && *self.nat(c) != FinNat::identity(self.target_cat(f), self.functor(f)) {
                return strict(format!("`{}` is not the identity", mt.cell_name(c)));
            }
        }
        for a in mt.cells() {
            let dst = self.target_cat(mt.cell_source(a));
            for b in mt.cells() {
                if let Ok(c) = mt.vcompose(b, a) {
                    if *self.nat(c) != self.nat(a).then(dst, self.nat(b)) {
                        return strict(format!(
                            "`{}` is not `{}` after `{}`",
                            mt.cell_name(c),
                            mt.cell_name(b),
                            mt.cell_name(a)
                        ));
                    }
                }
            }
            for m in mt.morphisms() {
                if let Ok(c) = mt.whisker_left(m, a) {
                    if *self.nat(c) != self.nat(a).under(self.functor(m)) {
                        return strict(format!("`{}` is not `{} <| {}`", mt.cell_name(c), mt.mor_name(m), mt.cell_name(a)));
                    }
                }
                if let Ok(c) = mt.whisker_right(a, m) {
                    if *self.nat(c) != self.nat(a).before(self.functor(m)) {
                        return strict(format!("`{}` is not `{} |> {}`", mt.cell_name(c), mt.cell_name(a), mt.mor_name(m)));
                    }
                }
            }
        }
        Ok(())
    }
}

fn thin_component(
    mt: &ModeTheory,
    functors: &[FinFunctor],
    dst: &FinCat,
    c: CellId,
    x: ObjId,
) -> Option<ArrId> {
    let f = &functors[mt.cell_source(c).0 as usize];
    let g = &functors[mt.cell_target(c).0 as usize];
    match dst.hom(f.on_obj(x), g.on_obj(x)) {
        [a] => Some(*a),
        _ => None,
    }
}

fn build_functor(name: &str, spec: &FunctorSpec, src: &FinCat, dst: &FinCat) -> Result<FinFunctor, FinCatError> {
    let mut obj = Vec::new();
    for x in src.objects() {
        let xn = src.object_name(x);
        let y = spec
            .objects
            .get(xn)
            .ok_or_else(|| invalid(format!("functor `{name}` does not map `{xn}`")))?;
        obj.push(dst.object_by_name(y)?);
    }
    if spec.arrows.is_empty() && dst.is_thin() {
        return FinFunctor::into_thin(src, dst, obj);
    }
    let mut arr = Vec::new();
    for f in src.arrows() {
        let a = if src.is_identity(f) {
            dst.id(obj[src.src(f).index()])
        } else {
            let fname = src.arrow_name(f);
            match spec.arrows.get(fname) {
                Some(g) => dst.arrow_by_name(g)?,
                None => match dst.hom(obj[src.src(f).index()], obj[src.dst(f).index()]) {
                    [g] => *g,
                    _ => return Err(invalid(format!("functor `{name}` does not map `{fname}`"))),
                },
            }
        };
        arr.push(a);
    }
    Ok(FinFunctor { obj, arr })
}

impl Diagram {
    /// Parse a diagram file, resolving its mode theory either as a bundled
    /// name or as a `.mt` path relative to `base`.
    pub fn load(text: &str, base: Option<&std::path::Path>) -> Result<Diagram, FinCatError> {
        let file = DiagramFile::from_json(text)?;
        let mt = if file.mode_theory.ends_with(".mt") {
            let path = match base {
                Some(dir) => dir.join(&file.mode_theory),
                None => std::path::PathBuf::from(&file.mode_theory),
            };
            let src = std::fs::read_to_string(&path)
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            ModeTheory::from_json(&src).map_err(|e| invalid(e.to_string()))?
        } else {
            let src = crate::bundled::theory_source(&file.mode_theory)
                .ok_or_else(|| invalid(format!("no bundled mode theory `{}`", file.mode_theory)))?;
            ModeTheory::from_json(src).map_err(|e| invalid(e.to_string()))?
        };
        Diagram::from_file(&file, mt)
    }
}
