use super::{ArrId, FinCat, FinCatError, ObjId};

/// A functor between finite categories, as object and arrow tables. The
/// categories themselves are passed alongside when needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinFunctor {
    pub obj: Vec<ObjId>,
    pub arr: Vec<ArrId>,
}

impl FinFunctor {
    pub fn identity(c: &FinCat) -> FinFunctor {
        FinFunctor {
            obj: c.objects().collect(),
            arr: c.arrows().collect(),
        }
    }

    /// Constant functor on `x`.
    pub fn constant(src: &FinCat, dst: &FinCat, x: ObjId) -> FinFunctor {
        FinFunctor {
            obj: vec![x; src.object_count()],
            arr: vec![dst.id(x); src.arrow_count()],
        }
    }

    /// The functor with the given object map, into a thin category: each
    /// arrow goes to the unique arrow between the image objects.
    pub fn into_thin(src: &FinCat, dst: &FinCat, obj: Vec<ObjId>) -> Result<FinFunctor, FinCatError> {
        let arr = src
            .arrows()
            .map(|f| {
                let (x, y) = (obj[src.src(f).index()], obj[src.dst(f).index()]);
                match dst.hom(x, y) {
                    [g] => Ok(*g),
                    [] => Err(FinCatError::NotAFunctor(format!(
                        "`{}` has no image: no arrow from `{}` to `{}`",
                        src.arrow_name(f),
                        dst.object_name(x),
                        dst.object_name(y)
                    ))),
                    _ => Err(FinCatError::NotAFunctor(format!(
                        "the image of `{}` is ambiguous; give an arrow map",
                        src.arrow_name(f)
                    ))),
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(FinFunctor { obj, arr })
    }

    pub fn on_obj(&self, x: ObjId) -> ObjId {
        self.obj[x.index()]
    }

    pub fn on_arr(&self, f: ArrId) -> ArrId {
        self.arr[f.index()]
    }

    /// `self . inner`.
    pub fn after(&self, inner: &FinFunctor) -> FinFunctor {
        FinFunctor {
            obj: inner.obj.iter().map(|&x| self.on_obj(x)).collect(),
            arr: inner.arr.iter().map(|&f| self.on_arr(f)).collect(),
        }
    }

    /// Endpoints, identities and composition are preserved, checked on
    /// every arrow and every composable pair.
    pub fn verify(&self, src: &FinCat, dst: &FinCat) -> Result<(), FinCatError> {
        let fail = |m: String| Err(FinCatError::NotAFunctor(m));
        if self.obj.len() != src.object_count() || self.arr.len() != src.arrow_count() {
            return fail("tables do not match the source category".into());
        }
        if self.obj.iter().any(|x| x.index() >= dst.object_count())
            || self.arr.iter().any(|f| f.index() >= dst.arrow_count())
        {
            return fail("tables point outside the target category".into());
        }
        for f in src.arrows() {
            let g = self.on_arr(f);
            if dst.src(g) != self.on_obj(src.src(f)) || dst.dst(g) != self.on_obj(src.dst(f)) {
                return fail(format!("`{}` is sent to an arrow with the wrong endpoints", src.arrow_name(f)));
            }
        }
        for x in src.objects() {
            if self.on_arr(src.id(x)) != dst.id(self.on_obj(x)) {
                return fail(format!("identity of `{}` is not preserved", src.object_name(x)));
            }
        }
        for g in src.arrows() {
            for f in src.arrows() {
                if let Some(gf) = src.try_compose(g, f) {
                    if self.on_arr(gf) != dst.compose(self.on_arr(g), self.on_arr(f)) {
                        return fail(format!(
                            "composite of `{}` after `{}` is not preserved",
                            src.arrow_name(g),
                            src.arrow_name(f)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A natural transformation, as its components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinNat {
    pub comp: Vec<ArrId>,
}

impl FinNat {
    pub fn identity(dst: &FinCat, f: &FinFunctor) -> FinNat {
        FinNat {
            comp: f.obj.iter().map(|&x| dst.id(x)).collect(),
        }
    }

    pub fn at(&self, x: ObjId) -> ArrId {
        self.comp[x.index()]
    }

    /// `later . self`, componentwise.
    pub fn then(&self, dst: &FinCat, later: &FinNat) -> FinNat {
        FinNat {
            comp: self
                .comp
                .iter()
                .zip(&later.comp)
                .map(|(&a, &b)| dst.compose(b, a))
                .collect(),
        }
    }

    /// `h . self`: apply a functor to every component.
    pub fn under(&self, h: &FinFunctor) -> FinNat {
        FinNat {
            comp: self.comp.iter().map(|&a| h.on_arr(a)).collect(),
        }
    }

    /// `self . k`: precompose with a functor.
    pub fn before(&self, k: &FinFunctor) -> FinNat {
        FinNat {
            comp: k.obj.iter().map(|&x| self.at(x)).collect(),
        }
    }

    /// Naturality squares for `f => g : src -> dst` on every arrow.
    pub fn verify(&self, src: &FinCat, dst: &FinCat, f: &FinFunctor, g: &FinFunctor) -> Result<(), FinCatError> {
        let fail = |m: String| Err(FinCatError::NotNatural(m));
        if self.comp.len() != src.object_count() {
            return fail("one component per object is required".into());
        }
        for x in src.objects() {
            let a = self.at(x);
            if a.index() >= dst.arrow_count() || dst.src(a) != f.on_obj(x) || dst.dst(a) != g.on_obj(x) {
                return fail(format!("component at `{}` has the wrong endpoints", src.object_name(x)));
            }
        }
        for h in src.arrows() {
            let (x, y) = (src.src(h), src.dst(h));
            if dst.compose(self.at(y), f.on_arr(h)) != dst.compose(g.on_arr(h), self.at(x)) {
                return fail(format!("square at `{}` does not commute", src.arrow_name(h)));
            }
        }
        Ok(())
    }
}
