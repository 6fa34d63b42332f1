use super::{ArrId, FinCat, FinCatError, FinFunctor, ObjId};

/// A finite diagram drawn in a category: nodes are objects and edges are
/// arrows between the nodes' objects.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LimitDiagram {
    pub nodes: Vec<ObjId>,
    pub edges: Vec<(usize, usize, ArrId)>,
}

impl LimitDiagram {
    pub fn new() -> LimitDiagram {
        LimitDiagram::default()
    }

    pub fn discrete(nodes: Vec<ObjId>) -> LimitDiagram {
        LimitDiagram {
            nodes,
            edges: Vec::new(),
        }
    }

    pub fn node(&mut self, x: ObjId) -> usize {
        self.nodes.push(x);
        self.nodes.len() - 1
    }

    pub fn edge(&mut self, from: usize, to: usize, f: ArrId) {
        self.edges.push((from, to, f));
    }

    /// Image under a functor.
    pub fn image(&self, f: &FinFunctor) -> LimitDiagram {
        LimitDiagram {
            nodes: self.nodes.iter().map(|&x| f.on_obj(x)).collect(),
            edges: self.edges.iter().map(|&(i, j, a)| (i, j, f.on_arr(a))).collect(),
        }
    }

    /// Edges are arrows of `c` between the right objects.
    pub fn well_formed(&self, c: &FinCat) -> bool {
        self.edges.iter().all(|&(i, j, f)| {
            i < self.nodes.len()
                && j < self.nodes.len()
                && c.src(f) == self.nodes[i]
                && c.dst(f) == self.nodes[j]
        })
    }
}

/// A cone: an apex with one leg to each node. Read with reversed arrows it
/// is a cocone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    pub apex: ObjId,
    pub legs: Vec<ArrId>,
}

impl Cone {
    pub fn image(&self, f: &FinFunctor) -> Cone {
        Cone {
            apex: f.on_obj(self.apex),
            legs: self.legs.iter().map(|&l| f.on_arr(l)).collect(),
        }
    }
}

/// Parameters of the exhaustive search: a cap on the number of candidate
/// leg tuples and the order in which apices are tried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Search {
    pub cap: u128,
    pub order: Option<Vec<ObjId>>,
}

impl Default for Search {
    fn default() -> Search {
        Search {
            cap: 10_000_000,
            order: None,
        }
    }
}

impl Search {
    pub fn with_cap(cap: u128) -> Search {
        Search { cap, order: None }
    }

    /// Reorder apices by a permutation of the object indices. Entries that
    /// are out of range are dropped and missing objects appended.
    pub fn permuted(&self, perm: Vec<ObjId>) -> Search {
        Search {
            cap: self.cap,
            order: Some(perm),
        }
    }

    fn apices(&self, c: &FinCat) -> Vec<ObjId> {
        match &self.order {
            None => c.objects().collect(),
            Some(order) => {
                let mut seen = vec![false; c.object_count()];
                let mut out = Vec::new();
                for &x in order.iter().chain(&c.objects().collect::<Vec<_>>()) {
                    if x.index() < seen.len() && !seen[x.index()] {
                        seen[x.index()] = true;
                        out.push(x);
                    }
                }
                out
            }
        }
    }

    fn admit(&self, c: &FinCat, d: &LimitDiagram) -> Result<(), FinCatError> {
        let estimate = c.objects().fold(0u128, |acc, x| {
            let tuples = d
                .nodes
                .iter()
                .fold(1u128, |p, &y| p.saturating_mul(c.hom(x, y).len() as u128));
            acc.saturating_add(tuples)
        });
        if estimate > self.cap {
            return Err(FinCatError::CapExceeded {
                estimate,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

pub fn is_cone(c: &FinCat, d: &LimitDiagram, cone: &Cone) -> bool {
    cone.legs.len() == d.nodes.len()
        && cone
            .legs
            .iter()
            .zip(&d.nodes)
            .all(|(&l, &y)| c.src(l) == cone.apex && c.dst(l) == y)
        && d
            .edges
            .iter()
            .all(|&(i, j, f)| c.compose(f, cone.legs[i]) == cone.legs[j])
}

/// Every cone over `d` with the given apex, by backtracking over legs.
pub fn cones(c: &FinCat, d: &LimitDiagram, apex: ObjId) -> Vec<Cone> {
    // Edges checkable once both endpoints are assigned, keyed by the later one.
    let mut checks: Vec<Vec<(usize, usize, ArrId)>> = vec![Vec::new(); d.nodes.len()];
    for &(i, j, f) in &d.edges {
        checks[i.max(j)].push((i, j, f));
    }
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(d.nodes.len());
    fn go(
        c: &FinCat,
        d: &LimitDiagram,
        apex: ObjId,
        checks: &[Vec<(usize, usize, ArrId)>],
        legs: &mut Vec<ArrId>,
        out: &mut Vec<Cone>,
    ) {
        let k = legs.len();
        if k == d.nodes.len() {
            out.push(Cone {
                apex,
                legs: legs.clone(),
            });
            return;
        }
        for &l in c.hom(apex, d.nodes[k]) {
            legs.push(l);
            if checks[k]
                .iter()
                .all(|&(i, j, f)| c.compose(f, legs[i]) == legs[j])
            {
                go(c, d, apex, checks, legs, out);
            }
            legs.pop();
        }
    }
    go(c, d, apex, &checks, &mut legs, &mut out);
    out
}

/// All arrows `u : source.apex -> target.apex` with `target.legs[j] . u =
/// source.legs[j]` for every node.
pub fn factorizations(c: &FinCat, target: &Cone, source: &Cone) -> Vec<ArrId> {
    c.hom(source.apex, target.apex)
        .iter()
        .copied()
        .filter(|&u| {
            target
                .legs
                .iter()
                .zip(&source.legs)
                .all(|(&t, &s)| c.compose(t, u) == s)
        })
        .collect()
}

fn all_cones(c: &FinCat, d: &LimitDiagram, search: &Search) -> Result<Vec<Cone>, FinCatError> {
    search.admit(c, d)?;
    Ok(search
        .apices(c)
        .into_iter()
        .flat_map(|x| cones(c, d, x))
        .collect())
}

fn terminal_among(c: &FinCat, candidate: &Cone, all: &[Cone]) -> bool {
    all.iter()
        .all(|other| factorizations(c, candidate, other).len() == 1)
}

/// Whether `cone` is a limit: every cone over `d` factors through it in
/// exactly one way.
pub fn is_limit(c: &FinCat, d: &LimitDiagram, cone: &Cone, search: &Search) -> Result<bool, FinCatError> {
    if !is_cone(c, d, cone) {
        return Ok(false);
    }
    let all = all_cones(c, d, search)?;
    Ok(terminal_among(c, cone, &all))
}

/// A limit of `d`, or `None` when no terminal cone exists.
pub fn limit(c: &FinCat, d: &LimitDiagram, search: &Search) -> Result<Option<Cone>, FinCatError> {
    assert!(d.well_formed(c), "diagram edges must be arrows between its nodes");
    let all = all_cones(c, d, search)?;
    Ok(all.iter().find(|k| terminal_among(c, k, &all)).cloned())
}

/// A colimit of `d`: a limit of the reversed diagram in the opposite
/// category. The legs of the result run from the nodes to the apex.
pub fn colimit(c: &FinCat, d: &LimitDiagram, search: &Search) -> Result<Option<Cone>, FinCatError> {
    let op = c.opposite();
    let reversed = LimitDiagram {
        nodes: d.nodes.clone(),
        edges: d.edges.iter().map(|&(i, j, f)| (j, i, f)).collect(),
    };
    limit(&op, &reversed, search)
}

/// Whether `f` sends the limit `cone` of `d` to a limit of the image.
pub fn preserves_limit(
    f: &FinFunctor,
    dst: &FinCat,
    d: &LimitDiagram,
    cone: &Cone,
    search: &Search,
) -> Result<bool, FinCatError> {
    is_limit(dst, &d.image(f), &cone.image(f), search)
}
