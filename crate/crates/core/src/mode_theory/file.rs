//! JSON document format for mode theories.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{Adjoint, Cell, CellId, Classes, ModeError, ModeId, ModeTheory, MorId, Morphism};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedArrow {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesEntry {
    #[serde(default)]
    pub tangible: Vec<String>,
    #[serde(default)]
    pub sharp: Vec<String>,
    #[serde(default)]
    pub transparent: Vec<String>,
    #[serde(default)]
    pub sinister: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjointEntry {
    pub mor: String,
    pub dagger: String,
    pub unit: String,
    pub counit: String,
}

/// On-disk shape. Identity morphisms (`id:<mode>`) and identity cells
/// (`id:<morphism>`) may be omitted; so may table entries whose value is
/// forced by the unit laws.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeTheoryFile {
    pub modes: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<NamedArrow>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
    #[serde(default)]
    pub cells: Vec<NamedArrow>,
    #[serde(default)]
    pub vcompose: Vec<[String; 3]>,
    #[serde(default)]
    pub whisker_left: Vec<[String; 3]>,
    #[serde(default)]
    pub whisker_right: Vec<[String; 3]>,
    #[serde(default)]
    pub classes: ClassesEntry,
    #[serde(default)]
    pub adjoints: Vec<AdjointEntry>,
}

fn malformed(msg: impl Into<String>) -> ModeError {
    ModeError::MalformedTable(msg.into())
}

fn insert_entry<K: std::hash::Hash + Eq + Copy, V: PartialEq + Copy>(
    table: &mut HashMap<K, V>,
    key: K,
    value: V,
    what: impl FnOnce() -> String,
) -> Result<(), ModeError> {
    match table.get(&key) {
        Some(existing) if *existing != value => Err(malformed(format!(
            "conflicting entries for {}",
            what()
        ))),
        _ => {
            table.insert(key, value);
            Ok(())
        }
    }
}

impl ModeTheory {
    pub fn from_file(file: &ModeTheoryFile) -> Result<ModeTheory, ModeError> {
        let mut mt = ModeTheory {
            modes: Vec::new(),
            morphisms: Vec::new(),
            cells: Vec::new(),
            mode_index: HashMap::new(),
            mor_index: HashMap::new(),
            cell_index: HashMap::new(),
            identity_mor: Vec::new(),
            identity_cell: Vec::new(),
            compose: HashMap::new(),
            vcompose: HashMap::new(),
            whisker_left: HashMap::new(),
            whisker_right: HashMap::new(),
            classes: Vec::new(),
            adjoints: HashMap::new(),
        };

        for name in &file.modes {
            if mt.mode_index.contains_key(name) {
                return Err(malformed(format!("duplicate mode `{name}`")));
            }
            let id = ModeId(mt.modes.len() as u32);
            mt.modes.push(name.clone());
            mt.mode_index.insert(name.clone(), id);
        }

        let add_mor = |mt: &mut ModeTheory, name: String, source, target| {
            let id = MorId(mt.morphisms.len() as u32);
            mt.mor_index.insert(name.clone(), id);
            mt.morphisms.push(Morphism {
                name,
                source,
                target,
            });
            id
        };
        for p in 0..mt.modes.len() {
            let name = format!("id:{}", mt.modes[p]);
            let id = add_mor(&mut mt, name, ModeId(p as u32), ModeId(p as u32));
            mt.identity_mor.push(id);
        }
        for m in &file.morphisms {
            let src = mt.mode(&m.src)?;
            let dst = mt.mode(&m.dst)?;
            if let Some(&existing) = mt.mor_index.get(&m.name) {
                // Re-declaring a synthesized identity is allowed when it agrees.
                let e = &mt.morphisms[existing.0 as usize];
                if mt.identity_mor.contains(&existing) && e.source == src && e.target == dst {
                    continue;
                }
                return Err(malformed(format!("duplicate morphism `{}`", m.name)));
            }
            if m.name.starts_with("id:") {
                return Err(malformed(format!("reserved morphism name `{}`", m.name)));
            }
            add_mor(&mut mt, m.name.clone(), src, dst);
        }

        let add_cell = |mt: &mut ModeTheory, name: String, source, target| {
            let id = CellId(mt.cells.len() as u32);
            mt.cell_index.insert(name.clone(), id);
            mt.cells.push(Cell {
                name,
                source,
                target,
            });
            id
        };
        for m in 0..mt.morphisms.len() {
            let name = format!("id:{}", mt.morphisms[m].name);
            let id = add_cell(&mut mt, name, MorId(m as u32), MorId(m as u32));
            mt.identity_cell.push(id);
        }
        for c in &file.cells {
            let src = mt.mor(&c.src)?;
            let dst = mt.mor(&c.dst)?;
            if let Some(&existing) = mt.cell_index.get(&c.name) {
                let e = &mt.cells[existing.0 as usize];
                if mt.identity_cell.contains(&existing) && e.source == src && e.target == dst {
                    continue;
                }
                return Err(malformed(format!("duplicate cell `{}`", c.name)));
            }
            if c.name.starts_with("id:") {
                return Err(malformed(format!("reserved cell name `{}`", c.name)));
            }
            if mt.source(src) != mt.source(dst) || mt.target(src) != mt.target(dst) {
                return Err(malformed(format!(
                    "cell `{}` relates non-parallel morphisms `{}` and `{}`",
                    c.name, c.src, c.dst
                )));
            }
            add_cell(&mut mt, c.name.clone(), src, dst);
        }

        // Composition of morphisms.
        for [g, f, gf] in &file.compose {
            let (g, f, gf) = (mt.mor(g)?, mt.mor(f)?, mt.mor(gf)?);
            if mt.source(g) != mt.target(f)
                || mt.source(gf) != mt.source(f)
                || mt.target(gf) != mt.target(g)
            {
                return Err(malformed(format!(
                    "compose entry ({}, {}) -> {} has mismatched endpoints",
                    mt.mor_name(g),
                    mt.mor_name(f),
                    mt.mor_name(gf)
                )));
            }
            let names = (mt.mor_name(g).to_owned(), mt.mor_name(f).to_owned());
            insert_entry(&mut mt.compose, (g, f), gf, || format!("compose{names:?}"))?;
        }
        for m in mt.morphisms().collect::<Vec<_>>() {
            let (s, t) = (mt.source(m), mt.target(m));
            mt.compose.entry((mt.identity(t), m)).or_insert(m);
            mt.compose.entry((m, mt.identity(s))).or_insert(m);
        }

        // Vertical composition.
        for [b, a, ba] in &file.vcompose {
            let (b, a, ba) = (mt.cell(b)?, mt.cell(a)?, mt.cell(ba)?);
            if mt.cell_target(a) != mt.cell_source(b)
                || mt.cell_source(ba) != mt.cell_source(a)
                || mt.cell_target(ba) != mt.cell_target(b)
            {
                return Err(malformed(format!(
                    "vcompose entry ({}, {}) -> {} has mismatched boundaries",
                    mt.cell_name(b),
                    mt.cell_name(a),
                    mt.cell_name(ba)
                )));
            }
            let names = (mt.cell_name(b).to_owned(), mt.cell_name(a).to_owned());
            insert_entry(&mut mt.vcompose, (b, a), ba, || format!("vcompose{names:?}"))?;
        }
        for c in mt.cells().collect::<Vec<_>>() {
            let (s, t) = (mt.cell_source(c), mt.cell_target(c));
            mt.vcompose.entry((mt.identity_cell(t), c)).or_insert(c);
            mt.vcompose.entry((c, mt.identity_cell(s))).or_insert(c);
        }

        // Whiskering. Entries are typed against the compose table.
        for [mu, beta, r] in &file.whisker_left {
            let (mu, beta, r) = (mt.mor(mu)?, mt.cell(beta)?, mt.cell(r)?);
            let expect_src = mt
                .compose(mu, mt.cell_source(beta))
                .map_err(|e| malformed(format!("whisker_left entry: {e}")))?;
            let expect_dst = mt
                .compose(mu, mt.cell_target(beta))
                .map_err(|e| malformed(format!("whisker_left entry: {e}")))?;
            if mt.cell_source(r) != expect_src || mt.cell_target(r) != expect_dst {
                return Err(malformed(format!(
                    "whisker_left entry ({}, {}) -> {} has mismatched boundaries",
                    mt.mor_name(mu),
                    mt.cell_name(beta),
                    mt.cell_name(r)
                )));
            }
            let names = (mt.mor_name(mu).to_owned(), mt.cell_name(beta).to_owned());
            insert_entry(&mut mt.whisker_left, (mu, beta), r, || {
                format!("whisker_left{names:?}")
            })?;
        }
        for [alpha, nu, r] in &file.whisker_right {
            let (alpha, nu, r) = (mt.cell(alpha)?, mt.mor(nu)?, mt.cell(r)?);
            let expect_src = mt
                .compose(mt.cell_source(alpha), nu)
                .map_err(|e| malformed(format!("whisker_right entry: {e}")))?;
            let expect_dst = mt
                .compose(mt.cell_target(alpha), nu)
                .map_err(|e| malformed(format!("whisker_right entry: {e}")))?;
            if mt.cell_source(r) != expect_src || mt.cell_target(r) != expect_dst {
                return Err(malformed(format!(
                    "whisker_right entry ({}, {}) -> {} has mismatched boundaries",
                    mt.cell_name(alpha),
                    mt.mor_name(nu),
                    mt.cell_name(r)
                )));
            }
            let names = (mt.cell_name(alpha).to_owned(), mt.mor_name(nu).to_owned());
            insert_entry(&mut mt.whisker_right, (alpha, nu), r, || {
                format!("whisker_right{names:?}")
            })?;
        }
        for c in mt.cells().collect::<Vec<_>>() {
            let s = mt.cell_source(c);
            mt.whisker_left.entry((mt.identity(mt.target(s)), c)).or_insert(c);
            mt.whisker_right.entry((c, mt.identity(mt.source(s)))).or_insert(c);
        }
        for m in mt.morphisms().collect::<Vec<_>>() {
            for n in mt.morphisms().collect::<Vec<_>>() {
                if mt.source(m) != mt.target(n) {
                    continue;
                }
                if let Ok(mn) = mt.compose(m, n) {
                    let id = mt.identity_cell(mn);
                    mt.whisker_left.entry((m, mt.identity_cell(n))).or_insert(id);
                    mt.whisker_right.entry((mt.identity_cell(m), n)).or_insert(id);
                }
            }
        }

        // Classes.
        mt.classes = vec![Classes::default(); mt.morphisms.len()];
        let flag = |mt: &mut ModeTheory,
                    names: &[String],
                    set: fn(&mut Classes)|
         -> Result<(), ModeError> {
            for n in names {
                let m = mt.mor(n)?;
                set(&mut mt.classes[m.0 as usize]);
            }
            Ok(())
        };
        flag(&mut mt, &file.classes.tangible, |c| c.tangible = true)?;
        flag(&mut mt, &file.classes.sharp, |c| c.sharp = true)?;
        flag(&mut mt, &file.classes.transparent, |c| c.transparent = true)?;
        flag(&mut mt, &file.classes.sinister, |c| c.sinister = true)?;

        for a in &file.adjoints {
            let mu = mt.mor(&a.mor)?;
            let dagger = mt.mor(&a.dagger)?;
            let unit = mt.cell(&a.unit)?;
            let counit = mt.cell(&a.counit)?;
            if mt.source(dagger) != mt.target(mu) || mt.target(dagger) != mt.source(mu) {
                return Err(malformed(format!(
                    "adjoint `{}` of `{}` has the wrong endpoints",
                    a.dagger, a.mor
                )));
            }
            let unit_dst = mt
                .compose(dagger, mu)
                .map_err(|e| malformed(format!("adjoint of `{}`: {e}", a.mor)))?;
            let counit_src = mt
                .compose(mu, dagger)
                .map_err(|e| malformed(format!("adjoint of `{}`: {e}", a.mor)))?;
            if mt.cell_source(unit) != mt.identity(mt.source(mu)) || mt.cell_target(unit) != unit_dst
            {
                return Err(malformed(format!(
                    "unit `{}` of `{}` is not a cell 1 => {}",
                    a.unit,
                    a.mor,
                    mt.mor_name(unit_dst)
                )));
            }
            if mt.cell_source(counit) != counit_src
                || mt.cell_target(counit) != mt.identity(mt.target(mu))
            {
                return Err(malformed(format!(
                    "counit `{}` of `{}` is not a cell {} => 1",
                    a.counit,
                    a.mor,
                    mt.mor_name(counit_src)
                )));
            }
            if mt.adjoints.contains_key(&mu) {
                return Err(malformed(format!("two adjoints given for `{}`", a.mor)));
            }
            mt.adjoints.insert(
                mu,
                Adjoint {
                    dagger,
                    unit,
                    counit,
                },
            );
        }

        Ok(mt)
    }

    /// Fully explicit document: every entry, including synthesized ones, is
    /// written out so that reloading yields an identical theory.
    pub fn to_file(&self) -> ModeTheoryFile {
        let mor_name = |m: MorId| self.mor_name(m).to_owned();
        let cell_name = |c: CellId| self.cell_name(c).to_owned();

        let morphisms = self
            .morphisms
            .iter()
            .filter(|m| !m.name.starts_with("id:"))
            .map(|m| NamedArrow {
                name: m.name.clone(),
                src: self.mode_name(m.source).to_owned(),
                dst: self.mode_name(m.target).to_owned(),
            })
            .collect();
        let cells = self
            .cells
            .iter()
            .filter(|c| !c.name.starts_with("id:"))
            .map(|c| NamedArrow {
                name: c.name.clone(),
                src: mor_name(c.source),
                dst: mor_name(c.target),
            })
            .collect();

        let sorted = |entries: Vec<[String; 3]>| {
            let mut v = entries;
            v.sort();
            v
        };
        let compose = sorted(
            self.compose
                .iter()
                .map(|(&(g, f), &gf)| [mor_name(g), mor_name(f), mor_name(gf)])
                .collect(),
        );
        let vcompose = sorted(
            self.vcompose
                .iter()
                .map(|(&(b, a), &ba)| [cell_name(b), cell_name(a), cell_name(ba)])
                .collect(),
        );
        let whisker_left = sorted(
            self.whisker_left
                .iter()
                .map(|(&(m, b), &r)| [mor_name(m), cell_name(b), cell_name(r)])
                .collect(),
        );
        let whisker_right = sorted(
            self.whisker_right
                .iter()
                .map(|(&(a, n), &r)| [cell_name(a), mor_name(n), cell_name(r)])
                .collect(),
        );

        let mut classes = ClassesEntry::default();
        for m in self.morphisms() {
            let c = self.classes(m);
            if c.tangible {
                classes.tangible.push(mor_name(m));
            }
            if c.sharp {
                classes.sharp.push(mor_name(m));
            }
            if c.transparent {
                classes.transparent.push(mor_name(m));
            }
            if c.sinister {
                classes.sinister.push(mor_name(m));
            }
        }
        let adjoints: BTreeMap<String, AdjointEntry> = self
            .adjoints
            .iter()
            .map(|(&m, a)| {
                (
                    mor_name(m),
                    AdjointEntry {
                        mor: mor_name(m),
                        dagger: mor_name(a.dagger),
                        unit: cell_name(a.unit),
                        counit: cell_name(a.counit),
                    },
                )
            })
            .collect();

        ModeTheoryFile {
            modes: self.modes.clone(),
            morphisms,
            compose,
            cells,
            vcompose,
            whisker_left,
            whisker_right,
            classes,
            adjoints: adjoints.into_values().collect(),
        }
    }
}
