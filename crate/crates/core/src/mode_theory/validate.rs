//! Exhaustive axiom scan over a finite mode theory.

use std::collections::BTreeSet;
use std::fmt;

use super::{CellId, ModeTheory, MorId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Identities are transparent and sharp.
    IdentityClasses,
    /// Sharp followed by transparent is tangible.
    SharpTransparentTangible,
    /// Every sinister morphism carries a chosen right adjoint.
    SinisterAdjoint,
    /// Both triangle identities for each chosen adjunction.
    Triangle,
    /// Every composable pair has a table entry.
    TableTotality,
    ComposeAssociativity,
    ComposeUnit,
    VcomposeAssociativity,
    VcomposeUnit,
    /// `1_nu |> rho = 1_(nu.rho)`, `mu <| 1_rho = 1_(mu.rho)`,
    /// `1 <| beta = beta`, `alpha |> 1 = alpha`.
    WhiskerUnit,
    /// Whiskering distributes over vertical composition.
    WhiskerFunctoriality,
    /// `(mu <| beta) |> sigma = mu <| (beta |> sigma)`, and whiskering by a
    /// composite is iterated whiskering.
    WhiskerAssociativity,
}

impl Axiom {
    pub const ALL: [Axiom; 12] = [
        Axiom::IdentityClasses,
        Axiom::SharpTransparentTangible,
        Axiom::SinisterAdjoint,
        Axiom::Triangle,
        Axiom::TableTotality,
        Axiom::ComposeAssociativity,
        Axiom::ComposeUnit,
        Axiom::VcomposeAssociativity,
        Axiom::VcomposeUnit,
        Axiom::WhiskerUnit,
        Axiom::WhiskerFunctoriality,
        Axiom::WhiskerAssociativity,
    ];

    pub fn code(self) -> &'static str {
        match self {
            Axiom::IdentityClasses => "identity-classes",
            Axiom::SharpTransparentTangible => "sharp-transparent-tangible",
            Axiom::SinisterAdjoint => "sinister-adjoint",
            Axiom::Triangle => "triangle",
            Axiom::TableTotality => "table-totality",
            Axiom::ComposeAssociativity => "compose-associativity",
            Axiom::ComposeUnit => "compose-unit",
            Axiom::VcomposeAssociativity => "vcompose-associativity",
            Axiom::VcomposeUnit => "vcompose-unit",
            Axiom::WhiskerUnit => "whisker-unit",
            Axiom::WhiskerFunctoriality => "whisker-functoriality",
            Axiom::WhiskerAssociativity => "whisker-associativity",
        }
    }

    pub fn from_code(code: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.code() == code)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.detail)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn axioms(&self) -> BTreeSet<Axiom> {
        self.violations.iter().map(|v| v.axiom).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

struct Scan<'a> {
    mt: &'a ModeTheory,
    out: Vec<Violation>,
}

impl Scan<'_> {
    fn fail(&mut self, axiom: Axiom, detail: String) {
        self.out.push(Violation { axiom, detail });
    }

    fn m(&self, m: MorId) -> &str {
        self.mt.mor_name(m)
    }

    fn c(&self, c: CellId) -> &str {
        self.mt.cell_name(c)
    }
}

pub(super) fn validate(mt: &ModeTheory) -> ValidationReport {
    let mut s = Scan {
        mt,
        out: Vec::new(),
    };
    classes(&mut s);
    totality(&mut s);
    compose_laws(&mut s);
    vcompose_laws(&mut s);
    whisker_laws(&mut s);
    adjoints(&mut s);
    ValidationReport { violations: s.out }
}

fn classes(s: &mut Scan) {
    let mt = s.mt;
    for p in mt.modes() {
        let id = mt.identity(p);
        if !(mt.is_transparent(id) && mt.is_sharp(id)) {
            s.fail(
                Axiom::IdentityClasses,
                format!("`{}` must be transparent and sharp", s.m(id)),
            );
        }
    }
    for mu in mt.morphisms() {
        if !mt.is_sharp(mu) {
            continue;
        }
        for nu in mt.morphisms() {
            if !mt.is_transparent(nu) || mt.source(nu) != mt.target(mu) {
                continue;
            }
            if let Ok(c) = mt.compose(nu, mu) {
                if !mt.is_tangible(c) {
                    s.fail(
                        Axiom::SharpTransparentTangible,
                        format!(
                            "`{}` . `{}` = `{}` is not tangible",
                            s.m(nu),
                            s.m(mu),
                            s.m(c)
                        ),
                    );
                }
            }
        }
    }
}

fn totality(s: &mut Scan) {
    let mt = s.mt;
    let mut missing = Vec::new();
    for g in mt.morphisms() {
        for f in mt.morphisms() {
            if mt.source(g) == mt.target(f) && mt.compose(g, f).is_err() {
                missing.push(format!("compose({}, {})", s.m(g), s.m(f)));
            }
        }
    }
    for b in mt.cells() {
        for a in mt.cells() {
            if mt.cell_source(b) == mt.cell_target(a) && mt.vcompose(b, a).is_err() {
                missing.push(format!("vcompose({}, {})", s.c(b), s.c(a)));
            }
        }
    }
    for mu in mt.morphisms() {
        for beta in mt.cells() {
            let rho = mt.cell_source(beta);
            if mt.source(mu) == mt.target(rho) && mt.whisker_left(mu, beta).is_err() {
                missing.push(format!("whisker_left({}, {})", s.m(mu), s.c(beta)));
            }
            if mt.target(mu) == mt.source(rho) && mt.whisker_right(beta, mu).is_err() {
                missing.push(format!("whisker_right({}, {})", s.c(beta), s.m(mu)));
            }
        }
    }
    for d in missing {
        s.fail(Axiom::TableTotality, format!("missing entry {d}"));
    }
}

fn compose_laws(s: &mut Scan) {
    let mt = s.mt;
    for m in mt.morphisms() {
        let l = mt.compose(mt.identity(mt.target(m)), m);
        let r = mt.compose(m, mt.identity(mt.source(m)));
        if l.is_ok_and(|x| x != m) || r.is_ok_and(|x| x != m) {
            s.fail(
                Axiom::ComposeUnit,
                format!("identity does not act trivially on `{}`", s.m(m)),
            );
        }
    }
    for a in mt.morphisms() {
        for b in mt.morphisms() {
            let Ok(ab) = mt.compose(a, b) else { continue };
            for c in mt.morphisms() {
                let Ok(bc) = mt.compose(b, c) else { continue };
                if let (Ok(l), Ok(r)) = (mt.compose(ab, c), mt.compose(a, bc)) {
                    if l != r {
                        s.fail(
                            Axiom::ComposeAssociativity,
                            format!(
                                "({0} . {1}) . {2} = {3} but {0} . ({1} . {2}) = {4}",
                                s.m(a),
                                s.m(b),
                                s.m(c),
                                s.m(l),
                                s.m(r)
                            ),
                        );
                    }
                }
            }
        }
    }
}

fn vcompose_laws(s: &mut Scan) {
    let mt = s.mt;
    for c in mt.cells() {
        let l = mt.vcompose(mt.identity_cell(mt.cell_target(c)), c);
        let r = mt.vcompose(c, mt.identity_cell(mt.cell_source(c)));
        if l.is_ok_and(|x| x != c) || r.is_ok_and(|x| x != c) {
            s.fail(
                Axiom::VcomposeUnit,
                format!("identity cell does not act trivially on `{}`", s.c(c)),
            );
        }
    }
    for a in mt.cells() {
        for b in mt.cells() {
            let Ok(ab) = mt.vcompose(a, b) else { continue };
            for c in mt.cells() {
                let Ok(bc) = mt.vcompose(b, c) else { continue };
                if let (Ok(l), Ok(r)) = (mt.vcompose(ab, c), mt.vcompose(a, bc)) {
                    if l != r {
                        s.fail(
                            Axiom::VcomposeAssociativity,
                            format!(
                                "({0} * {1}) * {2} = {3} but {0} * ({1} * {2}) = {4}",
                                s.c(a),
                                s.c(b),
                                s.c(c),
                                s.c(l),
                                s.c(r)
                            ),
                        );
                    }
                }
            }
        }
    }
}

fn whisker_laws(s: &mut Scan) {
    let mt = s.mt;
    // Units.
    for c in mt.cells() {
        let src = mt.cell_source(c);
        let l = mt.whisker_left(mt.identity(mt.target(src)), c);
        let r = mt.whisker_right(c, mt.identity(mt.source(src)));
        if l.is_ok_and(|x| x != c) || r.is_ok_and(|x| x != c) {
            s.fail(
                Axiom::WhiskerUnit,
                format!("whiskering `{}` by an identity changes it", s.c(c)),
            );
        }
    }
    for mu in mt.morphisms() {
        for rho in mt.morphisms() {
            let Ok(mr) = mt.compose(mu, rho) else { continue };
            let one = mt.identity_cell(mr);
            let l = mt.whisker_left(mu, mt.identity_cell(rho));
            let r = mt.whisker_right(mt.identity_cell(mu), rho);
            if l.is_ok_and(|x| x != one) || r.is_ok_and(|x| x != one) {
                s.fail(
                    Axiom::WhiskerUnit,
                    format!(
                        "whiskering identity cells of `{}` and `{}` is not the identity of `{}`",
                        s.m(mu),
                        s.m(rho),
                        s.m(mr)
                    ),
                );
            }
        }
    }
    // Functoriality.
    for b in mt.cells() {
        for a in mt.cells() {
            let Ok(ba) = mt.vcompose(b, a) else { continue };
            for m in mt.morphisms() {
                if let (Ok(mb), Ok(ma), Ok(mba)) = (
                    mt.whisker_left(m, b),
                    mt.whisker_left(m, a),
                    mt.whisker_left(m, ba),
                ) {
                    if mt.vcompose(mb, ma).is_ok_and(|x| x != mba) {
                        s.fail(
                            Axiom::WhiskerFunctoriality,
                            format!(
                                "{0} <| ({1} * {2}) differs from ({0} <| {1}) * ({0} <| {2})",
                                s.m(m),
                                s.c(b),
                                s.c(a)
                            ),
                        );
                    }
                }
                if let (Ok(bm), Ok(am), Ok(bam)) = (
                    mt.whisker_right(b, m),
                    mt.whisker_right(a, m),
                    mt.whisker_right(ba, m),
                ) {
                    if mt.vcompose(bm, am).is_ok_and(|x| x != bam) {
                        s.fail(
                            Axiom::WhiskerFunctoriality,
                            format!(
                                "({1} * {2}) |> {0} differs from ({1} |> {0}) * ({2} |> {0})",
                                s.m(m),
                                s.c(b),
                                s.c(a)
                            ),
                        );
                    }
                }
            }
        }
    }
    // Associativity.
    for beta in mt.cells() {
        for mu in mt.morphisms() {
            for sigma in mt.morphisms() {
                let l = mt
                    .whisker_left(mu, beta)
                    .and_then(|x| mt.whisker_right(x, sigma));
                let r = mt
                    .whisker_right(beta, sigma)
                    .and_then(|x| mt.whisker_left(mu, x));
                if let (Ok(l), Ok(r)) = (l, r) {
                    if l != r {
                        s.fail(
                            Axiom::WhiskerAssociativity,
                            format!(
                                "({0} <| {1}) |> {2} differs from {0} <| ({1} |> {2})",
                                s.m(mu),
                                s.c(beta),
                                s.m(sigma)
                            ),
                        );
                    }
                }
                // (mu . sigma) <| beta = mu <| (sigma <| beta)
                if let Ok(ms) = mt.compose(mu, sigma) {
                    let l = mt.whisker_left(ms, beta);
                    let r = mt
                        .whisker_left(sigma, beta)
                        .and_then(|x| mt.whisker_left(mu, x));
                    if let (Ok(l), Ok(r)) = (l, r) {
                        if l != r {
                            s.fail(
                                Axiom::WhiskerAssociativity,
                                format!(
                                    "({0} . {1}) <| {2} differs from {0} <| ({1} <| {2})",
                                    s.m(mu),
                                    s.m(sigma),
                                    s.c(beta)
                                ),
                            );
                        }
                    }
                    // beta |> (mu . sigma) = (beta |> mu) |> sigma
                    let l = mt.whisker_right(beta, ms);
                    let r = mt
                        .whisker_right(beta, mu)
                        .and_then(|x| mt.whisker_right(x, sigma));
                    if let (Ok(l), Ok(r)) = (l, r) {
                        if l != r {
                            s.fail(
                                Axiom::WhiskerAssociativity,
                                format!(
                                    "{2} |> ({0} . {1}) differs from ({2} |> {0}) |> {1}",
                                    s.m(mu),
                                    s.m(sigma),
                                    s.c(beta)
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
}

fn adjoints(s: &mut Scan) {
    let mt = s.mt;
    for mu in mt.morphisms() {
        if !mt.is_sinister(mu) {
            continue;
        }
        let Some(adj) = mt.adjoint(mu) else {
            s.fail(
                Axiom::SinisterAdjoint,
                format!("sinister `{}` has no chosen right adjoint", s.m(mu)),
            );
            continue;
        };
        let (eta, eps, dag) = (adj.unit, adj.counit, adj.dagger);
        // (eps |> mu) * (mu <| eta) = 1_mu
        let first = mt
            .whisker_left(mu, eta)
            .and_then(|a| mt.whisker_right(eps, mu).and_then(|b| mt.vcompose(b, a)));
        match first {
            Ok(c) if c == mt.identity_cell(mu) => {}
            Ok(c) => s.fail(
                Axiom::Triangle,
                format!(
                    "(eps |> {0}) * ({0} <| eta) = `{1}`, not the identity",
                    s.m(mu),
                    s.c(c)
                ),
            ),
            Err(e) => s.fail(Axiom::Triangle, format!("first triangle for `{}`: {e}", s.m(mu))),
        }
        // (dagger <| eps) * (eta |> dagger) = 1_dagger
        let second = mt
            .whisker_right(eta, dag)
            .and_then(|a| mt.whisker_left(dag, eps).and_then(|b| mt.vcompose(b, a)));
        match second {
            Ok(c) if c == mt.identity_cell(dag) => {}
            Ok(c) => s.fail(
                Axiom::Triangle,
                format!(
                    "({0} <| eps) * (eta |> {0}) = `{1}`, not the identity",
                    s.m(dag),
                    s.c(c)
                ),
            ),
            Err(e) => s.fail(
                Axiom::Triangle,
                format!("second triangle for `{}`: {e}", s.m(mu)),
            ),
        }
    }
}
