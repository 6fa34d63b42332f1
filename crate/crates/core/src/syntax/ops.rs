//! Weakening, key transport and substitution.

use crate::mode_theory::{CellId, ModeId, ModeTheory, MorId};

use super::{Entry, Term};

const TOTAL: &str = "tables of a validated mode theory are total on well-typed input";

fn comp(mt: &ModeTheory, outer: MorId, inner: MorId) -> MorId {
    mt.compose(outer, inner).expect(TOTAL)
}

fn dagger(mt: &ModeTheory, mu: MorId) -> MorId {
    mt.adjoint(mu)
        .expect("negative modality over a sinister morphism")
        .dagger
}

/// Composite of the locks in a segment ending at mode `end`, outermost first.
pub fn locks_of(mt: &ModeTheory, segment: &[Entry], end: ModeId) -> MorId {
    let path: Vec<MorId> = segment
        .iter()
        .filter_map(|e| match e {
            Entry::Lock(m) => Some(*m),
            Entry::Var { .. } => None,
        })
        .collect();
    mt.compose_all(end, &path).expect(TOTAL)
}

/// For each variable of the segment, the composite of the locks after it.
pub fn lock_suffixes(mt: &ModeTheory, segment: &[Entry], end: ModeId) -> Vec<MorId> {
    let mut acc = mt.identity(end);
    let mut out = Vec::new();
    for e in segment.iter().rev() {
        match e {
            Entry::Lock(m) => acc = comp(mt, *m, acc),
            Entry::Var { .. } => out.push(acc),
        }
    }
    out.reverse();
    out
}

/// Rebuild `t`, replacing every variable occurrence by `f(level, key, depth,
/// locks)`, where `depth` counts binders crossed and `locks` is the composite
/// of the locks crossed from the root (starting at `start`, the identity of
/// the root's mode).
fn map_vars<F>(mt: &ModeTheory, t: &Term, depth: usize, locks: MorId, f: &mut F) -> Term
where
    F: FnMut(usize, CellId, usize, MorId) -> Term,
{
    let under = |mu: MorId| comp(mt, locks, mu);
    let go = |t: &Term, d: usize, l: MorId, f: &mut F| Box::new(map_vars(mt, t, d, l, f));
    match t {
        Term::Var { level, key } => f(*level, *key, depth, locks),
        Term::Const(n) => Term::Const(n.clone()),
        Term::Lam { name, body } => Term::Lam {
            name: name.clone(),
            body: go(body, depth + 1, locks, f),
        },
        Term::App { fun, lock, arg } => Term::App {
            fun: go(fun, depth, locks, f),
            lock: *lock,
            arg: go(arg, depth, under(*lock), f),
        },
        Term::ModIntro { mu, body } => Term::ModIntro {
            mu: *mu,
            body: go(body, depth, under(*mu), f),
        },
        Term::LetMod {
            frame,
            mu,
            x,
            scrutinee,
            body,
            y,
            motive,
        } => Term::LetMod {
            frame: *frame,
            mu: *mu,
            x: x.clone(),
            scrutinee: go(scrutinee, depth, under(*frame), f),
            body: go(body, depth + 1, locks, f),
            y: y.clone(),
            motive: go(motive, depth + 1, locks, f),
        },
        Term::Shut { mu, body } => Term::Shut {
            mu: *mu,
            body: go(body, depth, under(dagger(mt, *mu)), f),
        },
        Term::Open { mu, body } => Term::Open {
            mu: *mu,
            body: go(body, depth, under(*mu), f),
        },
        Term::Pi { name, mu, dom, cod } => Term::Pi {
            name: name.clone(),
            mu: *mu,
            dom: go(dom, depth, under(*mu), f),
            cod: go(cod, depth + 1, locks, f),
        },
        Term::FMod { mu, ty } => Term::FMod {
            mu: *mu,
            ty: go(ty, depth, under(*mu), f),
        },
        Term::UMod { mu, ty } => Term::UMod {
            mu: *mu,
            ty: go(ty, depth, under(dagger(mt, *mu)), f),
        },
        Term::TConst { name, args } => Term::TConst {
            name: name.clone(),
            args: args
                .iter()
                .map(|(m, a)| (*m, map_vars(mt, a, depth, under(*m), f)))
                .collect(),
        },
    }
}

/// Weakening: raise every level `>= from` by `by`. `mode` is the mode of `t`.
pub fn shift(mt: &ModeTheory, t: &Term, mode: ModeId, from: usize, by: usize) -> Term {
    if by == 0 {
        return t.clone();
    }
    map_vars(mt, t, 0, mt.identity(mode), &mut |level, key, _, _| Term::Var {
        level: if level >= from { level + by } else { level },
        key,
    })
}

fn rekey(
    mt: &ModeTheory,
    t: &Term,
    suffixes: &[MorId],
    beta: CellId,
    shift: usize,
) -> Term {
    let n = suffixes.len();
    let kappa = mt.cell_source(beta);
    if mt.identity_cell(kappa) == beta && shift == 0 {
        return t.clone();
    }
    let start = mt.identity(mt.source(kappa));
    map_vars(mt, t, 0, start, &mut |level, key, _, locks| {
        if level < n {
            let inner = mt.whisker_right(beta, locks).expect(TOTAL);
            let moved = mt.whisker_left(suffixes[level], inner).expect(TOTAL);
            Term::Var {
                level,
                key: mt.vcompose(moved, key).expect(TOTAL),
            }
        } else {
            Term::Var {
                level: level + shift,
                key,
            }
        }
    })
}

/// Transport `t`, living in `prefix` locked by `kappa`, along the key
/// `beta : kappa => kappa'` into `prefix` locked by `kappa'` and extended by
/// `shift` further variables. An outer variable with key `g` whose trailing
/// locks in `prefix` compose to `d` gets the key `(d <| (beta |> f)) * g`,
/// where `f` is the composite of locks crossed inside `t`.
pub fn apply_key(
    mt: &ModeTheory,
    t: &Term,
    prefix: &[Entry],
    prefix_mode: ModeId,
    beta: CellId,
    shift: usize,
) -> Term {
    let suffixes = lock_suffixes(mt, prefix, prefix_mode);
    rekey(mt, t, &suffixes, beta, shift)
}

/// Substitute the trailing variables of `prefix, x_0 .. x_k-1` in `t`, which
/// lives in that context further locked by `top`. `values[i] = (v, mu)`
/// where `v` lives in `prefix` locked by `mu`, the annotation of `x_i`.
pub fn instantiate(
    mt: &ModeTheory,
    t: &Term,
    prefix: &[Entry],
    prefix_mode: ModeId,
    values: &[(Term, MorId)],
    top: MorId,
) -> Term {
    let suffixes = lock_suffixes(mt, prefix, prefix_mode);
    let n = suffixes.len();
    let k = values.len();
    let start = mt.identity(mt.source(top));
    map_vars(mt, t, 0, start, &mut |level, key, depth, _| {
        if level < n {
            Term::Var { level, key }
        } else if level < n + k {
            let (v, _) = &values[level - n];
            rekey(mt, v, &suffixes, key, depth)
        } else {
            Term::Var {
                level: level - k,
                key,
            }
        }
    })
}
