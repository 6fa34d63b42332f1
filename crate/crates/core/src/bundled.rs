//! Example mode theories and diagrams shipped with the crate.

use crate::fincat::Diagram;
use crate::mode_theory::ModeTheory;

pub const THEORY_NAMES: [&str; 6] = [
    "trivial",
    "single_arrow",
    "2ltt",
    "reflective",
    "idempotent_comonad",
    "meet_semilattice",
];

/// Diagrams satisfying the standing assumptions; `non_lex` is kept apart.
pub const DIAGRAM_NAMES: [&str; 6] = THEORY_NAMES;

pub fn theory_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "trivial" => include_str!("../fixtures/theories/trivial.mt"),
        "single_arrow" => include_str!("../fixtures/theories/single_arrow.mt"),
        "2ltt" => include_str!("../fixtures/theories/2ltt.mt"),
        "reflective" => include_str!("../fixtures/theories/reflective.mt"),
        "idempotent_comonad" => include_str!("../fixtures/theories/idempotent_comonad.mt"),
        "meet_semilattice" => include_str!("../fixtures/theories/meet_semilattice.mt"),
        _ => return None,
    })
}

pub fn diagram_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "trivial" => include_str!("../fixtures/diagrams/trivial.json"),
        "single_arrow" => include_str!("../fixtures/diagrams/single_arrow.json"),
        "2ltt" => include_str!("../fixtures/diagrams/2ltt.json"),
        "reflective" => include_str!("../fixtures/diagrams/reflective.json"),
        "idempotent_comonad" => include_str!("../fixtures/diagrams/idempotent_comonad.json"),
        "meet_semilattice" => include_str!("../fixtures/diagrams/meet_semilattice.json"),
        "non_lex" => include_str!("../fixtures/diagrams/non_lex.json"),
        _ => return None,
    })
}

/// Load a bundled theory by name. Panics on unknown names or a corrupt
/// fixture, both of which are programming errors.
pub fn theory(name: &str) -> ModeTheory {
    let src = theory_source(name).unwrap_or_else(|| panic!("no bundled theory `{name}`"));
    ModeTheory::from_json(src).unwrap_or_else(|e| panic!("bundled theory `{name}`: {e}"))
}

pub fn diagram(name: &str) -> Diagram {
    let src = diagram_source(name).unwrap_or_else(|| panic!("no bundled diagram `{name}`"));
    Diagram::load(src, None).unwrap_or_else(|e| panic!("bundled diagram `{name}`: {e}"))
}
