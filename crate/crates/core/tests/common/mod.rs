//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use matt::bundled;
use matt::mode_theory::{Axiom, ModeTheory};
use serde_json::{json, Value};

fn edit(name: &str, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(&bundled::theory(name).to_json()).unwrap();
    f(&mut v);
    v.to_string()
}

fn classes(extra: Value) -> Value {
    let mut c = json!({ "tangible": ["id:p"], "sharp": ["id:p"], "transparent": ["id:p"] });
    if let (Some(o), Some(e)) = (c.as_object_mut(), extra.as_object()) {
        for (k, v) in e {
            o.insert(k.clone(), v.clone());
        }
    }
    c
}

/// One mode with two endo-cells `t, s` on the identity.
fn two_cells(vcompose: Value, whisker_left: Value) -> String {
    json!({
        "modes": ["p"],
        "cells": [
            { "name": "t", "src": "id:p", "dst": "id:p" },
            { "name": "s", "src": "id:p", "dst": "id:p" }
        ],
        "vcompose": vcompose,
        "whisker_left": whisker_left,
        "classes": classes(json!({}))
    })
    .to_string()
}

/// One mode, an idempotent `a`, an idempotent cell `t` on the identity
/// and a cell `u` on `a`, with `a <| t = u` and `t |> a = u`.
fn whiskered(u_squared: &str, a_on_u: &str) -> String {
    json!({
        "modes": ["p"],
        "morphisms": [{ "name": "a", "src": "p", "dst": "p" }],
        "compose": [["a", "a", "a"]],
        "cells": [
            { "name": "t", "src": "id:p", "dst": "id:p" },
            { "name": "u", "src": "a", "dst": "a" }
        ],
        "vcompose": [["t", "t", "t"], ["u", "u", u_squared]],
        "whisker_left": [["a", "t", "u"], ["a", "u", a_on_u]],
        "whisker_right": [["t", "a", "u"], ["u", "a", "u"]],
        "classes": classes(json!({ "tangible": ["id:p", "a"], "sharp": ["id:p", "a"] }))
    })
    .to_string()
}

/// Mutated mode theories, one per axiom class, with the axiom each breaks.
pub fn mutations() -> Vec<(&'static str, Axiom, String)> {
    vec![
        (
            "identity not sharp",
            Axiom::IdentityClasses,
            edit("trivial", |v| v["classes"]["sharp"] = json!([])),
        ),
        (
            "sharp iota not tangible",
            Axiom::SharpTransparentTangible,
            edit("2ltt", |v| {
                v["classes"]["sharp"].as_array_mut().unwrap().push(json!("iota"));
                v["classes"]["tangible"] = json!(["id:e", "id:f", "iota_inv"]);
            }),
        ),
        (
            "sinister nu without adjoint",
            Axiom::SinisterAdjoint,
            edit("reflective", |v| {
                v["classes"]["sinister"].as_array_mut().unwrap().push(json!("nu"))
            }),
        ),
        (
            "idempotent unit for the identity",
            Axiom::Triangle,
            json!({
                "modes": ["p"],
                "cells": [{ "name": "t", "src": "id:p", "dst": "id:p" }],
                "vcompose": [["t", "t", "t"]],
                "classes": classes(json!({ "sinister": ["id:p"] })),
                "adjoints": [{ "mor": "id:p", "dagger": "id:p", "unit": "t", "counit": "id:id:p" }]
            })
            .to_string(),
        ),
        (
            "missing composite",
            Axiom::TableTotality,
            json!({
                "modes": ["p"],
                "morphisms": [{ "name": "a", "src": "p", "dst": "p" }],
                "classes": classes(json!({}))
            })
            .to_string(),
        ),
        (
            "non-associative composition",
            Axiom::ComposeAssociativity,
            json!({
                "modes": ["p"],
                "morphisms": [
                    { "name": "a", "src": "p", "dst": "p" },
                    { "name": "b", "src": "p", "dst": "p" }
                ],
                "compose": [["a", "a", "a"], ["a", "b", "b"], ["b", "a", "a"], ["b", "b", "a"]],
                "classes": classes(json!({}))
            })
            .to_string(),
        ),
        (
            "non-associative vertical composition",
            Axiom::VcomposeAssociativity,
            two_cells(json!([["t", "t", "t"], ["t", "s", "s"], ["s", "t", "t"], ["s", "s", "t"]]), json!([])),
        ),
        (
            "identity cell moves t",
            Axiom::VcomposeUnit,
            two_cells(
                json!([["t", "t", "s"], ["t", "s", "s"], ["s", "t", "s"], ["s", "s", "s"], ["id:id:p", "t", "s"]]),
                json!([]),
            ),
        ),
        (
            "whiskering u by a is not functorial",
            Axiom::WhiskerFunctoriality,
            whiskered("id:a", "u"),
        ),
        (
            "whiskering t twice differs from whiskering by the composite",
            Axiom::WhiskerAssociativity,
            whiskered("u", "id:a"),
        ),
    ]
}

pub fn load(src: &str) -> ModeTheory {
    ModeTheory::from_json(src).unwrap()
}
