use super::*;
use crate::bundled;

#[test]
fn bundled_theories_validate() {
    for name in bundled::THEORY_NAMES {
        let mt = bundled::theory(name);
        let report = mt.validate();
        assert!(report.is_valid(), "{name}: {report}");
    }
}

#[test]
fn identity_is_a_unit() {
    let mt = bundled::theory("single_arrow");
    let mu = mt.mor("mu").unwrap();
    let q = mt.mode("q").unwrap();
    assert_eq!(mt.compose(mt.identity(q), mu).unwrap(), mu);
}

#[test]
fn reflective_composites() {
    let mt = bundled::theory("reflective");
    let mu = mt.mor("mu").unwrap();
    let nu = mt.mor("nu").unwrap();
    let q = mt.mode("q").unwrap();
    assert_eq!(mt.compose(mu, nu).unwrap(), mt.identity(q));
    let numu = mt.compose(nu, mu).unwrap();
    assert_eq!(mt.mor_name(numu), "numu");
    assert!(!mt.is_identity(numu));
}

#[test]
fn not_composable_is_reported() {
    let mt = bundled::theory("single_arrow");
    let mu = mt.mor("mu").unwrap();
    assert!(matches!(
        mt.compose(mu, mu),
        Err(ModeError::NotComposable { .. })
    ));
}

#[test]
fn whiskering_the_unit() {
    let mt = bundled::theory("reflective");
    let e = CellExpr::parse("mu <| eta").unwrap();
    assert_eq!(mt.eval(&e).unwrap(), mt.identity_cell(mt.mor("mu").unwrap()));
    let e = CellExpr::parse("eta |> nu").unwrap();
    assert_eq!(mt.eval(&e).unwrap(), mt.identity_cell(mt.mor("nu").unwrap()));
}

#[test]
fn identity_cell_composes_with_itself() {
    let mt = bundled::theory("single_arrow");
    let e = CellExpr::parse("id:mu * id:mu").unwrap();
    assert_eq!(mt.eval(&e).unwrap(), mt.cell("id:mu").unwrap());
}

#[test]
fn both_bracketings_agree() {
    let mt = bundled::theory("reflective");
    let a = CellExpr::parse("(mu <| eta) |> nu").unwrap();
    let b = CellExpr::parse("mu <| (eta |> nu)").unwrap();
    assert_eq!(mt.eval(&a).unwrap(), mt.eval(&b).unwrap());
    let c = CellExpr::parse("(numu <| eta) * eta").unwrap();
    let d = CellExpr::parse("(eta |> numu) * eta").unwrap();
    assert_eq!(mt.eval(&c).unwrap(), mt.eval(&d).unwrap());
}

#[test]
fn ill_typed_expressions() {
    let mt = bundled::theory("reflective");
    let e = CellExpr::parse("eta * id:mu").unwrap();
    assert!(matches!(mt.eval(&e), Err(ModeError::IllTypedCellExpression(_))));
    let e = CellExpr::parse("nu <| eta").unwrap();
    assert!(matches!(mt.eval(&e), Err(ModeError::IllTypedCellExpression(_))));
}

#[test]
fn cell_expression_syntax() {
    let e = CellExpr::parse("a <| b |> c * (d)").unwrap();
    assert_eq!(e.to_string(), "((a <| (b |> c)) * d)");
    assert!(CellExpr::parse("a *").is_err());
    assert!(CellExpr::parse("(a").is_err());
    assert!(CellExpr::parse("a b").is_err());
}

#[test]
fn json_round_trip() {
    for name in bundled::THEORY_NAMES {
        let mt = bundled::theory(name);
        let again = ModeTheory::from_json(&mt.to_json()).unwrap();
        assert_eq!(mt.to_file(), again.to_file(), "{name}");
    }
}

#[test]
fn mismatched_entry_is_malformed() {
    let src = r#"{
        "modes": ["p", "q"],
        "morphisms": [{ "name": "mu", "src": "p", "dst": "q" }],
        "compose": [["mu", "id:p", "id:q"]]
    }"#;
    assert!(matches!(
        ModeTheory::from_json(src),
        Err(ModeError::MalformedTable(_))
    ));
}

#[test]
fn sharp_iota_breaks_tangibility() {
    let mut file = bundled::theory("2ltt").to_file();
    file.classes.sharp.push("iota".into());
    file.classes.tangible.retain(|m| m != "iota");
    let report = ModeTheory::from_file(&file).unwrap().validate();
    assert!(report.axioms().contains(&Axiom::SharpTransparentTangible), "{report}");
}

#[test]
fn validation_is_idempotent() {
    let mt = bundled::theory("reflective");
    assert_eq!(mt.validate(), mt.validate());
}
