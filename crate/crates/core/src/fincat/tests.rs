use proptest::prelude::*;

use super::*;
use crate::bundled;

fn chain(n: usize) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let order: Vec<(String, String)> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    FinCat::poset(&names, &order).unwrap()
}

fn obj(c: &FinCat, name: &str) -> ObjId {
    c.object_by_name(name).unwrap()
}

/// Two parallel arrows `f, g : a -> b`, and nothing else.
fn parallel_pair() -> FinCat {
    let mut b = FinCat::builder();
    let a = b.object("a").unwrap();
    let t = b.object("b").unwrap();
    b.arrow("f", a, t).unwrap();
    b.arrow("g", a, t).unwrap();
    b.build().unwrap()
}

#[test]
fn posets_are_thin_and_closed() {
    let c = chain(3);
    assert!(c.is_thin());
    assert_eq!(c.arrow_count(), 6);
    assert_eq!(c.hom(obj(&c, "0"), obj(&c, "2")).len(), 1);
    assert!(c.hom(obj(&c, "2"), obj(&c, "0")).is_empty());
    assert!(FinCat::poset(&["x", "y"], &[("x", "y"), ("y", "x")]).is_err());
}

#[test]
fn builder_rejects_bad_tables() {
    let mut b = FinCat::builder();
    let x = b.object("x").unwrap();
    let e = b.arrow("e", x, x).unwrap();
    assert!(matches!(b.build(), Err(FinCatError::MissingComposite { .. })));

    let mut b = FinCat::builder();
    let x = b.object("x").unwrap();
    let e2 = b.arrow("e", x, x).unwrap();
    assert_eq!(e, e2);
    b.set_compose(e2, e2, e2).unwrap();
    let idem = b.build().unwrap();
    assert!(!idem.is_thin());
    assert!(!idem.is_iso(e2));
}

#[test]
fn empty_limit_is_the_top() {
    let c = chain(3);
    let top = limit(&c, &LimitDiagram::new(), &Search::default()).unwrap().unwrap();
    assert_eq!(top.apex, obj(&c, "2"));
}

#[test]
fn binary_product_in_a_chain_is_the_meet() {
    let c = chain(2);
    let d = LimitDiagram::discrete(vec![obj(&c, "0"), obj(&c, "1")]);
    let p = limit(&c, &d, &Search::default()).unwrap().unwrap();
    assert_eq!(p.apex, obj(&c, "0"));
}

#[test]
fn cospan_without_lower_bounds_has_no_pullback() {
    let c = FinCat::poset(&["x", "y", "z", "t"], &[("x", "z"), ("y", "z"), ("t", "z")]).unwrap();
    let mut d = LimitDiagram::new();
    let (x, y, z) = (d.node(obj(&c, "x")), d.node(obj(&c, "y")), d.node(obj(&c, "z")));
    d.edge(x, z, c.hom(obj(&c, "x"), obj(&c, "z"))[0]);
    d.edge(y, z, c.hom(obj(&c, "y"), obj(&c, "z"))[0]);
    assert_eq!(limit(&c, &d, &Search::default()).unwrap(), None);
}

#[test]
fn parallel_pair_has_no_equalizer() {
    let c = parallel_pair();
    let (a, t) = (obj(&c, "a"), obj(&c, "b"));
    let mut d = LimitDiagram::new();
    let (i, j) = (d.node(a), d.node(t));
    d.edge(i, j, c.arrow_by_name("f").unwrap());
    d.edge(i, j, c.arrow_by_name("g").unwrap());
    assert_eq!(limit(&c, &d, &Search::default()).unwrap(), None);
    // The equalizer of f with itself is the identity on `a`.
    let mut d = LimitDiagram::new();
    let (i, j) = (d.node(a), d.node(t));
    d.edge(i, j, c.arrow_by_name("f").unwrap());
    let e = limit(&c, &d, &Search::default()).unwrap().unwrap();
    assert_eq!(e.apex, a);
}

#[test]
fn colimits_are_dual() {
    let c = chain(3);
    let d = LimitDiagram::discrete(vec![obj(&c, "0"), obj(&c, "1")]);
    let join = colimit(&c, &d, &Search::default()).unwrap().unwrap();
    assert_eq!(join.apex, obj(&c, "1"));
    let bottom = colimit(&c, &LimitDiagram::new(), &Search::default()).unwrap().unwrap();
    assert_eq!(bottom.apex, obj(&c, "0"));
}

#[test]
fn cap_is_enforced() {
    let c = chain(4);
    let d = LimitDiagram::discrete(vec![obj(&c, "3"); 3]);
    assert!(limit(&c, &d, &Search::with_cap(4)).unwrap().is_some());
    assert!(matches!(
        limit(&c, &d, &Search::with_cap(2)),
        Err(FinCatError::CapExceeded { .. })
    ));
}

fn vee() -> FinCat {
    FinCat::poset(&["0", "l", "r"], &[("0", "l"), ("0", "r")]).unwrap()
}

#[test]
fn limit_preservation() {
    let src = vee();
    let d = LimitDiagram::discrete(vec![obj(&src, "l"), obj(&src, "r")]);
    let cone = limit(&src, &d, &Search::default()).unwrap().unwrap();
    assert_eq!(cone.apex, obj(&src, "0"));

    let id = FinFunctor::identity(&src);
    assert!(preserves_limit(&id, &src, &d, &cone, &Search::default()).unwrap());

    let three = chain(3);
    let meets = FinFunctor::into_thin(&src, &three, vec![obj(&three, "0"), obj(&three, "1"), obj(&three, "0")]).unwrap();
    meets.verify(&src, &three).unwrap();
    assert!(preserves_limit(&meets, &three, &d, &cone, &Search::default()).unwrap());

    let squash = FinFunctor::into_thin(&src, &three, vec![obj(&three, "0"), obj(&three, "1"), obj(&three, "1")]).unwrap();
    squash.verify(&src, &three).unwrap();
    assert!(!preserves_limit(&squash, &three, &d, &cone, &Search::default()).unwrap());
}

#[test]
fn functors_and_transformations_are_checked() {
    let two = chain(2);
    let bad = FinFunctor {
        obj: vec![obj(&two, "1"), obj(&two, "0")],
        arr: two.arrows().collect(),
    };
    assert!(bad.verify(&two, &two).is_err());
    let id = FinFunctor::identity(&two);
    let top = FinFunctor::constant(&two, &two, obj(&two, "1"));
    let to_top = FinNat {
        comp: two
            .objects()
            .map(|x| two.hom(x, obj(&two, "1"))[0])
            .collect(),
    };
    to_top.verify(&two, &two, &id, &top).unwrap();
    assert!(to_top.verify(&two, &two, &top, &id).is_err());
}

#[test]
fn comma_examples_in_the_single_arrow_theory() {
    let mt = bundled::theory("single_arrow");
    let mu = mt.mor("mu").unwrap();
    let id_q = mt.identity(mt.mode("q").unwrap());
    let id_p = mt.identity(mt.mode("p").unwrap());

    assert_eq!(comma(&mt, id_q, mu).unwrap().objects.len(), 0);
    let c = comma(&mt, mu, id_q).unwrap();
    assert_eq!(c.objects, vec![(mu, mt.identity_cell(mu))]);
    let c = comma(&mt, id_q, id_q).unwrap();
    assert_eq!(c.objects, vec![(id_q, mt.identity_cell(id_q))]);
    let c = comma(&mt, mu, mu).unwrap();
    assert_eq!(c.objects, vec![(id_p, mt.identity_cell(mu))]);
    assert!(matches!(comma(&mt, id_p, id_q), Err(FinCatError::ModeMismatch(..))));
}

#[test]
fn comma_over_an_identity_has_an_initial_object() {
    for name in bundled::THEORY_NAMES {
        let mt = bundled::theory(name);
        for w in mt.morphisms() {
            let c = comma(&mt, w, w).unwrap();
            let unit = c.find(mt.identity(mt.source(w)), mt.identity_cell(w));
            let unit = unit.unwrap_or_else(|| panic!("{name}: missing unit in comma of {}", mt.mor_name(w)));
            if mt.is_identity(w) {
                assert!(c.is_initial(unit), "{name}: {}", mt.mor_name(w));
            }
        }
    }
}

/// Independent count of comma objects: pairs of a morphism and a cell,
/// read straight off the composition table.
#[test]
fn comma_sizes_match_direct_count() {
    for name in bundled::THEORY_NAMES {
        let mt = bundled::theory(name);
        for w in mt.morphisms() {
            for v in mt.morphisms() {
                let Ok(c) = comma(&mt, w, v) else {
                    assert_ne!(mt.target(w), mt.target(v));
                    continue;
                };
                let mut count = 0;
                for s in mt.morphisms() {
                    for beta in mt.cells() {
                        if mt.source(s) == mt.source(w)
                            && mt.target(s) == mt.source(v)
                            && mt.cell_source(beta) == w
                            && Some(mt.cell_target(beta)) == mt.compose(v, s).ok()
                        {
                            count += 1;
                        }
                    }
                }
                assert_eq!(c.objects.len(), count);
            }
        }
    }
}

#[test]
fn bundled_diagrams_are_strict() {
    for name in bundled::DIAGRAM_NAMES.iter().chain(&["non_lex"]) {
        let d = bundled::diagram(name);
        d.validate().unwrap();
        for p in d.mt.modes() {
            assert!(d.cat(p).object_count() <= 6);
        }
    }
}

#[test]
fn strictness_violations_are_reported() {
    let mut file = DiagramFile::from_json(bundled::diagram_source("reflective").unwrap()).unwrap();
    let mut numu = file.functors["nu"].clone();
    for v in numu.objects.values_mut() {
        *v = "1".into();
    }
    numu.objects.insert("0".into(), "1".into());
    numu.objects.insert("a".into(), "1".into());
    file.functors.insert("numu".into(), numu);
    let err = Diagram::from_file(&file, bundled::theory("reflective")).unwrap_err();
    assert!(matches!(err, FinCatError::NotStrict(_) | FinCatError::NotNatural(_)), "{err}");
}

/// Meets in a poset, straight from the order relation.
fn meet_oracle(c: &FinCat, xs: &[ObjId]) -> Option<ObjId> {
    let le = |a: ObjId, b: ObjId| !c.hom(a, b).is_empty();
    let lower: Vec<ObjId> = c.objects().filter(|&z| xs.iter().all(|&x| le(z, x))).collect();
    lower.iter().copied().find(|&m| lower.iter().all(|&z| le(z, m)))
}

fn arb_poset() -> impl Strategy<Value = FinCat> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..8).prop_map(move |pairs| {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            // Only pairs going up in index keep the relation acyclic.
            let order: Vec<(String, String)> = pairs
                .into_iter()
                .filter(|(a, b)| a < b)
                .map(|(a, b)| (names[a].clone(), names[b].clone()))
                .collect();
            FinCat::poset(&names, &order).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn discrete_limits_in_posets_are_meets(c in arb_poset(), picks in proptest::collection::vec(0usize..6, 0..3)) {
        let xs: Vec<ObjId> = picks.iter().map(|&i| ObjId((i % c.object_count()) as u32)).collect();
        let got = limit(&c, &LimitDiagram::discrete(xs.clone()), &Search::default()).unwrap();
        prop_assert_eq!(got.map(|k| k.apex), meet_oracle(&c, &xs));
    }

    #[test]
    fn limits_do_not_depend_on_search_order(
        c in arb_poset(),
        picks in proptest::collection::vec(0usize..6, 0..3),
        perm in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let xs: Vec<ObjId> = picks.iter().map(|&i| ObjId((i % c.object_count()) as u32)).collect();
        let d = LimitDiagram::discrete(xs);
        let plain = limit(&c, &d, &Search::default()).unwrap();
        let search = Search::default().permuted(perm.into_iter().map(ObjId).collect());
        let shuffled = limit(&c, &d, &search).unwrap();
        prop_assert_eq!(plain.is_some(), shuffled.is_some());
        if let (Some(a), Some(b)) = (plain, shuffled) {
            prop_assert!(c.isomorphic(a.apex, b.apex));
            prop_assert_eq!(factorizations(&c, &a, &b).len(), 1);
        }
    }

    #[test]
    fn opposite_is_an_involution(c in arb_poset()) {
        prop_assert_eq!(c.opposite().opposite(), c);
    }
}
